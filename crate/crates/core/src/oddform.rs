//! Odd form rings (R, Δ): the quadratic companion group Δ with its maps
//! φ, π, ρ and the right R-action, together with unitary groups, hyperbolic
//! families and Peirce-style carriers.
//!
//! Two concrete Δ representations cover every construction in this crate:
//!
//! * [`SlottedDelta`] — Δ given by an ordered direct-sum normal form whose
//!   coordinates are cyclic groups. All commutators land in the central
//!   φ-part, so the group law is coordinate addition plus a bilinear central
//!   correction. This is the shape of the symplectic-type constructions.
//! * [`SpecialDelta`] — Δ is a subgroup of the Heisenberg group Heis(R),
//!   stored as pivot elements (a Howell basis of π(Δ) with chosen lifts)
//!   plus the kernel subgroup {y : (0, y) ∈ Δ}. Elements are (π, ρ) pairs;
//!   this is the shape of the orthogonal-type constructions.

use std::collections::HashMap;

use crate::ring::{RElt, Ring};
use crate::zmod::{gcd, Coord, Subgroup, ZModule};

/// A Δ element: coordinate vector for slotted representations, concatenated
/// (π, ρ) coordinates for special ones.
pub type DElt = Vec<Coord>;

#[derive(Clone, Debug)]
pub struct SlotCoord {
    pub modulus: Coord,
    pub central: bool,
    /// π of the coordinate generator.
    pub pi: RElt,
    /// ρ of the coordinate generator.
    pub rho: RElt,
}

#[derive(Clone, Debug)]
pub struct SlottedDelta {
    module: ZModule,
    coords: Vec<SlotCoord>,
    /// φ on ring basis elements, expressed in Δ coordinates (central only).
    phi: Vec<DElt>,
    /// Action of each coordinate generator on each ring basis element.
    act: Vec<Vec<DElt>>,
    /// Sparse commutator corrections: (t, s, φ(−π(g_t)̄ π(g_s))) for t > s.
    comm: Vec<(usize, usize, DElt)>,
    /// comm index by t for the sparse group law.
    comm_by_t: Vec<Vec<usize>>,
    /// Cached action of every coordinate value on every pure ring element.
    act_table: Vec<Vec<DElt>>,
    /// (coord, value) per act_table row.
    span_info: Vec<(usize, Coord)>,
    /// (ring slot, value) per act_table column, with index lookup.
    pure_info: Vec<(usize, Coord)>,
    pure_index: HashMap<(usize, Coord), usize>,
}

impl SlottedDelta {
    pub fn new(ring: &Ring, coords: Vec<SlotCoord>, phi: Vec<DElt>, act: Vec<Vec<DElt>>) -> Self {
        let module = ZModule::new(coords.iter().map(|c| c.modulus).collect());
        assert_eq!(phi.len(), ring.rank());
        assert_eq!(act.len(), coords.len());
        // φ must land in the central part
        for img in &phi {
            for (i, c) in coords.iter().enumerate() {
                assert!(c.central || img[i] == 0, "phi image not central");
            }
        }
        let n = coords.len();
        let mut comm = Vec::new();
        let mut comm_by_t = vec![Vec::new(); n];
        for t in 0..n {
            if coords[t].central {
                continue;
            }
            for s in 0..t {
                if coords[s].central {
                    continue;
                }
                let prod = ring.mul(&ring.involution(&coords[t].pi), &coords[s].pi);
                if !ring.is_zero(&prod) {
                    let img = Self::phi_of(&module, &phi, ring, &ring.neg(&prod));
                    comm_by_t[t].push(comm.len());
                    comm.push((t, s, img));
                }
            }
        }
        let span_info: Vec<(usize, Coord)> = coords
            .iter()
            .enumerate()
            .flat_map(|(i, c)| (1..c.modulus).map(move |v| (i, v)))
            .collect();
        let mut pure_info = Vec::new();
        let mut pure_index = HashMap::new();
        for (s, &m) in ring.module().moduli().iter().enumerate() {
            for v in 1..m {
                pure_index.insert((s, v), pure_info.len());
                pure_info.push((s, v));
            }
        }
        let mut sd = SlottedDelta {
            module,
            coords,
            phi,
            act,
            comm,
            comm_by_t,
            act_table: Vec::new(),
            span_info,
            pure_info,
            pure_index,
        };
        let mut table = Vec::with_capacity(sd.span_info.len());
        for &(i, c) in &sd.span_info.clone() {
            let mut row = Vec::with_capacity(sd.pure_info.len());
            for &(slot, val) in &sd.pure_info.clone() {
                row.push(sd.act_gen_pure(ring, i, c, slot, val));
            }
            table.push(row);
        }
        sd.act_table = table;
        sd
    }

    fn span_row(&self, coord: usize, val: Coord) -> usize {
        // rows are grouped by coordinate in order
        let mut idx = 0;
        for (i, c) in self.coords.iter().enumerate() {
            if i == coord {
                return idx + (val as usize - 1);
            }
            idx += c.modulus as usize - 1;
        }
        unreachable!()
    }

    fn phi_of(module: &ZModule, phi: &[DElt], ring: &Ring, a: &[Coord]) -> DElt {
        let mut out = module.zero();
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                let term = module.smul(x as i64, &phi[i]);
                module.add_assign(&mut out, &term);
            }
        }
        let _ = ring;
        out
    }

    pub fn module(&self) -> &ZModule {
        &self.module
    }

    pub fn coords(&self) -> &[SlotCoord] {
        &self.coords
    }

    fn add(&self, a: &[Coord], b: &[Coord]) -> DElt {
        let mut out = self.module.add(a, b);
        // central correction Σ_{t>s} comm(t,s) · a_t · b_s
        for (t, &at) in a.iter().enumerate() {
            if at == 0 {
                continue;
            }
            for &ci in &self.comm_by_t[t] {
                let (_, s, ref c) = self.comm[ci];
                if b[s] != 0 {
                    let k = at as i64 * b[s] as i64;
                    let term = self.module.smul(k, c);
                    self.module.add_assign(&mut out, &term);
                }
            }
        }
        out
    }

    fn neg(&self, a: &[Coord]) -> DElt {
        // solve a ∔ x = 0: coords negate, central part corrected
        let mut x = self.module.neg(a);
        for (t, &at) in a.iter().enumerate() {
            if at == 0 {
                continue;
            }
            for &ci in &self.comm_by_t[t] {
                let (_, s, ref c) = self.comm[ci];
                if x[s] != 0 {
                    let k = at as i64 * x[s] as i64;
                    let term = self.module.smul(-k, c);
                    self.module.add_assign(&mut x, &term);
                }
            }
        }
        x
    }

    fn pi(&self, ring: &Ring, a: &[Coord]) -> RElt {
        let mut out = ring.zero();
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                let term = ring.smul(x as i64, &self.coords[i].pi);
                out = ring.add(&out, &term);
            }
        }
        out
    }

    fn rho(&self, ring: &Ring, a: &[Coord]) -> RElt {
        // ρ(Π gᵢ^{cᵢ}) = Σ ρ(gᵢ^{cᵢ}) − Σ_{s<t} π(g_s^{c_s})̄ π(g_t^{c_t}),
        // with ρ(g^c) = c·ρ(g) − C(c,2)·π(g)̄π(g).
        let mut out = ring.zero();
        let mut seen: Vec<(usize, i64)> = Vec::new();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let c = x as i64;
            let g = &self.coords[i];
            out = ring.add(&out, &ring.smul(c, &g.rho));
            let pp = ring.mul(&ring.involution(&g.pi), &g.pi);
            out = ring.sub(&out, &ring.smul(c * (c - 1) / 2, &pp));
            for &(j, cj) in &seen {
                let cross = ring.mul(&ring.involution(&self.coords[j].pi), &g.pi);
                out = ring.sub(&out, &ring.smul(cj * c, &cross));
            }
            seen.push((i, c));
        }
        out
    }

    fn phi_map(&self, ring: &Ring, a: &[Coord]) -> DElt {
        Self::phi_of(&self.module, &self.phi, ring, a)
    }

    /// Action of the coordinate generator power g_i^c on a pure ring element
    /// (single nonzero coordinate).
    fn act_gen_pure(&self, ring: &Ring, i: usize, c: Coord, slot: usize, val: Coord) -> DElt {
        // u·(k·b) = u·((k−1)·b) ∔ φ(b̄ ρ(u) (k−1)b) ∔ u·b, u = g_i^c.
        // First the generator acting on val·basis, then powers of that.
        let g_rho = {
            // ρ(g_i^c) = c ρ − C(c,2) π̄π
            let g = &self.coords[i];
            let mut r = ring.smul(c as i64, &g.rho);
            let pp = ring.mul(&ring.involution(&g.pi), &g.pi);
            r = ring.sub(&r, &ring.smul(c as i64 * (c as i64 - 1) / 2, &pp));
            r
        };
        // action of g_i^c on basis b: additive in u, so c-fold sum of act[i][slot]
        let on_basis = {
            let base = &self.act[i][slot];
            let mut acc = self.module.zero();
            for _ in 0..c {
                acc = self.add(&acc, base);
            }
            acc
        };
        // now extend to val·b recursively
        let basis = ring.basis_elt(slot);
        let mut acc = self.module.zero(); // u·(0·b)
        let mut k = 0u16;
        while k < val as u16 {
            // u·((k+1)b) = u·(k·b) ∔ φ(b̄ ρ(u) k·b) ∔ u·b
            let kb = ring.smul(k as i64, &basis);
            let corr = ring.mul(&ring.mul(&ring.involution(&basis), &g_rho), &kb);
            acc = self.add(&acc, &self.phi_map(ring, &corr));
            acc = self.add(&acc, &on_basis);
            k += 1;
        }
        acc
    }

    fn act(&self, ring: &Ring, u: &[Coord], a: &[Coord]) -> DElt {
        // u·a for a = Σ pure terms p₁ + p₂ + ...: left-to-right expansion
        // u·(p + rest) = u·p ∔ φ(rest̄ ρ(u) p) ∔ u·rest.
        let mut rest = a.to_vec();
        let rho_u = self.rho(ring, u);
        let rho_u_conj_pending = !ring.is_zero(&rho_u);
        let mut out = self.module.zero();
        for (slot, &val) in a.iter().enumerate() {
            if val == 0 {
                continue;
            }
            rest[slot] = 0;
            let pure_col = self.pure_index[&(slot, val)];
            for (i, &c) in u.iter().enumerate() {
                if c != 0 {
                    let row = self.span_row(i, c);
                    out = self.add(&out, &self.act_table[row][pure_col]);
                }
            }
            if rho_u_conj_pending && rest.iter().any(|&x| x != 0) {
                let mut term = vec![0; a.len()];
                term[slot] = val;
                let corr = ring.mul(&ring.mul(&ring.involution(&rest), &rho_u), &term);
                if !ring.is_zero(&corr) {
                    out = self.add(&out, &self.phi_map(ring, &corr));
                }
            }
        }
        out
    }

    /// Test hook: overwrite a coordinate's ρ table entry.
    pub fn corrupt_rho(&mut self, coord: usize, rho: RElt) {
        self.coords[coord].rho = rho;
    }

    /// All nonzero single-coordinate elements: the spanning family for
    /// structured checks.
    fn spanning(&self) -> Vec<DElt> {
        let mut out = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            for v in 1..c.modulus {
                let mut e = self.module.zero();
                e[i] = v;
                out.push(e);
            }
        }
        out
    }
}

/// Δ as an explicitly closed subgroup of Heis(R); elements are (π, ρ) pairs.
#[derive(Clone, Debug)]
pub struct SpecialDelta {
    rmod: ZModule,
    /// Scaled modulus and per-coordinate scaling for the π-part reduction.
    n: u64,
    scale: Vec<u64>,
    /// Pivot elements sorted by pivot column; their π-parts form a
    /// Howell-style basis of π(Δ).
    pivots: Vec<SpecialPivot>,
    /// {y : (0, y) ∈ Δ}.
    nker: Subgroup,
    /// Structured spanning elements (the reduced generator set).
    spanning: Vec<(RElt, RElt)>,
}

#[derive(Clone, Debug)]
struct SpecialPivot {
    col: usize,
    val: u64,
    elt: (RElt, RElt),
}

fn heis_add(ring: &Ring, a: &(RElt, RElt), b: &(RElt, RElt)) -> (RElt, RElt) {
    let m = ring.add(&a.0, &b.0);
    let twist = ring.mul(&ring.involution(&a.0), &b.0);
    let x = ring.add(&ring.sub(&a.1, &twist), &b.1);
    (m, x)
}

fn heis_neg(ring: &Ring, a: &(RElt, RElt)) -> (RElt, RElt) {
    let m = ring.neg(&a.0);
    let mm = ring.mul(&ring.involution(&a.0), &a.0);
    let x = ring.sub(&ring.neg(&a.1), &mm);
    (m, x)
}

fn heis_pow(ring: &Ring, a: &(RElt, RElt), k: i64) -> (RElt, RElt) {
    let (base, k) = if k < 0 {
        (heis_neg(ring, a), -k)
    } else {
        (a.clone(), k)
    };
    let mut out = (ring.zero(), ring.zero());
    for _ in 0..k {
        out = heis_add(ring, &out, &base);
    }
    out
}

impl SpecialDelta {
    /// Closure of a generating set inside Heis(R).
    pub fn close(ring: &Ring, gens: Vec<(RElt, RElt)>) -> SpecialDelta {
        let rmod = ring.module().clone();
        let n = rmod
            .moduli()
            .iter()
            .fold(1u64, |acc, &m| crate::zmod::lcm(acc, m as u64))
            .max(1);
        let scale: Vec<u64> = rmod.moduli().iter().map(|&m| n / m as u64).collect();
        let spanning = gens.clone();
        let mut pivots: Vec<SpecialPivot> = Vec::new();
        let mut nparts: Vec<RElt> = Vec::new();
        let mut queue = gens;
        let scale_pi = |e: &RElt| -> Vec<u64> {
            e.iter()
                .zip(&scale)
                .map(|(&x, &s)| (x as u64 * s) % n)
                .collect()
        };
        while let Some(g) = queue.pop() {
            let mut g = g;
            loop {
                let spi = scale_pi(&g.0);
                let Some(col) = spi.iter().position(|&x| x != 0) else {
                    // π = 0: record ρ-part
                    if !ring.is_zero(&g.1) {
                        nparts.push(g.1.clone());
                    }
                    break;
                };
                // find pivot at or before this column
                match pivots.iter().position(|p| p.col == col) {
                    Some(pi_idx) if spi[col] % pivots[pi_idx].val == 0 => {
                        let k = (spi[col] / pivots[pi_idx].val) as i64;
                        let sub = heis_pow(ring, &pivots[pi_idx].elt, -k);
                        g = heis_add(ring, &g, &sub);
                        // continue reducing
                    }
                    Some(pi_idx) => {
                        // merge: gcd combination becomes the new pivot
                        let p = pivots[pi_idx].clone();
                        let (gg, s, t) = xgcd_u(spi[col], p.val, n);
                        let comb = heis_add(
                            ring,
                            &heis_pow(ring, &g, s),
                            &heis_pow(ring, &p.elt, t),
                        );
                        debug_assert_eq!(scale_pi(&comb.0)[col], gg);
                        // requeue the displaced pivot and the current element
                        pivots.remove(pi_idx);
                        for q in pivots.drain(..) {
                            queue.push(q.elt);
                        }
                        for y in nparts.drain(..) {
                            queue.push((ring.zero(), y));
                        }
                        queue.push(g);
                        queue.push(p.elt);
                        g = comb;
                        // fall through: will be re-processed from scratch
                    }
                    None => {
                        // scale so the pivot value is gcd(entry, n); the
                        // scaling power need not be a unit, so the original
                        // element is re-enqueued and reduced afterwards
                        let gval = gcd(spi[col], n);
                        let (_, s, _) = xgcd_u(spi[col], n, n);
                        let gg = heis_pow(ring, &g, s);
                        debug_assert_eq!(scale_pi(&gg.0)[col], gval);
                        queue.push(g.clone());
                        // enqueue annihilator shadow and commutators
                        let shadow = heis_pow(ring, &gg, (n / gval) as i64);
                        debug_assert!(scale_pi(&shadow.0)[col] == 0);
                        queue.push(shadow);
                        for p in &pivots {
                            // [a, b] has π = 0 in Heis
                            let c = heis_add(
                                ring,
                                &heis_add(ring, &gg, &p.elt),
                                &heis_neg(ring, &heis_add(ring, &p.elt, &gg)),
                            );
                            debug_assert!(ring.is_zero(&c.0));
                            queue.push(c);
                        }
                        pivots.push(SpecialPivot {
                            col,
                            val: gval,
                            elt: gg,
                        });
                        pivots.sort_by_key(|p| p.col);
                        break;
                    }
                }
            }
        }
        // kernel combinations of pivot rows: coefficient vectors k with
        // Σ k·π(pivot) = 0 give extra (0, y) elements
        let piv_pis: Vec<RElt> = pivots.iter().map(|p| p.elt.0.clone()).collect();
        if !piv_pis.is_empty() {
            let coeff_mod = ZModule::new(
                piv_pis
                    .iter()
                    .map(|p| {
                        let o = rmod.order_of(p);
                        assert!(o <= Coord::MAX as u64);
                        o as Coord
                    })
                    .collect(),
            );
            let full = Subgroup::from_gens(
                &coeff_mod,
                (0..pivots.len()).map(|i| {
                    let mut e = coeff_mod.zero();
                    e[i] = 1;
                    e
                }),
            );
            let ker = full.kernel_of(&rmod, |k| {
                let mut acc = rmod.zero();
                for (ki, p) in k.iter().zip(&piv_pis) {
                    acc = rmod.add(&acc, &rmod.smul(*ki as i64, p));
                }
                acc
            });
            for kv in ker.basis() {
                let mut acc = (ring.zero(), ring.zero());
                for (p, &k) in pivots.iter().zip(&kv) {
                    acc = heis_add(ring, &acc, &heis_pow(ring, &p.elt, k as i64));
                }
                debug_assert!(ring.is_zero(&acc.0));
                nparts.push(acc.1);
            }
        }
        let nker = Subgroup::from_gens(&rmod, nparts);
        SpecialDelta {
            rmod,
            n,
            scale,
            pivots,
            nker,
            spanning,
        }
    }

    fn scale_pi(&self, e: &RElt) -> Vec<u64> {
        e.iter()
            .zip(&self.scale)
            .map(|(&x, &s)| (x as u64 * s) % self.n)
            .collect()
    }

    /// Section over π(Δ): the canonical pivot-power product with the given
    /// π-part, if the π-part lies in π(Δ).
    fn section(&self, ring: &Ring, m: &RElt) -> Option<(RElt, RElt)> {
        let mut v = self.scale_pi(m);
        let mut acc = (ring.zero(), ring.zero());
        for p in &self.pivots {
            if v[p.col] != 0 {
                if v[p.col] % p.val != 0 {
                    return None;
                }
                let k = (v[p.col] / p.val) as i64;
                acc = heis_add(ring, &acc, &heis_pow(ring, &p.elt, k));
                let spi = self.scale_pi(&p.elt.0);
                for (x, &r) in v.iter_mut().zip(&spi) {
                    *x = (*x + (self.n - (k as u64 * r) % self.n)) % self.n;
                }
            }
        }
        if v.iter().all(|&x| x == 0) {
            Some(acc)
        } else {
            None
        }
    }

    pub fn contains(&self, ring: &Ring, e: &(RElt, RElt)) -> bool {
        match self.section(ring, &e.0) {
            None => false,
            Some(sec) => {
                let diff = heis_add(ring, e, &heis_neg(ring, &sec));
                debug_assert!(ring.is_zero(&diff.0));
                self.nker.contains(&diff.1)
            }
        }
    }

    pub fn size(&self) -> u128 {
        let p: u128 = self
            .pivots
            .iter()
            .map(|p| (self.n / gcd(p.val, self.n)) as u128)
            .product();
        p * self.nker.size()
    }

    fn spanning_elts(&self) -> Vec<(RElt, RElt)> {
        let mut out: Vec<(RElt, RElt)> = self.pivots.iter().map(|p| p.elt.clone()).collect();
        for y in self.nker.basis() {
            out.push((vec![0; self.rmod.rank()], y));
        }
        for g in &self.spanning {
            if !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }

    /// A complete generating set: pivot lifts plus the kernel basis.
    pub fn generating_pairs(&self) -> Vec<(RElt, RElt)> {
        let mut out: Vec<(RElt, RElt)> = self.pivots.iter().map(|p| p.elt.clone()).collect();
        for y in self.nker.basis() {
            out.push((vec![0; self.rmod.rank()], y));
        }
        out
    }
}

fn xgcd_u(a: u64, b: u64, n: u64) -> (u64, i64, i64) {
    fn xg(a: i128, b: i128) -> (i128, i128, i128) {
        if b == 0 {
            (a, 1, 0)
        } else {
            let (g, s, t) = xg(b, a % b);
            (g, t, s - (a / b) * t)
        }
    }
    let (g, s, t) = xg(a as i128, b as i128);
    let _ = n;
    (g as u64, s as i64, t as i64)
}

#[derive(Clone, Debug)]
pub enum Delta {
    Slotted(SlottedDelta),
    Special(SpecialDelta),
}

/// An odd form ring (R, Δ).
#[derive(Clone, Debug)]
pub struct OddFormRing {
    pub ring: Ring,
    pub delta: Delta,
    pub unital: bool,
}

impl OddFormRing {
    pub fn dzero(&self) -> DElt {
        match &self.delta {
            Delta::Slotted(s) => s.module().zero(),
            Delta::Special(_) => vec![0; 2 * self.ring.rank()],
        }
    }

    fn to_pair(&self, e: &[Coord]) -> (RElt, RElt) {
        let n = self.ring.rank();
        (e[..n].to_vec(), e[n..].to_vec())
    }

    fn from_pair(&self, p: (RElt, RElt)) -> DElt {
        let mut v = p.0;
        v.extend(p.1);
        v
    }

    pub fn dadd(&self, a: &[Coord], b: &[Coord]) -> DElt {
        match &self.delta {
            Delta::Slotted(s) => s.add(a, b),
            Delta::Special(_) => {
                let r = heis_add(&self.ring, &self.to_pair(a), &self.to_pair(b));
                self.from_pair(r)
            }
        }
    }

    pub fn dneg(&self, a: &[Coord]) -> DElt {
        match &self.delta {
            Delta::Slotted(s) => s.neg(a),
            Delta::Special(_) => {
                let r = heis_neg(&self.ring, &self.to_pair(a));
                self.from_pair(r)
            }
        }
    }

    pub fn dsub(&self, a: &[Coord], b: &[Coord]) -> DElt {
        self.dadd(a, &self.dneg(b))
    }

    pub fn dsum(&self, parts: &[DElt]) -> DElt {
        let mut acc = self.dzero();
        for p in parts {
            acc = self.dadd(&acc, p);
        }
        acc
    }

    pub fn is_dzero(&self, a: &[Coord]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn phi(&self, a: &[Coord]) -> DElt {
        match &self.delta {
            Delta::Slotted(s) => s.phi_map(&self.ring, a),
            Delta::Special(_) => {
                let x = self.ring.sub(a, &self.ring.involution(a));
                self.from_pair((self.ring.zero(), x))
            }
        }
    }

    pub fn pi(&self, u: &[Coord]) -> RElt {
        match &self.delta {
            Delta::Slotted(s) => s.pi(&self.ring, u),
            Delta::Special(_) => self.to_pair(u).0,
        }
    }

    pub fn rho(&self, u: &[Coord]) -> RElt {
        match &self.delta {
            Delta::Slotted(s) => s.rho(&self.ring, u),
            Delta::Special(_) => self.to_pair(u).1,
        }
    }

    pub fn act(&self, u: &[Coord], a: &[Coord]) -> DElt {
        match &self.delta {
            Delta::Slotted(s) => s.act(&self.ring, u, a),
            Delta::Special(_) => {
                let (m, x) = self.to_pair(u);
                let ma = self.ring.mul(&m, a);
                let xa = self
                    .ring
                    .mul(&self.ring.mul(&self.ring.involution(a), &x), a);
                self.from_pair((ma, xa))
            }
        }
    }

    /// Membership of a coordinate vector in Δ (trivial for slotted).
    pub fn delta_contains(&self, u: &[Coord]) -> bool {
        match &self.delta {
            Delta::Slotted(_) => true,
            Delta::Special(sd) => sd.contains(&self.ring, &self.to_pair(u)),
        }
    }

    pub fn delta_size(&self) -> u128 {
        match &self.delta {
            Delta::Slotted(s) => s.module().size(),
            Delta::Special(sd) => sd.size(),
        }
    }

    /// The structured spanning family of Δ used by exhaustive generator-level
    /// checks: single-coordinate values (slotted) or the reduced generator
    /// set plus kernel basis (special).
    pub fn delta_spanning(&self) -> Vec<DElt> {
        match &self.delta {
            Delta::Slotted(s) => s.spanning(),
            Delta::Special(sd) => sd
                .spanning_elts()
                .into_iter()
                .map(|p| self.from_pair(p))
                .collect(),
        }
    }

    /// The ambient coordinate module Δ lives in. For special representations
    /// the group law is not coordinatewise addition; use `dadd`.
    pub fn delta_module(&self) -> ZModule {
        match &self.delta {
            Delta::Slotted(s) => s.module().clone(),
            Delta::Special(_) => self.ring.module().concat(self.ring.module()),
        }
    }

    pub fn render_delta(&self, u: &[Coord]) -> String {
        match &self.delta {
            Delta::Slotted(_) => format!("Δ{u:?}"),
            Delta::Special(_) => {
                let (m, x) = self.to_pair(u);
                format!("({}, {})", self.ring.render(&m), self.ring.render(&x))
            }
        }
    }

    // ----- unitary group -----

    pub fn is_unitary(&self, g: &[Coord]) -> bool {
        let p = self.pi(g);
        let r = self.rho(g);
        if p != self.ring.involution(&r) {
            return false;
        }
        let pc = self.ring.involution(&p);
        self.ring.mul(&p, &pc) == self.ring.mul(&pc, &p)
    }

    pub fn u_one(&self) -> DElt {
        self.dzero()
    }

    /// gh = g·π(h) ∔ h ∔ g.
    pub fn u_mul(&self, g: &[Coord], h: &[Coord]) -> DElt {
        let gp = self.act(g, &self.pi(h));
        self.dadd(&self.dadd(&gp, h), g)
    }

    /// g⁻¹ = ∸ g·π(g)̄ ∸ g.
    pub fn u_inv(&self, g: &[Coord]) -> DElt {
        let gp = self.act(g, &self.ring.involution(&self.pi(g)));
        self.dsub(&self.dneg(&gp), g)
    }

    /// ᵍa = α(g) a α(g)̄ with α(g) = π(g) + 1, expanded without the
    /// unitalization carrier.
    pub fn conj_ring(&self, g: &[Coord], a: &[Coord]) -> RElt {
        let p = self.pi(g);
        let pc = self.ring.involution(&p);
        let mut out = a.to_vec();
        out = self.ring.add(&out, &self.ring.mul(&p, a));
        out = self.ring.add(&out, &self.ring.mul(a, &pc));
        out = self.ring.add(&out, &self.ring.mul(&self.ring.mul(&p, a), &pc));
        out
    }

    /// Action of w by r + 1 in the unitalization: w·r ∔ φ(ρ(w) r) ∔ w.
    fn act_unitalized(&self, w: &[Coord], r: &[Coord]) -> DElt {
        let wr = self.act(w, r);
        let corr = self.phi(&self.ring.mul(&self.rho(w), r));
        self.dadd(&self.dadd(&wr, &corr), w)
    }

    /// ᵍu = (g·π(u) ∔ u)·α(g)̄ — also the conjugation action of the unitary
    /// group on itself.
    pub fn conj_delta(&self, g: &[Coord], u: &[Coord]) -> DElt {
        let w = self.dadd(&self.act(g, &self.pi(u)), u);
        self.act_unitalized(&w, &self.ring.involution(&self.pi(g)))
    }
}

/// A hyperbolic pair (e₋, e₊, q₋, q₊).
#[derive(Clone, Debug)]
pub struct HyperbolicPair {
    pub e_minus: RElt,
    pub e_plus: RElt,
    pub q_minus: DElt,
    pub q_plus: DElt,
}

/// A strong orthogonal hyperbolic family η₁, ..., η_l.
#[derive(Clone, Debug)]
pub struct HyperbolicFamily {
    pub pairs: Vec<HyperbolicPair>,
}

impl HyperbolicFamily {
    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    /// Idempotent e_a for a signed axis a (1-based).
    pub fn e(&self, a: i32) -> &RElt {
        let p = &self.pairs[(a.abs() - 1) as usize];
        if a > 0 {
            &p.e_plus
        } else {
            &p.e_minus
        }
    }

    pub fn q(&self, a: i32) -> &DElt {
        let p = &self.pairs[(a.abs() - 1) as usize];
        if a > 0 {
            &p.q_plus
        } else {
            &p.q_minus
        }
    }

    /// Summed idempotent over a set of signed axes (orthogonality assumed).
    pub fn e_sum(&self, ofr: &OddFormRing, axes: &[i32]) -> RElt {
        let mut acc = ofr.ring.zero();
        for &a in axes {
            acc = ofr.ring.add(&acc, self.e(a));
        }
        acc
    }

    pub fn q_sum(&self, ofr: &OddFormRing, axes: &[i32]) -> DElt {
        let mut acc = ofr.dzero();
        for &a in axes {
            acc = ofr.dadd(&acc, self.q(a));
        }
        acc
    }
}

/// Enumerated additive carriers of an odd form ring relative to a family:
/// ring components e_i S e_j and form components Θ⁰_j.
pub struct Carriers<'a> {
    pub ofr: &'a OddFormRing,
    pub family: &'a HyperbolicFamily,
    /// Restrict ring carriers to this subgroup of the ring (the kernel part
    /// in crossed settings); `None` means the whole ring.
    pub ring_part: Option<&'a Subgroup>,
    /// Additional linear constraint for Δ carriers (kernel part).
    pub delta_part: Option<Box<dyn Fn(&DElt) -> bool + 'a>>,
    cache_sij: std::cell::RefCell<HashMap<(i32, i32), Vec<RElt>>>,
    cache_theta0: std::cell::RefCell<HashMap<i32, Vec<DElt>>>,
}

impl<'a> Carriers<'a> {
    pub fn new(ofr: &'a OddFormRing, family: &'a HyperbolicFamily) -> Carriers<'a> {
        Carriers {
            ofr,
            family,
            ring_part: None,
            delta_part: None,
            cache_sij: Default::default(),
            cache_theta0: Default::default(),
        }
    }

    fn ring_subgroup(&self) -> Subgroup {
        match self.ring_part {
            Some(s) => s.clone(),
            None => {
                let m = self.ofr.ring.module();
                Subgroup::from_gens(m, (0..m.rank()).map(|i| self.ofr.ring.basis_elt(i)))
            }
        }
    }

    /// e_i S e_j as an enumerated sorted list.
    pub fn s_ij(&self, i: i32, j: i32) -> Vec<RElt> {
        if let Some(v) = self.cache_sij.borrow().get(&(i, j)) {
            return v.clone();
        }
        let ei = self.family.e(i).clone();
        let ej = self.family.e(j).clone();
        let sub = self.ring_subgroup();
        let gens: Vec<RElt> = sub
            .basis()
            .iter()
            .map(|b| self.ofr.ring.mul(&self.ofr.ring.mul(&ei, b), &ej))
            .collect();
        let out = Subgroup::from_gens(self.ofr.ring.module(), gens).elements(1 << 20);
        self.cache_sij.borrow_mut().insert((i, j), out.clone());
        out
    }

    /// Θ⁰_j = {u ∈ Δ·e_j : e_k π(u) = 0 for all k}, intersected with the
    /// kernel part in crossed settings.
    pub fn theta0(&self, j: i32) -> Vec<DElt> {
        if let Some(v) = self.cache_theta0.borrow().get(&j) {
            return v.clone();
        }
        let ofr = self.ofr;
        let ej = self.family.e(j).clone();
        let l = self.family.rank() as i32;
        let axes: Vec<i32> = (1..=l).chain((1..=l).map(|x| -x)).collect();
        let candidates: Vec<DElt> = match &ofr.delta {
            Delta::Slotted(sd) => {
                // By the direct-sum shape, Θ⁰_j is spanned by the coordinates
                // whose generator already satisfies both defining conditions.
                let dmod = sd.module().clone();
                let mut keep = Vec::new();
                for (c, sc) in sd.coords().iter().enumerate() {
                    let mut g = dmod.zero();
                    g[c] = 1;
                    let fixed = sd.act(&ofr.ring, &g, &ej) == g;
                    let clean = axes
                        .iter()
                        .all(|&a| ofr.ring.is_zero(&ofr.ring.mul(self.family.e(a), &sc.pi)));
                    if fixed && clean {
                        keep.push(c);
                    }
                }
                let mut out = Vec::new();
                let mut counters = vec![0u16; keep.len()];
                'outer: loop {
                    let mut u = dmod.zero();
                    for (&c, &v) in keep.iter().zip(&counters) {
                        u[c] = v as Coord;
                    }
                    out.push(u);
                    let mut i = 0;
                    loop {
                        if i == keep.len() {
                            break 'outer;
                        }
                        counters[i] += 1;
                        if counters[i] < sd.coords()[keep[i]].modulus as u16 {
                            break;
                        }
                        counters[i] = 0;
                        i += 1;
                    }
                }
                out
            }
            Delta::Special(_) => {
                // Coordinates are (π, ρ) pairs; both conditions are linear
                // in the coordinates, so solve and filter by Δ-membership.
                let dmod = ofr.delta_module();
                let rmod = ofr.ring.module().clone();
                let mut cond_target = dmod.clone();
                for _ in 0..axes.len() {
                    cond_target = cond_target.concat(&rmod);
                }
                let full = Subgroup::from_gens(
                    &dmod,
                    (0..dmod.rank()).map(|i| {
                        let mut e = dmod.zero();
                        e[i] = 1;
                        e
                    }),
                );
                let sol = full.kernel_of(&cond_target, |u| {
                    let acted = ofr.act(u, &ej);
                    let mut out = dmod.sub(&acted, u);
                    let p = ofr.pi(u);
                    for &a in &axes {
                        out.extend(ofr.ring.mul(self.family.e(a), &p));
                    }
                    out
                });
                sol.elements(1 << 20)
                    .into_iter()
                    .filter(|u| ofr.delta_contains(u))
                    .collect()
            }
        };
        let mut out: Vec<DElt> = candidates
            .into_iter()
            .filter(|u| match &self.delta_part {
                Some(f) => f(u),
                None => true,
            })
            .collect();
        // sanity: every carrier element satisfies the defining conditions
        for u in &out {
            debug_assert_eq!(ofr.act(u, &ej), *u);
            let p = ofr.pi(u);
            for &a in &axes {
                debug_assert!(ofr.ring.is_zero(&ofr.ring.mul(self.family.e(a), &p)));
            }
        }
        out.sort();
        out.dedup();
        self.cache_theta0.borrow_mut().insert(j, out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Heis(Z/2) as a special delta: the full parameter subgroup.
    fn tiny_special() -> OddFormRing {
        let ring = Ring::zn(2);
        // generators: φ(1) = (0, 1 − 1) = (0,0); (1, x) with x + 1 + x̄ = 0
        // over Z/2: x arbitrary? condition x + m̄m + x̄ = 0 → 2x + 1 = 0 →
        // impossible over Z/2... take the form parameter {(0, x)}:
        let sd = SpecialDelta::close(&ring, vec![(vec![0], vec![1])]);
        OddFormRing {
            ring,
            delta: Delta::Special(sd),
            unital: true,
        }
    }

    #[test]
    fn special_closure_membership() {
        let ofr = tiny_special();
        assert_eq!(ofr.delta_size(), 2);
        assert!(ofr.delta_contains(&[0, 1]));
        assert!(!ofr.delta_contains(&[1, 0]));
        let a = vec![0, 1];
        assert_eq!(ofr.dadd(&a, &a), vec![0, 0]);
    }

    #[test]
    fn heis_group_laws() {
        // associativity and inverses in Heis(Z/4) through the element ops
        let ring = Ring::zn(4);
        let mut elts = Vec::new();
        for m in 0..4u8 {
            for x in 0..4u8 {
                elts.push((vec![m], vec![x]));
            }
        }
        for a in &elts {
            let na = heis_neg(&ring, a);
            let z = heis_add(&ring, a, &na);
            assert!(ring.is_zero(&z.0) && ring.is_zero(&z.1));
            for b in &elts {
                for c in &elts {
                    let l = heis_add(&ring, &heis_add(&ring, a, b), c);
                    let r = heis_add(&ring, a, &heis_add(&ring, b, c));
                    assert_eq!(l, r);
                }
            }
        }
    }
}

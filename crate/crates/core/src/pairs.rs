//! Two-sorted coefficient pairs (K, L) of types B, C and F, their axiom
//! checkers, admissible subpairs and crossed pairs.
//!
//! Pairs here are small and fully tabulated: quadratic maps are stored as
//! element tables, so every axiom is checked by literal loops over all
//! elements. Crossed pairs are built as pullbacks inside (K, L) × (K, L),
//! which is exactly the shape of admissible subpairs.

use std::collections::HashMap;

use crate::ring::{RElt, Ring};
use crate::zmod::{apply_lin, Coord, SubCoords, Subgroup, ZModule};

pub type LElt = Vec<Coord>;

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum PairKind {
    B,
    C,
    F,
}

const MAX_TABLE: u128 = 4096;

/// Type B: L a unital commutative ring, K an L-module with a classical
/// quadratic form s: K → L.
#[derive(Clone, Debug)]
pub struct PairB {
    pub l: Ring,
    pub k: ZModule,
    /// act[l_coord][k_coord] = basis_l · basis_k ∈ K (biadditive).
    pub act: Vec<Vec<Vec<Coord>>>,
    /// Full table of s.
    pub s: HashMap<Vec<Coord>, RElt>,
}

impl PairB {
    pub fn act_apply(&self, l: &[Coord], k: &[Coord]) -> Vec<Coord> {
        let mut acc = self.k.zero();
        for (i, &li) in l.iter().enumerate() {
            if li == 0 {
                continue;
            }
            for (j, &kj) in k.iter().enumerate() {
                if kj == 0 {
                    continue;
                }
                let t = self.k.smul(li as i64 * kj as i64, &self.act[i][j]);
                self.k.add_assign(&mut acc, &t);
            }
        }
        acc
    }

    pub fn s_of(&self, k: &[Coord]) -> RElt {
        self.s[k].clone()
    }

    /// s(k | k') = s(k + k') − s(k) − s(k').
    pub fn sbil(&self, k: &[Coord], k2: &[Coord]) -> RElt {
        let sum = self.k.add(k, k2);
        self.l
            .sub(&self.l.sub(&self.s_of(&sum), &self.s_of(k)), &self.s_of(k2))
    }

    pub fn k_elements(&self) -> Vec<Vec<Coord>> {
        assert!(self.k.size() <= MAX_TABLE);
        self.k.iter_all().collect()
    }

    pub fn l_elements(&self) -> Vec<LElt> {
        assert!(self.l.module().size() <= MAX_TABLE);
        self.l.module().iter_all().collect()
    }
}

/// Type C: K a unital commutative ring, L an abelian group with d: K → L,
/// u: L → K and a twisted action L × K → L.
#[derive(Clone, Debug)]
pub struct PairC {
    pub k: Ring,
    pub l: ZModule,
    /// d on K coordinates (additive).
    pub d: Vec<LElt>,
    /// u on L coordinates (additive).
    pub u: Vec<RElt>,
    /// Full table of (l, k) ↦ l·k.
    pub dot: HashMap<(LElt, Vec<Coord>), LElt>,
}

impl PairC {
    pub fn d_of(&self, k: &[Coord]) -> LElt {
        apply_lin(&self.l, &self.d, k)
    }

    pub fn u_of(&self, l: &[Coord]) -> RElt {
        apply_lin(self.k.module(), &self.u, l)
    }

    pub fn dot_of(&self, l: &[Coord], k: &[Coord]) -> LElt {
        self.dot[&(l.to_vec(), k.to_vec())].clone()
    }

    pub fn k_elements(&self) -> Vec<RElt> {
        assert!(self.k.module().size() <= MAX_TABLE);
        self.k.module().iter_all().collect()
    }

    pub fn l_elements(&self) -> Vec<LElt> {
        assert!(self.l.size() <= MAX_TABLE);
        self.l.iter_all().collect()
    }
}

/// Type F: both K and L unital commutative rings, with a unital homomorphism
/// u: L → K and maps d, s: K → L.
#[derive(Clone, Debug)]
pub struct PairF {
    pub k: Ring,
    pub l: Ring,
    pub u: Vec<RElt>,
    pub d: Vec<LElt>,
    pub s: HashMap<Vec<Coord>, LElt>,
}

impl PairF {
    pub fn u_of(&self, l: &[Coord]) -> RElt {
        apply_lin(self.k.module(), &self.u, l)
    }

    pub fn d_of(&self, k: &[Coord]) -> LElt {
        apply_lin(self.l.module(), &self.d, k)
    }

    pub fn s_of(&self, k: &[Coord]) -> LElt {
        self.s[k].clone()
    }

    pub fn k_elements(&self) -> Vec<RElt> {
        assert!(self.k.module().size() <= MAX_TABLE);
        self.k.module().iter_all().collect()
    }

    pub fn l_elements(&self) -> Vec<LElt> {
        assert!(self.l.module().size() <= MAX_TABLE);
        self.l.module().iter_all().collect()
    }

    /// The derived type-B structure: K an L-module via k·u(l), same s.
    pub fn as_b(&self) -> PairB {
        let kmod = self.k.module().clone();
        let mut act = Vec::new();
        for i in 0..self.l.rank() {
            let ui = self.u_of(&self.l.basis_elt(i));
            let mut row = Vec::new();
            for j in 0..self.k.rank() {
                row.push(self.k.mul(&self.k.basis_elt(j), &ui));
            }
            act.push(row);
        }
        PairB {
            l: self.l.clone(),
            k: kmod,
            act,
            s: self.s.clone(),
        }
    }

    /// The derived type-C structure: same d, u, with l·k := l·s(k).
    pub fn as_c(&self) -> PairC {
        let mut dot = HashMap::new();
        for l in self.l_elements() {
            for k in self.k_elements() {
                let v = self.l.mul(&l, &self.s_of(&k));
                dot.insert((l.clone(), k.clone()), v);
            }
        }
        PairC {
            k: self.k.clone(),
            l: self.l.module().clone(),
            d: self.d.clone(),
            u: self.u.clone(),
            dot,
        }
    }
}

/// The pair (K, K) with u = id, d = 2·, s = squaring.
pub fn ff(k: &Ring) -> PairF {
    assert!(k.one().is_some(), "FF needs a unital ring");
    let mut s = HashMap::new();
    for e in k.module().iter_all() {
        s.insert(e.clone(), k.mul(&e, &e));
    }
    PairF {
        k: k.clone(),
        l: k.clone(),
        u: (0..k.rank()).map(|i| k.basis_elt(i)).collect(),
        d: (0..k.rank()).map(|i| k.smul(2, &k.basis_elt(i))).collect(),
        s,
    }
}

#[derive(Clone, Debug)]
pub enum Pair {
    B(PairB),
    C(PairC),
    F(PairF),
}

impl Pair {
    pub fn kind(&self) -> PairKind {
        match self {
            Pair::B(_) => PairKind::B,
            Pair::C(_) => PairKind::C,
            Pair::F(_) => PairKind::F,
        }
    }

    pub fn k_module(&self) -> &ZModule {
        match self {
            Pair::B(p) => &p.k,
            Pair::C(p) => p.k.module(),
            Pair::F(p) => p.k.module(),
        }
    }

    pub fn l_module(&self) -> &ZModule {
        match self {
            Pair::B(p) => p.l.module(),
            Pair::C(p) => &p.l,
            Pair::F(p) => p.l.module(),
        }
    }
}

/// One named axiom failure with a witness rendering.
#[derive(Clone, Debug, serde::Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct PairReport {
    pub instances: u64,
    pub failures: Vec<AxiomFailure>,
}

impl PairReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, axiom: &str, pass: bool, witness: impl Fn() -> String) {
        self.instances += 1;
        if !pass && self.failures.iter().filter(|f| f.axiom == axiom).count() < 3 {
            self.failures.push(AxiomFailure {
                axiom: axiom.into(),
                witness: witness(),
            });
        }
    }
}

/// Exhaustive axiom check for a pair of any type.
pub fn check_pair(pair: &Pair) -> PairReport {
    let mut rep = PairReport::default();
    match pair {
        Pair::B(p) => {
            if let Err(e) = p.l.check_structure() {
                rep.check("L-ring", false, || e.clone());
            }
            for i in 0..p.l.rank() {
                for j in 0..p.l.rank() {
                    let bi = p.l.basis_elt(i);
                    let bj = p.l.basis_elt(j);
                    rep.check("L-commutative", p.l.mul(&bi, &bj) == p.l.mul(&bj, &bi), || {
                        format!("({i}, {j})")
                    });
                }
            }
            let ks = p.k_elements();
            let ls = p.l_elements();
            let one = p.l.one().unwrap().clone();
            for k in &ks {
                rep.check("module-unital", p.act_apply(&one, k) == *k, || {
                    format!("k={k:?}")
                });
                for l in &ls {
                    let kl = p.act_apply(l, k);
                    rep.check(
                        "s-scaling",
                        p.s_of(&kl) == p.l.mul(&p.s_of(k), &p.l.mul(l, l)),
                        || format!("k={k:?} l={l:?}"),
                    );
                    for l2 in &ls {
                        rep.check(
                            "module-assoc",
                            p.act_apply(&p.l.mul(l, l2), k) == p.act_apply(l, &p.act_apply(l2, k)),
                            || format!("k={k:?} l={l:?} l'={l2:?}"),
                        );
                    }
                    for k2 in &ks {
                        rep.check(
                            "sbil-scaling",
                            p.sbil(&kl, k2) == p.l.mul(&p.sbil(k, k2), l),
                            || format!("k={k:?} k'={k2:?} l={l:?}"),
                        );
                    }
                }
                for k2 in &ks {
                    for k3 in &ks {
                        let lhs = p.sbil(&p.k.add(k, k2), k3);
                        let rhs = p.l.add(&p.sbil(k, k3), &p.sbil(k2, k3));
                        rep.check("sbil-additive", lhs == rhs, || {
                            format!("k={k:?} k'={k2:?} k''={k3:?}")
                        });
                    }
                }
            }
        }
        Pair::C(p) => {
            if let Err(e) = p.k.check_structure() {
                rep.check("K-ring", false, || e.clone());
            }
            let ks = p.k_elements();
            let ls = p.l_elements();
            let one = p.k.one().unwrap().clone();
            for k in &ks {
                rep.check(
                    "u-d",
                    p.u_of(&p.d_of(k)) == p.k.smul(2, k),
                    || format!("k={k:?}"),
                );
                for k2 in &ks {
                    let kk2 = p.k.mul(k, k2);
                    rep.check(
                        "d-dot",
                        p.dot_of(&p.d_of(k), k2) == p.d_of(&p.k.mul(&kk2, k2)),
                        || format!("k={k:?} k'={k2:?}"),
                    );
                }
            }
            for l in &ls {
                rep.check(
                    "d-u",
                    p.d_of(&p.u_of(l)) == p.l.smul(2, l),
                    || format!("l={l:?}"),
                );
                rep.check("dot-unital", p.dot_of(l, &one) == *l, || format!("l={l:?}"));
                for l2 in &ls {
                    for k in &ks {
                        let lhs = p.dot_of(&p.l.add(l, l2), k);
                        let rhs = p.l.add(&p.dot_of(l, k), &p.dot_of(l2, k));
                        rep.check("dot-left-additive", lhs == rhs, || {
                            format!("l={l:?} l'={l2:?} k={k:?}")
                        });
                    }
                }
                for k in &ks {
                    rep.check(
                        "u-dot",
                        p.u_of(&p.dot_of(l, k)) == p.k.mul(&p.u_of(l), &p.k.mul(k, k)),
                        || format!("l={l:?} k={k:?}"),
                    );
                    for k2 in &ks {
                        let lhs = p.dot_of(l, &p.k.add(k, k2));
                        let mid = p.d_of(&p.k.mul(&p.k.mul(k, k2), &p.u_of(l)));
                        let rhs = p.l.add(&p.l.add(&p.dot_of(l, k), &mid), &p.dot_of(l, k2));
                        rep.check("dot-right-twisted", lhs == rhs, || {
                            format!("l={l:?} k={k:?} k'={k2:?}")
                        });
                        let lhs2 = p.dot_of(&p.dot_of(l, k), k2);
                        let rhs2 = p.dot_of(l, &p.k.mul(k, k2));
                        rep.check("dot-mult", lhs2 == rhs2, || {
                            format!("l={l:?} k={k:?} k'={k2:?}")
                        });
                    }
                }
            }
        }
        Pair::F(p) => {
            if let Err(e) = p.k.check_structure() {
                rep.check("K-ring", false, || e.clone());
            }
            if let Err(e) = p.l.check_structure() {
                rep.check("L-ring", false, || e.clone());
            }
            let ks = p.k_elements();
            let ls = p.l_elements();
            rep.check(
                "u-unital",
                p.u_of(p.l.one().unwrap()) == *p.k.one().unwrap(),
                || String::new(),
            );
            for l in &ls {
                rep.check(
                    "d-u",
                    p.d_of(&p.u_of(l)) == p.l.smul(2, l),
                    || format!("l={l:?}"),
                );
                rep.check(
                    "s-u",
                    p.s_of(&p.u_of(l)) == p.l.mul(l, l),
                    || format!("l={l:?}"),
                );
                for l2 in &ls {
                    rep.check(
                        "u-mult",
                        p.u_of(&p.l.mul(l, l2)) == p.k.mul(&p.u_of(l), &p.u_of(l2)),
                        || format!("l={l:?} l'={l2:?}"),
                    );
                }
            }
            for k in &ks {
                rep.check(
                    "u-d",
                    p.u_of(&p.d_of(k)) == p.k.smul(2, k),
                    || format!("k={k:?}"),
                );
                rep.check(
                    "u-s",
                    p.u_of(&p.s_of(k)) == p.k.mul(k, k),
                    || format!("k={k:?}"),
                );
                for l in &ls {
                    rep.check(
                        "d-scaling",
                        p.d_of(&p.k.mul(k, &p.u_of(l))) == p.l.mul(&p.d_of(k), l),
                        || format!("k={k:?} l={l:?}"),
                    );
                }
                for k2 in &ks {
                    let lhs = p.s_of(&p.k.add(k, k2));
                    let rhs = p
                        .l
                        .add(&p.l.add(&p.s_of(k), &p.d_of(&p.k.mul(k, k2))), &p.s_of(k2));
                    rep.check("s-sum", lhs == rhs, || format!("k={k:?} k'={k2:?}"));
                    rep.check(
                        "s-mult",
                        p.s_of(&p.k.mul(k, k2)) == p.l.mul(&p.s_of(k), &p.s_of(k2)),
                        || format!("k={k:?} k'={k2:?}"),
                    );
                }
            }
        }
    }
    rep
}

/// Abe admissibility of (𝔞, 𝔟) inside a unital commutative ring K:
/// 𝔞 an ideal, 2𝔞 + Σ_{a∈𝔞} K a² ≤ 𝔟 ≤ 𝔞, plus 𝔟k² ≤ 𝔟 (type C) or
/// 𝔟 an ideal (types B and F).
pub fn admissible(k: &Ring, a: &Subgroup, b: &Subgroup, kind: PairKind) -> bool {
    if !k.ideal_closure(&a.basis()).same_as(a) {
        return false;
    }
    if !b.is_subset_of(a) {
        return false;
    }
    let k_elems: Vec<RElt> = k.module().iter_all().collect();
    for x in a.elements(MAX_TABLE as usize) {
        if !b.contains(&k.smul(2, &x)) {
            return false;
        }
        let x2 = k.mul(&x, &x);
        for y in &k_elems {
            if !b.contains(&k.mul(y, &x2)) {
                return false;
            }
        }
    }
    match kind {
        PairKind::C => {
            for y in b.elements(MAX_TABLE as usize) {
                for x in &k_elems {
                    if !b.contains(&k.mul(&y, &k.mul(x, x))) {
                        return false;
                    }
                }
            }
            true
        }
        PairKind::B | PairKind::F => k.ideal_closure(&b.basis()).same_as(b),
    }
}

/// A crossed module of pairs δ: (𝔞, 𝔟) → (K, L), stored through its total
/// (semidirect) pair with the two projections and the section.
#[derive(Clone, Debug)]
pub struct CrossedPair {
    pub target: Pair,
    pub total: Pair,
    /// Coordinate maps on the K components.
    pub p1_k: Vec<RElt>,
    pub p2_k: Vec<RElt>,
    pub d_k: Vec<RElt>,
    /// Coordinate maps on the L components.
    pub p1_l: Vec<LElt>,
    pub p2_l: Vec<LElt>,
    pub d_l: Vec<LElt>,
}

impl CrossedPair {
    pub fn kind(&self) -> PairKind {
        self.target.kind()
    }

    /// Derived crossed pair of type B (for type-F inputs).
    pub fn as_b(&self) -> CrossedPair {
        let (Pair::F(t), Pair::F(tot)) = (&self.target, &self.total) else {
            panic!("as_b on a non-F crossed pair");
        };
        CrossedPair {
            target: Pair::B(t.as_b()),
            total: Pair::B(tot.as_b()),
            ..self.clone()
        }
    }

    /// Derived crossed pair of type C (for type-F inputs).
    pub fn as_c(&self) -> CrossedPair {
        let (Pair::F(t), Pair::F(tot)) = (&self.target, &self.total) else {
            panic!("as_c on a non-F crossed pair");
        };
        CrossedPair {
            target: Pair::C(t.as_c()),
            total: Pair::C(tot.as_c()),
            ..self.clone()
        }
    }
}

/// Pullback data: elements of the total K-part are pairs (u, v) ∈ K × K with
/// u − v ∈ 𝔞, coordinatized as (𝔞-coords, K-coords).
struct PullK<'a> {
    amod: SubCoords,
    kmod: &'a ZModule,
    joint: ZModule,
}

impl<'a> PullK<'a> {
    fn new(a: Subgroup, kmod: &'a ZModule) -> PullK<'a> {
        let amod = SubCoords::new(a);
        let joint = amod.module.concat(kmod);
        PullK { amod, kmod, joint }
    }

    fn split(&self, e: &[Coord]) -> (Vec<Coord>, Vec<Coord>) {
        let r = self.amod.module.rank();
        let a = self.amod.to_ambient(&e[..r]);
        let v = e[r..].to_vec();
        (self.kmod.add(&a, &v), v)
    }

    fn pack(&self, u: &[Coord], v: &[Coord]) -> Option<Vec<Coord>> {
        let diff = self.kmod.sub(u, v);
        let mut out = self.amod.from_ambient(&diff)?;
        out.extend_from_slice(v);
        Some(out)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CrossedPairError {
    #[error("subpair is not closed under {0}; admissibility fails")]
    NotClosed(&'static str),
    #[error("total pair fails axiom {0}: {1}")]
    TotalAxiom(String, String),
}

/// Build the crossed pair determined by subgroups 𝔞 ≤ K, 𝔟 ≤ L of a target
/// pair: the total pair is the pullback {(x, y) : x − y ∈ 𝔞} ⊆ (K,L)²,
/// which exists exactly when the subpair is admissible in the appropriate
/// sense. The identity crossed module is the case (𝔞, 𝔟) = (K, L).
pub fn crossed_pair(
    target: &Pair,
    a: Subgroup,
    b: Subgroup,
) -> Result<CrossedPair, CrossedPairError> {
    let pk = PullK::new(a, target.k_module());
    let pl = PullK::new(b, target.l_module());
    let total = match target {
        Pair::C(p) => {
            let k2 = pull_ring(&pk, &p.k).ok_or(CrossedPairError::NotClosed("K-multiplication"))?;
            let mut d = Vec::new();
            for i in 0..pk.joint.rank() {
                let mut e = pk.joint.zero();
                e[i] = 1;
                let (u, v) = pk.split(&e);
                let img = pl
                    .pack(&p.d_of(&u), &p.d_of(&v))
                    .ok_or(CrossedPairError::NotClosed("d"))?;
                d.push(img);
            }
            let mut uu = Vec::new();
            for i in 0..pl.joint.rank() {
                let mut e = pl.joint.zero();
                e[i] = 1;
                let (w, l) = pl.split(&e);
                let img = pk
                    .pack(&p.u_of(&w), &p.u_of(&l))
                    .ok_or(CrossedPairError::NotClosed("u"))?;
                uu.push(img);
            }
            let mut dot = HashMap::new();
            assert!(pl.joint.size() * pk.joint.size() <= MAX_TABLE);
            for le in pl.joint.iter_all() {
                let (w, l) = pl.split(&le);
                for ke in pk.joint.iter_all() {
                    let (x, v) = pk.split(&ke);
                    let img = pl
                        .pack(&p.dot_of(&w, &x), &p.dot_of(&l, &v))
                        .ok_or(CrossedPairError::NotClosed("dot"))?;
                    dot.insert((le.clone(), ke.clone()), img);
                }
            }
            Pair::C(PairC {
                k: k2,
                l: pl.joint.clone(),
                d,
                u: uu,
                dot,
            })
        }
        Pair::B(p) => {
            let l2 = pull_ring(&pl, &p.l).ok_or(CrossedPairError::NotClosed("L-multiplication"))?;
            let mut act = Vec::new();
            for i in 0..pl.joint.rank() {
                let mut el = pl.joint.zero();
                el[i] = 1;
                let (w, l) = pl.split(&el);
                let mut row = Vec::new();
                for j in 0..pk.joint.rank() {
                    let mut ek = pk.joint.zero();
                    ek[j] = 1;
                    let (x, v) = pk.split(&ek);
                    let img = pk
                        .pack(&p.act_apply(&w, &x), &p.act_apply(&l, &v))
                        .ok_or(CrossedPairError::NotClosed("module action"))?;
                    row.push(img);
                }
                act.push(row);
            }
            let mut s = HashMap::new();
            assert!(pk.joint.size() <= MAX_TABLE);
            for ke in pk.joint.iter_all() {
                let (x, v) = pk.split(&ke);
                let img = pl
                    .pack(&p.s_of(&x), &p.s_of(&v))
                    .ok_or(CrossedPairError::NotClosed("s"))?;
                s.insert(ke.clone(), img);
            }
            Pair::B(PairB {
                l: l2,
                k: pk.joint.clone(),
                act,
                s,
            })
        }
        Pair::F(p) => {
            let k2 = pull_ring(&pk, &p.k).ok_or(CrossedPairError::NotClosed("K-multiplication"))?;
            let l2 = pull_ring(&pl, &p.l).ok_or(CrossedPairError::NotClosed("L-multiplication"))?;
            let mut uu = Vec::new();
            for i in 0..pl.joint.rank() {
                let mut e = pl.joint.zero();
                e[i] = 1;
                let (w, l) = pl.split(&e);
                uu.push(
                    pk.pack(&p.u_of(&w), &p.u_of(&l))
                        .ok_or(CrossedPairError::NotClosed("u"))?,
                );
            }
            let mut d = Vec::new();
            for i in 0..pk.joint.rank() {
                let mut e = pk.joint.zero();
                e[i] = 1;
                let (x, v) = pk.split(&e);
                d.push(
                    pl.pack(&p.d_of(&x), &p.d_of(&v))
                        .ok_or(CrossedPairError::NotClosed("d"))?,
                );
            }
            let mut s = HashMap::new();
            assert!(pk.joint.size() <= MAX_TABLE);
            for ke in pk.joint.iter_all() {
                let (x, v) = pk.split(&ke);
                s.insert(
                    ke.clone(),
                    pl.pack(&p.s_of(&x), &p.s_of(&v))
                        .ok_or(CrossedPairError::NotClosed("s"))?,
                );
            }
            Pair::F(PairF {
                k: k2,
                l: l2,
                u: uu,
                d,
                s,
            })
        }
    };
    let rep = check_pair(&total);
    if let Some(f) = rep.failures.first() {
        return Err(CrossedPairError::TotalAxiom(f.axiom.clone(), f.witness.clone()));
    }
    // coordinate maps
    let arank = pk.amod.module.rank();
    let mut p1_k = Vec::new();
    let mut p2_k = Vec::new();
    for i in 0..pk.joint.rank() {
        let mut e = pk.joint.zero();
        e[i] = 1;
        let (u, v) = pk.split(&e);
        p1_k.push(u);
        p2_k.push(v);
    }
    let d_k = (0..target.k_module().rank())
        .map(|i| {
            let mut e = vec![0; arank + target.k_module().rank()];
            e[arank + i] = 1;
            e
        })
        .collect();
    let brank = pl.amod.module.rank();
    let mut p1_l = Vec::new();
    let mut p2_l = Vec::new();
    for i in 0..pl.joint.rank() {
        let mut e = pl.joint.zero();
        e[i] = 1;
        let (u, v) = pl.split(&e);
        p1_l.push(u);
        p2_l.push(v);
    }
    let d_l = (0..target.l_module().rank())
        .map(|i| {
            let mut e = vec![0; brank + target.l_module().rank()];
            e[brank + i] = 1;
            e
        })
        .collect();
    Ok(CrossedPair {
        target: target.clone(),
        total,
        p1_k,
        p2_k,
        d_k,
        p1_l,
        p2_l,
        d_l,
    })
}

/// The pullback ring on pairs (u, v) with u − v in the chosen subgroup.
fn pull_ring(pk: &PullK, k: &Ring) -> Option<Ring> {
    let n = pk.joint.rank();
    let mut mul = vec![vec![pk.joint.zero(); n]; n];
    let mut inv = Vec::new();
    for i in 0..n {
        let mut ei = pk.joint.zero();
        ei[i] = 1;
        let (ui, vi) = pk.split(&ei);
        inv.push(pk.pack(&k.involution(&ui), &k.involution(&vi))?);
        for j in 0..n {
            let mut ej = pk.joint.zero();
            ej[j] = 1;
            let (uj, vj) = pk.split(&ej);
            mul[i][j] = pk.pack(&k.mul(&ui, &uj), &k.mul(&vi, &vj))?;
        }
    }
    let one = k.one().and_then(|o| pk.pack(o, o));
    let labels = (0..n)
        .map(|i| {
            if i < pk.amod.module.rank() {
                format!("a{i}")
            } else {
                format!("k{}", i - pk.amod.module.rank())
            }
        })
        .collect();
    Some(Ring::new(pk.joint.clone(), labels, mul, inv, one))
}

/// The identity crossed module (K, L) → (K, L).
pub fn identity_crossed(target: &Pair) -> CrossedPair {
    let km = target.k_module();
    let lm = target.l_module();
    let a = Subgroup::from_gens(km, (0..km.rank()).map(|i| {
        let mut e = km.zero();
        e[i] = 1;
        e
    }));
    let b = Subgroup::from_gens(lm, (0..lm.rank()).map(|i| {
        let mut e = lm.zero();
        e[i] = 1;
        e
    }));
    crossed_pair(target, a, b).expect("identity crossed pair always exists")
}

/// Internal-category check: the composition m(x, y) = x − d(p₂ x) + y on
/// composable pairs must be a homomorphism for every pair operation. With
/// pullback-constructed totals this is the Peiffer condition.
pub fn check_crossed_pair(cp: &CrossedPair) -> PairReport {
    let mut rep = check_pair(&cp.total);
    let kmod = cp.total.k_module().clone();
    let lmod = cp.total.l_module().clone();
    let tk = cp.target.k_module().clone();
    let tl = cp.target.l_module().clone();
    // projections and section are additive by construction; check they are
    // pair homomorphisms on the K-multiplication / L-structure by sampling
    // all elements (sizes are tiny)
    let apply_k = |imgs: &Vec<RElt>, x: &[Coord]| apply_lin(&tk, imgs, x);
    let apply_l = |imgs: &Vec<LElt>, x: &[Coord]| apply_lin(&tl, imgs, x);
    match (&cp.total, &cp.target) {
        (Pair::C(tot), Pair::C(tgt)) => {
            for (name, pk, plm) in [
                ("p1", &cp.p1_k, &cp.p1_l),
                ("p2", &cp.p2_k, &cp.p2_l),
            ] {
                for x in kmod.iter_all() {
                    for y in kmod.iter_all() {
                        let lhs = apply_k(pk, &tot.k.mul(&x, &y));
                        let rhs = tgt.k.mul(&apply_k(pk, &x), &apply_k(pk, &y));
                        rep.check(&format!("{name}-multiplicative"), lhs == rhs, || {
                            format!("x={x:?} y={y:?}")
                        });
                    }
                    let lhs = apply_l(plm, &tot.d_of(&x));
                    let rhs = tgt.d_of(&apply_k(pk, &x));
                    rep.check(&format!("{name}-d"), lhs == rhs, || format!("x={x:?}"));
                }
                for l in lmod.iter_all() {
                    let lhs = apply_k(pk, &tot.u_of(&l));
                    let rhs = tgt.u_of(&apply_l(plm, &l));
                    rep.check(&format!("{name}-u"), lhs == rhs, || format!("l={l:?}"));
                    for x in kmod.iter_all() {
                        let lhs = apply_l(plm, &tot.dot_of(&l, &x));
                        let rhs = tgt.dot_of(&apply_l(plm, &l), &apply_k(pk, &x));
                        rep.check(&format!("{name}-dot"), lhs == rhs, || {
                            format!("l={l:?} x={x:?}")
                        });
                    }
                }
            }
            // composition homomorphism on composable pairs
            for x in kmod.iter_all() {
                for y in kmod.iter_all() {
                    if apply_k(&cp.p2_k, &x) != apply_k(&cp.p1_k, &y) {
                        continue;
                    }
                    for x2 in kmod.iter_all() {
                        for y2 in kmod.iter_all() {
                            if apply_k(&cp.p2_k, &x2) != apply_k(&cp.p1_k, &y2) {
                                continue;
                            }
                            let m = |a: &[Coord], b: &[Coord]| {
                                let mid = apply_lin(&kmod, &cp.d_k, &apply_k(&cp.p2_k, a));
                                kmod.add(&kmod.sub(a, &mid), b)
                            };
                            let lhs = m(&tot.k.mul(&x, &x2), &tot.k.mul(&y, &y2));
                            let rhs = tot.k.mul(&m(&x, &y), &m(&x2, &y2));
                            rep.check("peiffer-mult", lhs == rhs, || {
                                format!("x={x:?} y={y:?} x'={x2:?} y'={y2:?}")
                            });
                        }
                    }
                }
            }
        }
        _ => {
            // For B/F kinds the same projection checks run on the shared ops.
            for (name, pk, plm) in [
                ("p1", &cp.p1_k, &cp.p1_l),
                ("p2", &cp.p2_k, &cp.p2_l),
            ] {
                match (&cp.total, &cp.target) {
                    (Pair::B(tot), Pair::B(tgt)) => {
                        for x in kmod.iter_all() {
                            let lhs = apply_l(plm, &tot.s_of(&x));
                            let rhs = tgt.s_of(&apply_k(pk, &x));
                            rep.check(&format!("{name}-s"), lhs == rhs, || format!("x={x:?}"));
                        }
                        for l in lmod.iter_all() {
                            for x in kmod.iter_all() {
                                let lhs = apply_k(pk, &tot.act_apply(&l, &x));
                                let rhs = tgt.act_apply(&apply_l(plm, &l), &apply_k(pk, &x));
                                rep.check(&format!("{name}-act"), lhs == rhs, || {
                                    format!("l={l:?} x={x:?}")
                                });
                            }
                        }
                    }
                    (Pair::F(tot), Pair::F(tgt)) => {
                        for x in kmod.iter_all() {
                            rep.check(
                                &format!("{name}-s"),
                                apply_l(plm, &tot.s_of(&x)) == tgt.s_of(&apply_k(pk, &x)),
                                || format!("x={x:?}"),
                            );
                            rep.check(
                                &format!("{name}-d"),
                                apply_l(plm, &tot.d_of(&x)) == tgt.d_of(&apply_k(pk, &x)),
                                || format!("x={x:?}"),
                            );
                        }
                        for l in lmod.iter_all() {
                            rep.check(
                                &format!("{name}-u"),
                                apply_k(pk, &tot.u_of(&l)) == tgt.u_of(&apply_l(plm, &l)),
                                || format!("l={l:?}"),
                            );
                        }
                    }
                    _ => unreachable!("mismatched crossed pair kinds"),
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ff_pairs_are_valid() {
        for n in [2u8, 3, 4] {
            let k = Ring::zn(n);
            let f = ff(&k);
            assert!(check_pair(&Pair::F(f.clone())).ok(), "FF(Z/{n}) fails F axioms");
            assert!(check_pair(&Pair::B(f.as_b())).ok(), "FF(Z/{n}) fails B axioms");
            assert!(check_pair(&Pair::C(f.as_c())).ok(), "FF(Z/{n}) fails C axioms");
        }
    }

    #[test]
    fn corrupted_d_table_detected() {
        let k = Ring::zn(4);
        let f = ff(&k);
        let mut c = f.as_c();
        // d(k) = 2k becomes d(k) = k
        c.d = vec![vec![1]];
        let rep = check_pair(&Pair::C(c));
        assert!(!rep.ok());
        assert!(rep.failures.iter().any(|f| f.axiom.contains("u-d") || f.axiom.contains("d-u")));
    }

    #[test]
    fn admissible_examples_z4() {
        let k = Ring::zn(4);
        let m = k.module().clone();
        let a = Subgroup::from_gens(&m, vec![vec![2]]);
        let b0 = Subgroup::from_gens(&m, Vec::<Vec<Coord>>::new());
        let b2 = Subgroup::from_gens(&m, vec![vec![2]]);
        let full = Subgroup::from_gens(&m, vec![vec![1]]);
        assert!(admissible(&k, &a, &b0, PairKind::C));
        assert!(admissible(&k, &a, &b2, PairKind::B));
        assert!(admissible(&k, &a, &b2, PairKind::F));
        // 𝔟 ⊄ 𝔞 fails
        assert!(!admissible(&k, &a, &full, PairKind::C));
    }

    #[test]
    fn crossed_pair_admissible_and_identity() {
        let k = Ring::zn(4);
        let f = ff(&k);
        let m = k.module().clone();
        let a = Subgroup::from_gens(&m, vec![vec![2]]);
        let b = Subgroup::from_gens(&m, vec![vec![2]]);
        let cp = crossed_pair(&Pair::F(f.clone()), a, b).unwrap();
        assert!(check_crossed_pair(&cp).ok());
        assert_eq!(cp.total.k_module().size(), 8);
        let idc = identity_crossed(&Pair::C(f.as_c()));
        assert!(check_crossed_pair(&idc).ok());
        assert_eq!(idc.total.k_module().size(), 16);
    }

    #[test]
    fn crossed_pair_b0_type_c() {
        let k = Ring::zn(4);
        let f = ff(&k);
        let m = k.module().clone();
        let a = Subgroup::from_gens(&m, vec![vec![2]]);
        let b = Subgroup::from_gens(&m, Vec::<Vec<Coord>>::new());
        let cp = crossed_pair(&Pair::C(f.as_c()), a, b).unwrap();
        assert!(check_crossed_pair(&cp).ok());
        assert_eq!(cp.total.l_module().size(), 4);
        assert_eq!(cp.total.k_module().size(), 8);
    }
}

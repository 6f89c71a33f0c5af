//! Root systems of types BC, B, C and F4 with exact integer arithmetic.
//!
//! All coordinates are doubled so that the F4 half-sum roots stay integral;
//! squared lengths are then 4 / 8 / 16. Subsets are bitsets over the fixed
//! root order (height, then lexicographic), which is also the order used for
//! products over special subsets.

use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub enum SystemKind {
    BC,
    B,
    C,
    F,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemKind::BC => write!(f, "BC"),
            SystemKind::B => write!(f, "B"),
            SystemKind::C => write!(f, "C"),
            SystemKind::F => write!(f, "F"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub enum LengthClass {
    Ultrashort,
    Short,
    Long,
}

#[derive(Debug, thiserror::Error)]
pub enum RootError {
    #[error("unsupported system ({0}, rank {1})")]
    Unsupported(SystemKind, usize),
    #[error("subset is not a saturated subsystem")]
    NotSaturatedSubsystem,
    #[error("subset is not saturated special")]
    NotSaturatedSpecial,
    #[error("too many roots for the bitset representation")]
    TooLarge,
}

pub type RootIdx = usize;

/// Subsets are bitsets over root indices.
pub type RootSet = u128;

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: SystemKind,
    pub rank: usize,
    /// Doubled coordinates, sorted by (height, lex).
    roots: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, RootIdx>,
    /// Indices of the Bourbaki simple roots.
    simple: Vec<RootIdx>,
    neg: Vec<RootIdx>,
    class_of: Vec<LengthClass>,
}

fn sq_norm(c: &[i32]) -> i64 {
    c.iter().map(|&x| (x as i64) * (x as i64)).sum()
}

fn raw_roots(kind: SystemKind, rank: usize) -> Result<Vec<Vec<i32>>, RootError> {
    let l = rank;
    let mut out = Vec::new();
    let mut push = |v: Vec<i32>| out.push(v);
    match kind {
        SystemKind::BC | SystemKind::B | SystemKind::C => {
            if l < 1 {
                return Err(RootError::Unsupported(kind, l));
            }
            for i in 0..l {
                for j in (i + 1)..l {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut v = vec![0; l];
                        v[i] = 2 * si;
                        v[j] = 2 * sj;
                        push(v);
                    }
                }
            }
            for i in 0..l {
                for s in [1, -1] {
                    if kind != SystemKind::C {
                        let mut v = vec![0; l];
                        v[i] = 2 * s;
                        push(v);
                    }
                    if kind != SystemKind::B {
                        let mut v = vec![0; l];
                        v[i] = 4 * s;
                        push(v);
                    }
                }
            }
        }
        SystemKind::F => {
            if l != 4 {
                return Err(RootError::Unsupported(kind, l));
            }
            for i in 0..4 {
                for s in [1, -1] {
                    let mut v = vec![0; 4];
                    v[i] = 2 * s;
                    push(v);
                }
            }
            for i in 0..4 {
                for j in (i + 1)..4 {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut v = vec![0; 4];
                        v[i] = 2 * si;
                        v[j] = 2 * sj;
                        push(v);
                    }
                }
            }
            for mask in 0..16u32 {
                let v: Vec<i32> = (0..4)
                    .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                push(v);
            }
        }
    }
    Ok(out)
}

fn simple_coords(kind: SystemKind, rank: usize) -> Vec<Vec<i32>> {
    let l = rank;
    let mut simples = Vec::new();
    match kind {
        SystemKind::BC | SystemKind::B => {
            for i in 0..l - 1 {
                let mut v = vec![0; l];
                v[i] = 2;
                v[i + 1] = -2;
                simples.push(v);
            }
            let mut v = vec![0; l];
            v[l - 1] = 2;
            simples.push(v);
        }
        SystemKind::C => {
            for i in 0..l - 1 {
                let mut v = vec![0; l];
                v[i] = 2;
                v[i + 1] = -2;
                simples.push(v);
            }
            let mut v = vec![0; l];
            v[l - 1] = 4;
            simples.push(v);
        }
        SystemKind::F => {
            simples.push(vec![0, 2, -2, 0]);
            simples.push(vec![0, 0, 2, -2]);
            simples.push(vec![0, 0, 0, 2]);
            simples.push(vec![1, -1, -1, -1]);
        }
    }
    simples
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0i128;
    for (j, &top) in m[0].iter().enumerate() {
        if top == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        acc += s * top * det_i128(&minor);
    }
    acc
}

/// Exact integer functional whose value on a root is a fixed positive
/// multiple of its height over the given simple basis.
fn height_functional(simples: &[Vec<i32>]) -> Vec<i128> {
    // Solve M w = 𝟙 (rows of M are the simple roots) by Cramer, scaled by
    // det(M): w_i·det = det(M with column i replaced by 𝟙); sign-correct so
    // the multiple is positive.
    let n = simples.len();
    let m0: Vec<Vec<i128>> = simples
        .iter()
        .map(|s| s.iter().map(|&x| x as i128).collect())
        .collect();
    let d = det_i128(&m0);
    assert!(d != 0, "simple roots must be a basis");
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = m0.clone();
        for row in m.iter_mut() {
            row[i] = 1;
        }
        w.push(det_i128(&m) * d.signum());
    }
    w
}

fn height_key(hvec: &[i128], v: &[i32]) -> i128 {
    hvec.iter().zip(v).map(|(&w, &x)| w * x as i128).sum()
}

impl RootSystem {
    pub fn build(kind: SystemKind, rank: usize) -> Result<RootSystem, RootError> {
        let mut roots = raw_roots(kind, rank)?;
        if roots.len() > 128 {
            return Err(RootError::TooLarge);
        }
        let simples = simple_coords(kind, rank);
        let hvec = height_functional(&simples);
        roots.sort_by(|a, b| {
            let ha = height_key(&hvec, a);
            let hb = height_key(&hvec, b);
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let index: HashMap<Vec<i32>, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let neg = roots
            .iter()
            .map(|r| index[&r.iter().map(|&x| -x).collect::<Vec<_>>()])
            .collect();
        let class_of = roots
            .iter()
            .map(|r| match (kind, sq_norm(r)) {
                (SystemKind::BC, 4) => LengthClass::Ultrashort,
                (SystemKind::BC, 8) => LengthClass::Short,
                (SystemKind::BC, 16) => LengthClass::Long,
                (SystemKind::B, 4) => LengthClass::Short,
                (SystemKind::B, 8) => LengthClass::Long,
                (SystemKind::C, 8) => LengthClass::Short,
                (SystemKind::C, 16) => LengthClass::Long,
                (SystemKind::F, 4) => LengthClass::Short,
                (SystemKind::F, 8) => LengthClass::Long,
                _ => unreachable!("invalid root length"),
            })
            .collect();
        let simple = simples.iter().map(|s| index[s]).collect();
        Ok(RootSystem {
            kind,
            rank,
            roots,
            index,
            simple,
            neg,
            class_of,
        })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn coords(&self, i: RootIdx) -> &[i32] {
        &self.roots[i]
    }

    pub fn lookup(&self, coords: &[i32]) -> Option<RootIdx> {
        self.index.get(coords).copied()
    }

    pub fn neg_root(&self, i: RootIdx) -> RootIdx {
        self.neg[i]
    }

    pub fn class(&self, i: RootIdx) -> LengthClass {
        self.class_of[i]
    }

    pub fn simple_roots(&self) -> &[RootIdx] {
        &self.simple
    }

    pub fn sum(&self, a: RootIdx, b: RootIdx) -> Option<RootIdx> {
        let v: Vec<i32> = self.roots[a]
            .iter()
            .zip(&self.roots[b])
            .map(|(&x, &y)| x + y)
            .collect();
        self.lookup(&v)
    }

    pub fn double(&self, a: RootIdx) -> Option<RootIdx> {
        let v: Vec<i32> = self.roots[a].iter().map(|&x| 2 * x).collect();
        self.lookup(&v)
    }

    pub fn half(&self, a: RootIdx) -> Option<RootIdx> {
        if self.roots[a].iter().any(|&x| x % 2 != 0) {
            return None;
        }
        let v: Vec<i32> = self.roots[a].iter().map(|&x| x / 2).collect();
        self.lookup(&v)
    }

    pub fn inner(&self, a: RootIdx, b: RootIdx) -> i64 {
        self.roots[a]
            .iter()
            .zip(&self.roots[b])
            .map(|(&x, &y)| x as i64 * y as i64)
            .sum()
    }

    pub fn all(&self) -> RootSet {
        if self.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.len()) - 1
        }
    }

    pub fn iter_set(&self, s: RootSet) -> impl Iterator<Item = RootIdx> + '_ {
        (0..self.len()).filter(move |i| s >> i & 1 == 1)
    }

    pub fn neg_set(&self, s: RootSet) -> RootSet {
        let mut out = 0;
        for i in self.iter_set(s) {
            out |= 1 << self.neg[i];
        }
        out
    }

    pub fn is_closed(&self, s: RootSet) -> bool {
        for a in self.iter_set(s) {
            for b in self.iter_set(s) {
                if let Some(c) = self.sum(a, b) {
                    if s >> c & 1 == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_saturated(&self, s: RootSet) -> bool {
        if !self.is_closed(s) {
            return false;
        }
        for a in self.iter_set(s) {
            if let Some(h) = self.half(a) {
                if s >> h & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_special(&self, s: RootSet) -> bool {
        self.is_closed(s) && s & self.neg_set(s) == 0
    }

    /// Least saturated subset containing `s` (sum closure plus halving).
    pub fn saturate(&self, s: RootSet) -> RootSet {
        let mut cur = s;
        loop {
            let mut next = cur;
            for a in self.iter_set(cur) {
                for b in self.iter_set(cur) {
                    if let Some(c) = self.sum(a, b) {
                        next |= 1 << c;
                    }
                }
                if let Some(h) = self.half(a) {
                    next |= 1 << h;
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn saturate_roots(&self, roots: &[RootIdx]) -> RootSet {
        let mut s = 0;
        for &r in roots {
            s |= 1 << r;
        }
        self.saturate(s)
    }

    /// Extreme roots of a saturated special subset: indecomposable in Σ and,
    /// for ultrashort α, with 2α not a sum of two distinct roots of Σ.
    pub fn extreme_roots(&self, s: RootSet) -> Result<Vec<RootIdx>, RootError> {
        if !self.is_saturated(s) || !self.is_special(s) {
            return Err(RootError::NotSaturatedSpecial);
        }
        let members: Vec<RootIdx> = self.iter_set(s).collect();
        let mut out = Vec::new();
        'root: for &a in &members {
            for &x in &members {
                for &y in &members {
                    if self.sum(x, y) == Some(a) {
                        continue 'root;
                    }
                }
            }
            if self.class(a) == LengthClass::Ultrashort {
                if let Some(da) = self.double(a) {
                    for &x in &members {
                        for &y in &members {
                            if x != y && self.sum(x, y) == Some(da) {
                                continue 'root;
                            }
                        }
                    }
                }
            }
            out.push(a);
        }
        Ok(out)
    }

    /// All saturated special subsets (exhaustive; only viable for small
    /// systems such as BC₂).
    pub fn saturated_special_subsets(&self) -> Vec<RootSet> {
        assert!(self.len() <= 24, "exhaustive subset scan too large");
        let mut out = Vec::new();
        for s in 0..(1u128 << self.len()) {
            if self.is_special(s) && self.is_saturated(s) {
                out.push(s);
            }
        }
        out
    }

    /// Serialize a set of roots in the line format `kind rank : c1 c2 ... cl`.
    pub fn serialize_set(&self, s: RootSet) -> String {
        let mut out = String::new();
        for i in self.iter_set(s) {
            out.push_str(&format!("{} {} :", self.kind, self.rank));
            for c in self.coords(i) {
                out.push_str(&format!(" {c}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_set(&self, text: &str) -> Option<RootSet> {
        let mut s: RootSet = 0;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (head, tail) = line.split_once(':')?;
            let mut hp = head.split_whitespace();
            let kind = hp.next()?;
            let rank: usize = hp.next()?.parse().ok()?;
            if kind != self.kind.to_string() || rank != self.rank {
                return None;
            }
            let coords: Vec<i32> = tail
                .split_whitespace()
                .map(|t| t.parse().ok())
                .collect::<Option<_>>()?;
            s |= 1 << self.lookup(&coords)?;
        }
        Some(s)
    }
}

/// Signed axis: ±(i+1) denotes ±e_{i+1}; used for ultrashort bookkeeping
/// in BC systems.
pub type Axis = i32;

/// The ultrashort root e_a (doubled coords) for a signed axis.
pub fn axis_root(rank: usize, a: Axis) -> Vec<i32> {
    let mut v = vec![0; rank];
    v[(a.abs() - 1) as usize] = 2 * a.signum();
    v
}

/// Partial equivalence classes of ultrashort roots modulo a saturated
/// subsystem Ψ: a ∼ b iff e_a − e_b ∈ Ψ ∪ {0} with neither in Ψ.
pub fn equivalence_classes(sys: &RootSystem, psi: RootSet) -> Result<Vec<Vec<Axis>>, RootError> {
    assert_eq!(sys.kind, SystemKind::BC);
    if !sys.is_saturated(psi) || psi != sys.neg_set(psi) {
        return Err(RootError::NotSaturatedSubsystem);
    }
    let l = sys.rank as i32;
    let axes: Vec<Axis> = (1..=l).chain((1..=l).map(|i| -i)).collect();
    let in_psi = |a: Axis| {
        let r = sys.lookup(&axis_root(sys.rank, a)).unwrap();
        psi >> r & 1 == 1
    };
    let related = |a: Axis, b: Axis| {
        if in_psi(a) || in_psi(b) {
            return false;
        }
        if a == b {
            return true;
        }
        let va = axis_root(sys.rank, a);
        let vb = axis_root(sys.rank, b);
        let diff: Vec<i32> = va.iter().zip(&vb).map(|(&x, &y)| x - y).collect();
        if diff.iter().all(|&x| x == 0) {
            return true;
        }
        match sys.lookup(&diff) {
            Some(r) => psi >> r & 1 == 1,
            None => false,
        }
    };
    let mut classes: Vec<Vec<Axis>> = Vec::new();
    let mut done: Vec<Axis> = Vec::new();
    for &a in &axes {
        if in_psi(a) || done.contains(&a) {
            continue;
        }
        let mut cls: Vec<Axis> = axes.iter().copied().filter(|&b| related(a, b)).collect();
        cls.sort_by_key(|&x| (x.abs(), -x.signum()));
        for &b in &cls {
            done.push(b);
        }
        classes.push(cls);
    }
    classes.sort();
    Ok(classes)
}

/// A quotient BC_l / Ψ with its projection table.
#[derive(Clone, Debug)]
pub struct QuotientSystem {
    pub kernel: RootSet,
    pub quotient: RootSystem,
    /// Ambient root index → quotient root index (None on Ψ).
    pub proj: Vec<Option<RootIdx>>,
    /// For each quotient axis t (1-based), the ambient class of signed axes.
    pub classes: Vec<Vec<Axis>>,
}

pub fn quotient(sys: &RootSystem, psi: RootSet) -> Result<QuotientSystem, RootError> {
    assert_eq!(sys.kind, SystemKind::BC);
    if !sys.is_saturated(psi) || psi != sys.neg_set(psi) {
        return Err(RootError::NotSaturatedSubsystem);
    }
    let all_classes = equivalence_classes(sys, psi)?;
    // keep one class per opposite pair: the one whose smallest |axis| entry
    // is positive
    let mut chosen: Vec<Vec<Axis>> = Vec::new();
    for cls in &all_classes {
        let neg: Vec<Axis> = {
            let mut n: Vec<Axis> = cls.iter().map(|&a| -a).collect();
            n.sort_by_key(|&x| (x.abs(), -x.signum()));
            n
        };
        let key = cls.iter().map(|a| a.abs()).min().unwrap();
        let rep_positive = cls.iter().find(|a| a.abs() == key).unwrap() > &0;
        if rep_positive || !all_classes.contains(&neg) {
            chosen.push(cls.clone());
        }
    }
    chosen.sort_by_key(|cls| cls.iter().map(|a| a.abs()).min().unwrap());
    let new_rank = chosen.len();
    let quotient = RootSystem::build(SystemKind::BC, new_rank.max(1))?;
    if new_rank == 0 {
        // degenerate: everything collapses; represent with empty projection
        return Ok(QuotientSystem {
            kernel: psi,
            quotient: RootSystem::build(SystemKind::BC, 1)?,
            proj: vec![None; sys.len()],
            classes: chosen,
        });
    }
    let mut proj = vec![None; sys.len()];
    for i in 0..sys.len() {
        if psi >> i & 1 == 1 {
            continue;
        }
        let c = sys.coords(i);
        let img: Vec<i32> = chosen
            .iter()
            .map(|cls| {
                cls.iter()
                    .map(|&a| c[(a.abs() - 1) as usize] * a.signum())
                    .sum()
            })
            .collect();
        let idx = quotient
            .lookup(&img)
            .expect("projection of a non-kernel root must be a quotient root");
        proj[i] = Some(idx);
    }
    Ok(QuotientSystem {
        kernel: psi,
        quotient,
        proj,
        classes: chosen,
    })
}

impl QuotientSystem {
    /// Preimage in the ambient system of a set of quotient roots.
    pub fn preimage(&self, sys: &RootSystem, qset: RootSet) -> RootSet {
        let mut out = 0;
        for (i, p) in self.proj.iter().enumerate() {
            if let Some(q) = p {
                if qset >> *q & 1 == 1 {
                    out |= 1 << i;
                }
            }
        }
        let _ = sys;
        out
    }
}

/// An element of W(BC_l): a signed permutation of the axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    /// image[i] = signed axis that e_{i+1} maps to.
    pub image: Vec<Axis>,
}

impl SignedPerm {
    pub fn identity(rank: usize) -> SignedPerm {
        SignedPerm {
            image: (1..=rank as i32).collect(),
        }
    }

    pub fn apply_coords(&self, c: &[i32]) -> Vec<i32> {
        let mut out = vec![0; c.len()];
        for (i, &img) in self.image.iter().enumerate() {
            out[(img.abs() - 1) as usize] += c[i] * img.signum();
        }
        out
    }

    pub fn apply_axis(&self, a: Axis) -> Axis {
        let img = self.image[(a.abs() - 1) as usize];
        img * a.signum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(rank: usize) -> RootSystem {
        RootSystem::build(SystemKind::BC, rank).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(bc(1).len(), 4);
        assert_eq!(bc(2).len(), 12);
        assert_eq!(bc(3).len(), 24);
        let f = RootSystem::build(SystemKind::F, 4).unwrap();
        assert_eq!(f.len(), 48);
        let short = (0..f.len())
            .filter(|&i| f.class(i) == LengthClass::Short)
            .count();
        assert_eq!(short, 24);
        assert_eq!(RootSystem::build(SystemKind::B, 3).unwrap().len(), 18);
        assert_eq!(RootSystem::build(SystemKind::C, 3).unwrap().len(), 18);
        // enumeration oracle: BC_l has 2l² + 2l roots
        for l in 1..=5 {
            assert_eq!(bc(l).len(), 2 * l * l + 2 * l);
        }
    }

    #[test]
    fn negation_closure_and_us_doubling() {
        for sys in [
            bc(2),
            bc(3),
            RootSystem::build(SystemKind::F, 4).unwrap(),
            RootSystem::build(SystemKind::B, 3).unwrap(),
            RootSystem::build(SystemKind::C, 3).unwrap(),
        ] {
            for i in 0..sys.len() {
                assert_eq!(sys.neg_root(sys.neg_root(i)), i);
                if sys.kind == SystemKind::BC && sys.class(i) == LengthClass::Ultrashort {
                    assert!(sys.double(i).is_some());
                }
            }
        }
    }

    #[test]
    fn saturate_examples() {
        let s2 = bc(2);
        // ∅ stays empty
        assert_eq!(s2.saturate(0), 0);
        // {2e₁} saturates to {e₁, 2e₁}
        let long = s2.lookup(&[4, 0]).unwrap();
        let us = s2.lookup(&[2, 0]).unwrap();
        assert_eq!(s2.saturate(1 << long), (1 << long) | (1 << us));
        // {e₁−e₂, e₂−e₃} in BC₃ closes up with e₁−e₃
        let s3 = bc(3);
        let a = s3.lookup(&[2, -2, 0]).unwrap();
        let b = s3.lookup(&[0, 2, -2]).unwrap();
        let c = s3.lookup(&[2, 0, -2]).unwrap();
        assert_eq!(
            s3.saturate((1 << a) | (1 << b)),
            (1 << a) | (1 << b) | (1 << c)
        );
    }

    #[test]
    fn saturation_idempotent_monotone() {
        let sys = bc(2);
        for s in 0..(1u128 << sys.len()) {
            if s % 7 != 0 {
                continue; // sampled subsets keep the test fast
            }
            let sat = sys.saturate(s);
            assert_eq!(sys.saturate(sat), sat);
            assert_eq!(sat | s, sat);
            let bigger = sys.saturate(s | 1);
            assert_eq!(bigger | sat, bigger);
        }
    }

    #[test]
    fn extreme_roots_bc2_exhaustive() {
        let sys = bc(2);
        for s in sys.saturated_special_subsets() {
            if s == 0 {
                continue;
            }
            let ext = sys.extreme_roots(s).unwrap();
            assert!(!ext.is_empty(), "nonempty saturated special set lacks extreme root");
            for &a in &ext {
                let sub = s & !sys.saturate(1 << a);
                assert!(sys.is_saturated(sub) && sys.is_special(sub));
            }
        }
    }

    #[test]
    fn quotient_bc3_by_a1() {
        let sys = bc(3);
        // Ψ = ⟨±(e₃−e₂)⟩
        let d = sys.lookup(&[0, -2, 2]).unwrap();
        let psi = sys.saturate((1 << d) | (1 << sys.neg_root(d)));
        let q = quotient(&sys, psi).unwrap();
        assert_eq!(q.quotient.rank, 2);
        assert_eq!(q.quotient.len(), 12);
        // projection constant on fibers & total off Ψ
        for i in 0..sys.len() {
            assert_eq!(q.proj[i].is_none(), psi >> i & 1 == 1);
        }
        // preimage of a special subset is special
        for s in q.quotient.saturated_special_subsets() {
            let pre = q.preimage(&sys, s);
            assert!(sys.is_special(pre));
        }
    }

    #[test]
    fn eq_classes() {
        let sys = bc(2);
        // Ψ = ∅: four singleton classes
        let cls = equivalence_classes(&sys, 0).unwrap();
        assert_eq!(cls.len(), 4);
        // Ψ = ⟨±(e₂−e₁)⟩: {e₁,e₂} and {−e₁,−e₂}
        let d = sys.lookup(&[-2, 2]).unwrap();
        let psi = sys.saturate((1 << d) | (1 << sys.neg_root(d)));
        let cls = equivalence_classes(&sys, psi).unwrap();
        assert_eq!(cls.len(), 2);
        assert!(cls.contains(&vec![1, 2]));
        assert!(cls.contains(&vec![-1, -2]));
        // Ψ = ⟨±e₂⟩ excludes axis 2
        let us = sys.lookup(&[0, 2]).unwrap();
        let psi2 = sys.saturate((1 << us) | (1 << sys.neg_root(us)));
        let cls2 = equivalence_classes(&sys, psi2).unwrap();
        assert_eq!(cls2, vec![vec![-1], vec![1]]);
    }

    #[test]
    fn serialization_roundtrip() {
        let sys = bc(2);
        let s = sys.saturate_roots(&[sys.lookup(&[2, 0]).unwrap(), sys.lookup(&[-2, 2]).unwrap()]);
        let text = sys.serialize_set(s);
        assert_eq!(sys.parse_set(&text), Some(s));
    }
}

//! Finite (possibly non-unital) associative rings with involution, presented
//! by an additive basis and structure-constant tables.

use crate::zmod::{solve_combination, Coord, QuotientMap, Subgroup, ZModule};

pub type RElt = Vec<Coord>;

#[derive(Clone, Debug)]
pub struct Ring {
    module: ZModule,
    labels: Vec<String>,
    /// mul[i][j] = bᵢ·bⱼ
    mul: Vec<Vec<RElt>>,
    /// inv[i] = conjugate of bᵢ (extended additively)
    inv: Vec<RElt>,
    one: Option<RElt>,
}

impl Ring {
    pub fn new(
        module: ZModule,
        labels: Vec<String>,
        mul: Vec<Vec<RElt>>,
        inv: Vec<RElt>,
        one: Option<RElt>,
    ) -> Ring {
        let n = module.rank();
        assert_eq!(labels.len(), n);
        assert_eq!(mul.len(), n);
        assert!(mul.iter().all(|r| r.len() == n));
        assert_eq!(inv.len(), n);
        Ring {
            module,
            labels,
            mul,
            inv,
            one,
        }
    }

    /// The zero ring.
    pub fn zero_ring() -> Ring {
        Ring {
            module: ZModule::zero_module(),
            labels: Vec::new(),
            mul: Vec::new(),
            inv: Vec::new(),
            one: None,
        }
    }

    /// Z/n with the identity involution.
    pub fn zn(n: Coord) -> Ring {
        let module = ZModule::new(vec![n]);
        Ring {
            module,
            labels: vec!["1".into()],
            mul: vec![vec![vec![1]]],
            inv: vec![vec![1]],
            one: Some(vec![1]),
        }
    }

    /// Product of cyclic rings ∏ Z/nᵢ (componentwise ops, identity involution).
    pub fn zn_product(ns: &[Coord]) -> Ring {
        let module = ZModule::new(ns.to_vec());
        let k = ns.len();
        let mut mul = vec![vec![module.zero(); k]; k];
        let mut inv = Vec::with_capacity(k);
        for i in 0..k {
            let mut e = module.zero();
            e[i] = 1;
            mul[i][i] = e.clone();
            inv.push(e);
        }
        let one = vec![1; k];
        Ring {
            module,
            labels: (0..k).map(|i| format!("u{i}")).collect(),
            mul,
            inv,
            one: Some(one),
        }
    }

    pub fn module(&self) -> &ZModule {
        &self.module
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero(&self) -> RElt {
        self.module.zero()
    }

    pub fn is_zero(&self, a: &[Coord]) -> bool {
        self.module.is_zero(a)
    }

    pub fn one(&self) -> Option<&RElt> {
        self.one.as_ref()
    }

    pub fn add(&self, a: &[Coord], b: &[Coord]) -> RElt {
        self.module.add(a, b)
    }

    pub fn neg(&self, a: &[Coord]) -> RElt {
        self.module.neg(a)
    }

    pub fn sub(&self, a: &[Coord], b: &[Coord]) -> RElt {
        self.module.sub(a, b)
    }

    pub fn smul(&self, k: i64, a: &[Coord]) -> RElt {
        self.module.smul(k, a)
    }

    pub fn mul(&self, a: &[Coord], b: &[Coord]) -> RElt {
        let mut acc = self.module.zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = x as i64 * y as i64;
                let term = self.module.smul(c, &self.mul[i][j]);
                self.module.add_assign(&mut acc, &term);
            }
        }
        acc
    }

    pub fn involution(&self, a: &[Coord]) -> RElt {
        let mut acc = self.module.zero();
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                let term = self.module.smul(x as i64, &self.inv[i]);
                self.module.add_assign(&mut acc, &term);
            }
        }
        acc
    }

    pub fn basis_elt(&self, i: usize) -> RElt {
        let mut e = self.module.zero();
        e[i] = 1;
        e
    }

    /// All nonzero scalar multiples of basis elements; the spanning family
    /// used by structured exhaustive checks.
    pub fn pure_elements(&self) -> Vec<RElt> {
        let mut out = Vec::new();
        for (i, &m) in self.module.moduli().iter().enumerate() {
            for c in 1..m {
                let mut e = self.module.zero();
                e[i] = c;
                out.push(e);
            }
        }
        out
    }

    /// Decompose an element into pure (single-coordinate) terms, in slot order.
    pub fn pure_terms(&self, a: &[Coord]) -> Vec<RElt> {
        let mut out = Vec::new();
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                let mut e = self.module.zero();
                e[i] = x;
                out.push(e);
            }
        }
        out
    }

    pub fn render(&self, a: &[Coord]) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| {
                if x == 1 {
                    self.labels[i].clone()
                } else {
                    format!("{x}·{}", self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Structural sanity: associativity and the involution being an
    /// anti-automorphism of order two, checked on basis triples/pairs
    /// (complete by multiadditivity).
    pub fn check_structure(&self) -> Result<(), String> {
        let n = self.rank();
        for i in 0..n {
            let bi = self.basis_elt(i);
            if self.involution(&self.involution(&bi)) != bi {
                return Err(format!("involution not of order 2 at {}", self.labels[i]));
            }
            for j in 0..n {
                let bj = self.basis_elt(j);
                let lhs = self.involution(&self.mul[i][j]);
                let rhs = self.mul(&self.involution(&bj), &self.involution(&bi));
                if lhs != rhs {
                    return Err(format!(
                        "involution not anti-multiplicative at ({}, {})",
                        self.labels[i], self.labels[j]
                    ));
                }
                for k in 0..n {
                    let bk = self.basis_elt(k);
                    let lhs = self.mul(&self.mul[i][j].clone(), &bk);
                    let rhs = self.mul(&bi, &self.mul[j][k].clone());
                    if lhs != rhs {
                        return Err(format!(
                            "associativity fails at ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
        }
        if let Some(one) = &self.one {
            for i in 0..n {
                let b = self.basis_elt(i);
                if self.mul(one, &b) != b || self.mul(&b, one) != b {
                    return Err(format!("unit fails at {}", self.labels[i]));
                }
            }
        }
        Ok(())
    }

    pub fn is_idempotent(&self, e: &[Coord]) -> bool {
        self.mul(e, e) == e
    }

    /// Additive span of {x·f·y : x, y basis elements}.
    pub fn two_sided_span(&self, f: &[Coord]) -> Subgroup {
        let mut gens = Vec::new();
        for i in 0..self.rank() {
            let bi = self.basis_elt(i);
            let left = self.mul(&bi, f);
            for j in 0..self.rank() {
                let bj = self.basis_elt(j);
                gens.push(self.mul(&left, &bj));
            }
        }
        Subgroup::from_gens(&self.module, gens)
    }

    /// Two-sided ideal closure of a generating set.
    pub fn ideal_closure(&self, gens: &[RElt]) -> Subgroup {
        let mut sub = Subgroup::from_gens(&self.module, gens.to_vec());
        loop {
            let mut new_gens = sub.basis();
            let mut grew = false;
            for b in sub.basis() {
                for i in 0..self.rank() {
                    let e = self.basis_elt(i);
                    for prod in [self.mul(&e, &b), self.mul(&b, &e)] {
                        if !sub.contains(&prod) {
                            new_gens.push(prod);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return sub;
            }
            sub = Subgroup::from_gens(&self.module, new_gens);
        }
    }

    /// Quotient ring by an involution-invariant two-sided ideal.
    pub fn quotient(&self, ideal: &Subgroup) -> (Ring, QuotientMap) {
        for b in ideal.basis() {
            assert!(
                ideal.contains(&self.involution(&b)),
                "ideal not involution invariant"
            );
        }
        let qm = QuotientMap::new(&self.module, ideal);
        let qmod = qm.quotient().clone();
        let k = qmod.rank();
        let mut mul = vec![vec![qmod.zero(); k]; k];
        let mut inv = Vec::with_capacity(k);
        for i in 0..k {
            let mut qi = qmod.zero();
            qi[i] = 1;
            let li = qm.lift(&qi);
            inv.push(qm.project(&self.involution(&li)));
            for j in 0..k {
                let mut qj = qmod.zero();
                qj[j] = 1;
                let lj = qm.lift(&qj);
                mul[i][j] = qm.project(&self.mul(&li, &lj));
            }
        }
        let one = self.one.as_ref().map(|o| qm.project(o));
        let labels = (0..k).map(|i| format!("q{i}")).collect();
        (Ring::new(qmod, labels, mul, inv, one), qm)
    }

    /// Witness pairs (xₘ, yₘ) with Σ xₘ·yₘ = target, xₘ ∈ left·span,
    /// yₘ ∈ right·span, where the candidate products are xᵢ = a·bᵢ·c style
    /// generator lists supplied by the caller.
    pub fn product_decomposition(
        &self,
        pairs: &[(RElt, RElt)],
        target: &[Coord],
    ) -> Option<Vec<(RElt, RElt)>> {
        let prods: Vec<RElt> = pairs.iter().map(|(x, y)| self.mul(x, y)).collect();
        let coeffs = solve_combination(&self.module, &prods, target)?;
        let mut out = Vec::new();
        for (c, (x, y)) in coeffs.iter().zip(pairs) {
            let c = c.rem_euclid(self.module.size().min(u64::MAX as u128) as i64);
            if c != 0 {
                out.push((self.smul(c, x), y.clone()));
            }
        }
        Some(out)
    }
}

/// An additive map between rings given on basis elements, the carrier for
/// ring homomorphisms and projections.
#[derive(Clone, Debug)]
pub struct RingMap {
    pub images: Vec<RElt>,
}

impl RingMap {
    pub fn new(images: Vec<RElt>) -> RingMap {
        RingMap { images }
    }

    pub fn identity(r: &Ring) -> RingMap {
        RingMap {
            images: (0..r.rank()).map(|i| r.basis_elt(i)).collect(),
        }
    }

    pub fn apply(&self, target: &Ring, a: &[Coord]) -> RElt {
        let mut acc = target.zero();
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                let term = target.smul(x as i64, &self.images[i]);
                acc = target.add(&acc, &term);
            }
        }
        acc
    }

    /// Checks that the map is a homomorphism of rings with involution
    /// (multiplicativity and involution-compatibility on basis pairs).
    pub fn check_hom(&self, src: &Ring, dst: &Ring) -> Result<(), String> {
        for i in 0..src.rank() {
            let bi = src.basis_elt(i);
            let fi = self.apply(dst, &bi);
            if self.apply(dst, &src.involution(&bi)) != dst.involution(&fi) {
                return Err(format!("hom fails involution at basis {i}"));
            }
            for j in 0..src.rank() {
                let bj = src.basis_elt(j);
                let lhs = self.apply(dst, &src.mul(&bi, &bj));
                let rhs = dst.mul(&fi, &self.apply(dst, &bj));
                if lhs != rhs {
                    return Err(format!("hom fails multiplicativity at ({i}, {j})"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zn_ring_structure() {
        let r = Ring::zn(4);
        r.check_structure().unwrap();
        assert_eq!(r.mul(&[2], &[3]), vec![2]);
        assert_eq!(r.involution(&[3]), vec![3]);
    }

    #[test]
    fn product_ring() {
        let r = Ring::zn_product(&[2, 3]);
        r.check_structure().unwrap();
        assert_eq!(r.mul(&[1, 2], &[1, 2]), vec![1, 1]);
    }

    #[test]
    fn ideal_and_quotient() {
        let r = Ring::zn(4);
        let ideal = r.ideal_closure(&[vec![2]]);
        assert_eq!(ideal.size(), 2);
        let (q, qm) = r.quotient(&ideal);
        q.check_structure().unwrap();
        assert_eq!(q.module().size(), 2);
        assert_eq!(qm.project(&[2]), q.zero());
        assert_eq!(qm.project(&[3]), qm.project(&[1]));
    }

    #[test]
    fn two_sided_span_fullness() {
        // in Z/4: span of 2 is {0, 2}; 1 ∉ R·2·R
        let r = Ring::zn(4);
        let span = r.two_sided_span(&[2]);
        assert!(span.contains(&[2]));
        assert!(!span.contains(&[1]));
    }
}

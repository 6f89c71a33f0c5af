//! Axiom suites for odd form rings, hyperbolic families and crossed modules.
//!
//! Every check enumerates a structured instance domain exhaustively: pure
//! ring elements (single-coordinate multiples) and the Δ spanning family
//! (single-slot values, or the reduced generator set for Heisenberg-subgroup
//! representations). All structure maps are table extensions of their values
//! on these domains, so the structured pass is a complete table audit; on
//! top of it each multi-variable axiom is re-checked on seeded dense random
//! tuples up to the configured budget. Reports carry seed and budget so
//! failures replay exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ofa::{CrossedOfr, DeltaMap};
use crate::oddform::{Carriers, DElt, Delta, HyperbolicFamily, OddFormRing};
use crate::pairs::AxiomFailure;
use crate::ring::RElt;
use crate::zmod::{apply_lin, Coord, SubCoords, Subgroup};

#[derive(Clone, Debug, serde::Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instances: u64,
    pub failures: Vec<AxiomFailure>,
    pub seed: u64,
    pub budget: u64,
}

impl CheckReport {
    pub fn new(check: &str, seed: u64, budget: u64) -> CheckReport {
        CheckReport {
            check: check.into(),
            instances: 0,
            failures: Vec::new(),
            seed,
            budget,
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, axiom: &str, pass: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !pass && self.failures.iter().filter(|f| f.axiom == axiom).count() < 3 {
            self.failures.push(AxiomFailure {
                axiom: axiom.into(),
                witness: witness(),
            });
        }
    }
}

fn random_relt(ofr: &OddFormRing, rng: &mut ChaCha8Rng) -> RElt {
    ofr.ring
        .module()
        .moduli()
        .iter()
        .map(|&m| rng.gen_range(0..m as u16) as Coord)
        .collect()
}

fn random_delt(ofr: &OddFormRing, rng: &mut ChaCha8Rng) -> DElt {
    match &ofr.delta {
        Delta::Slotted(s) => s
            .module()
            .moduli()
            .iter()
            .map(|&m| rng.gen_range(0..m as u16) as Coord)
            .collect(),
        Delta::Special(_) => {
            // stay inside Δ: random word in the generating set
            let gens = ofr.delta_spanning();
            let mut acc = ofr.dzero();
            for _ in 0..4 {
                let g = &gens[rng.gen_range(0..gens.len())];
                let k = rng.gen_range(0..4);
                for _ in 0..k {
                    acc = ofr.dadd(&acc, g);
                }
            }
            acc
        }
    }
}

/// Exhaustive structured check of the odd form ring axioms, plus seeded
/// dense sampling of the multi-variable axioms.
pub fn check_axioms(ofr: &OddFormRing, budget: u64, seed: u64) -> CheckReport {
    let mut rep = CheckReport::new("axioms", seed, budget);
    let ring = &ofr.ring;
    let pures = ring.pure_elements();
    let span = ofr.delta_spanning();
    let rd = |e: &RElt| ring.render(e);
    let dd = |u: &DElt| ofr.render_delta(u);

    let mut run = |rep: &mut CheckReport, u: &DElt, v: Option<&DElt>, a: Option<&RElt>, b: Option<&RElt>| {
        match (v, a, b) {
            (Some(v), None, None) => {
                let comm = ofr.dsub(&ofr.dsub(&ofr.dadd(u, v), u), v);
                let rhs = ofr.phi(&ring.neg(&ring.mul(&ring.involution(&ofr.pi(u)), &ofr.pi(v))));
                rep.record("comm-phi", comm == rhs, || format!("u={} v={}", dd(u), dd(v)));
                let lhs = ofr.pi(&ofr.dadd(u, v));
                let rhs = ring.add(&ofr.pi(u), &ofr.pi(v));
                rep.record("pi-hom", lhs == rhs, || format!("u={} v={}", dd(u), dd(v)));
                let lhs = ofr.rho(&ofr.dadd(u, v));
                let rhs = ring.add(
                    &ring.sub(&ofr.rho(u), &ring.mul(&ring.involution(&ofr.pi(u)), &ofr.pi(v))),
                    &ofr.rho(v),
                );
                rep.record("rho-cocycle", lhs == rhs, || {
                    format!("u={} v={}", dd(u), dd(v))
                });
            }
            (None, Some(a), None) => {
                let ua = ofr.act(u, a);
                rep.record("pi-act", ofr.pi(&ua) == ring.mul(&ofr.pi(u), a), || {
                    format!("u={} a={}", dd(u), rd(a))
                });
                let rhs = ring.mul(&ring.mul(&ring.involution(a), &ofr.rho(u)), a);
                rep.record("rho-act", ofr.rho(&ua) == rhs, || {
                    format!("u={} a={}", dd(u), rd(a))
                });
            }
            (None, Some(a), Some(b)) => {
                let lhs = ofr.act(u, &ring.add(a, b));
                let corr = ofr.phi(&ring.mul(
                    &ring.mul(&ring.involution(b), &ofr.rho(u)),
                    a,
                ));
                let rhs = ofr.dadd(&ofr.dadd(&ofr.act(u, a), &corr), &ofr.act(u, b));
                rep.record("act-sum", lhs == rhs, || {
                    format!("u={} a={} b={}", dd(u), rd(a), rd(b))
                });
                let lhs = ofr.act(u, &ring.mul(a, b));
                let rhs = ofr.act(&ofr.act(u, a), b);
                rep.record("act-mul", lhs == rhs, || {
                    format!("u={} a={} b={}", dd(u), rd(a), rd(b))
                });
            }
            (Some(v), Some(a), None) => {
                let lhs = ofr.act(&ofr.dadd(u, v), a);
                let rhs = ofr.dadd(&ofr.act(u, a), &ofr.act(v, a));
                rep.record("act-hom", lhs == rhs, || {
                    format!("u={} v={} a={}", dd(u), dd(v), rd(a))
                });
            }
            _ => unreachable!(),
        }
    };

    // single-variable axioms on ring pures
    for a in &pures {
        let pa = ofr.phi(a);
        rep.record("pi-phi", ring.is_zero(&ofr.pi(&pa)), || rd(a));
        let rhs = ring.sub(a, &ring.involution(a));
        rep.record("rho-phi", ofr.rho(&pa) == rhs, || rd(a));
        let sym = ring.add(a, &ring.involution(a));
        rep.record("phi-weak-sym", ofr.is_dzero(&ofr.phi(&sym)), || rd(a));
        let norm = ring.mul(&ring.involution(a), a);
        rep.record("phi-weak-norm", ofr.is_dzero(&ofr.phi(&norm)), || rd(a));
        for b in &pures {
            let lhs = ofr.phi(&ring.add(a, b));
            let rhs = ofr.dadd(&ofr.phi(a), &ofr.phi(b));
            rep.record("phi-hom", lhs == rhs, || format!("a={} b={}", rd(a), rd(b)));
            let arg = ring.mul(&ring.mul(&ring.involution(a), b), a);
            let lhs = ofr.phi(&arg);
            let rhs = ofr.act(&ofr.phi(b), a);
            rep.record("phi-conj", lhs == rhs, || format!("a={} b={}", rd(a), rd(b)));
        }
    }
    // delta-level axioms on the spanning family
    for u in &span {
        let p = ofr.pi(u);
        let r = ofr.rho(u);
        let lhs = ring.add(
            &ring.add(&ring.involution(&r), &ring.mul(&ring.involution(&p), &p)),
            &r,
        );
        rep.record("rho-sym", ring.is_zero(&lhs), || dd(u));
        rep.record("act-zero", ofr.is_dzero(&ofr.act(u, &ring.zero())), || dd(u));
        if ofr.unital {
            let one = ring.one().unwrap().clone();
            rep.record("act-one", ofr.act(u, &one) == *u, || dd(u));
        }
        if let Delta::Special(_) = ofr.delta {
            for i in 0..ring.rank() {
                let b = ring.basis_elt(i);
                rep.record("delta-act-closed", ofr.delta_contains(&ofr.act(u, &b)), || {
                    format!("u={} b={}", dd(u), rd(&b))
                });
            }
        }
        for v in &span {
            run(&mut rep, u, Some(v), None, None);
            for a in &pures {
                run(&mut rep, u, Some(v), Some(a), None);
            }
        }
        for a in &pures {
            run(&mut rep, u, None, Some(a), None);
            for b in &pures {
                run(&mut rep, u, None, Some(a), Some(b));
            }
        }
    }
    if let Delta::Special(_) = ofr.delta {
        for i in 0..ring.rank() {
            let b = ring.basis_elt(i);
            rep.record("phi-in-delta", ofr.delta_contains(&ofr.phi(&b)), || rd(&b));
        }
    }
    // dense sampled supplement
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dense = budget.min(2000);
    for _ in 0..dense {
        let u = random_delt(ofr, &mut rng);
        let v = random_delt(ofr, &mut rng);
        let a = random_relt(ofr, &mut rng);
        let b = random_relt(ofr, &mut rng);
        run(&mut rep, &u, Some(&v), None, None);
        run(&mut rep, &u, None, Some(&a), None);
        run(&mut rep, &u, None, Some(&a), Some(&b));
        run(&mut rep, &u, Some(&v), Some(&a), None);
        let arg = ring.mul(&ring.mul(&ring.involution(&a), &b), &a);
        rep.record("phi-conj", ofr.phi(&arg) == ofr.act(&ofr.phi(&b), &a), || {
            format!("a={} b={}", rd(&a), rd(&b))
        });
    }
    rep
}

/// Check the strong orthogonal hyperbolic family conditions, including the
/// fullness condition e_i ∈ R e_j R by exact span membership.
pub fn check_family(ofr: &OddFormRing, fam: &HyperbolicFamily) -> CheckReport {
    let mut rep = CheckReport::new("family", 0, 0);
    let ring = &ofr.ring;
    let l = fam.rank() as i32;
    let axes: Vec<i32> = (1..=l).chain((1..=l).map(|x| -x)).collect();
    for &i in &axes {
        let e = fam.e(i);
        let q = fam.q(i);
        rep.record("e-idempotent", ring.is_idempotent(e), || format!("i={i}"));
        rep.record(
            "e-conjugate",
            ring.involution(fam.e(-i)) == *e,
            || format!("i={i}"),
        );
        rep.record("pi-q", ofr.pi(q) == *e, || format!("i={i}"));
        rep.record("rho-q", ring.is_zero(&ofr.rho(q)), || format!("i={i}"));
        rep.record("q-column", ofr.act(q, e) == *q, || format!("i={i}"));
        rep.record("q-in-delta", ofr.delta_contains(q), || format!("i={i}"));
        rep.record(
            "e-orthogonal-pair",
            ring.is_zero(&ring.mul(fam.e(i), fam.e(-i))),
            || format!("i={i}"),
        );
    }
    for i in 1..=l {
        for j in 1..=l {
            if i != j {
                let ei = ring.add(fam.e(i), fam.e(-i));
                let ej = ring.add(fam.e(j), fam.e(-j));
                rep.record(
                    "e-abs-orthogonal",
                    ring.is_zero(&ring.mul(&ei, &ej)),
                    || format!("i={i} j={j}"),
                );
            }
        }
    }
    for &i in &axes {
        for &j in &axes {
            let span = ring.two_sided_span(fam.e(j));
            rep.record("fullness", span.contains(fam.e(i)), || format!("i={i} j={j}"));
        }
    }
    rep
}

/// Peirce-component identities S_ij R_jk = S_ik and
/// Θ⁰_i · R_ij ∔ φ(S_{−j,j}) = Θ⁰_j for distinct index pairs.
pub fn check_peirce(ofr: &OddFormRing, fam: &HyperbolicFamily) -> CheckReport {
    let mut rep = CheckReport::new("peirce", 0, 0);
    let carriers = Carriers::new(ofr, fam);
    let l = fam.rank() as i32;
    let axes: Vec<i32> = (1..=l).chain((1..=l).map(|x| -x)).collect();
    for &i in &axes {
        for &j in &axes {
            if i == j {
                continue;
            }
            for &k in &axes {
                if k == i || k == j {
                    continue;
                }
                let sij = carriers.s_ij(i, j);
                let rjk = carriers.s_ij(j, k);
                let gens: Vec<RElt> = sij
                    .iter()
                    .flat_map(|a| rjk.iter().map(move |b| ofr.ring.mul(a, b)))
                    .collect();
                let prod = Subgroup::from_gens(ofr.ring.module(), gens);
                let sik = Subgroup::from_gens(ofr.ring.module(), carriers.s_ij(i, k));
                rep.record("sij-rjk", prod.same_as(&sik), || format!("i={i} j={j} k={k}"));
            }
            // Θ⁰_i·R_ij ∔ φ(S_{−j,j}) = Θ⁰_j
            let t0i = carriers.theta0(i);
            let rij = carriers.s_ij(i, j);
            let smjj = carriers.s_ij(-j, j);
            let mut lhs: Vec<DElt> = Vec::new();
            for u in &t0i {
                for r in &rij {
                    for s in &smjj {
                        lhs.push(ofr.dadd(&ofr.act(u, r), &ofr.phi(s)));
                    }
                }
            }
            lhs.sort();
            lhs.dedup();
            let rhs = carriers.theta0(j);
            rep.record("theta0-transfer", lhs == rhs, || format!("i={i} j={j}"));
        }
    }
    rep
}

/// The diagonal-group membership predicate.
pub fn diag_membership(ofr: &OddFormRing, fam: &HyperbolicFamily, g: &DElt) -> bool {
    let l = fam.rank() as i32;
    let pgc = ofr.ring.involution(&ofr.pi(g));
    for a in (1..=l).chain((1..=l).map(|x| -x)) {
        let e = fam.e(a);
        let t1 = ofr.act(g, &ofr.ring.mul(e, &pgc));
        let t2 = ofr.act(fam.q(a), &pgc);
        let t3 = ofr.act(g, e);
        let sum = ofr.dadd(&ofr.dadd(&t1, &t2), &t3);
        if !ofr.is_dzero(&sum) {
            return false;
        }
    }
    true
}

/// Kernel projection u ↦ u ∸ d(p₂(u)): a canonical retraction onto Θ.
pub fn kernel_project(cm: &CrossedOfr, u: &DElt) -> DElt {
    let p2 = cm.p2_d.apply(&cm.target, u);
    let back = cm.d_d.apply(&cm.total, &p2);
    cm.total.dsub(u, &back)
}

/// Spanning family for the kernel Θ of a crossed module.
pub fn theta_spanning(cm: &CrossedOfr) -> Vec<DElt> {
    let mut out: Vec<DElt> = cm
        .total
        .delta_spanning()
        .iter()
        .map(|u| kernel_project(cm, u))
        .filter(|u| !cm.total.is_dzero(u))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Equivariance of δ and the Peiffer identities of a crossed module,
/// checked on structured domains plus seeded dense samples.
pub fn check_crossed(cm: &CrossedOfr, budget: u64, seed: u64) -> CheckReport {
    let mut rep = CheckReport::new("crossed", seed, budget);
    let t = &cm.total;
    let ring = &t.ring;
    // S spanning: pure multiples of the kernel subgroup basis
    let mut s_span: Vec<RElt> = Vec::new();
    for b in cm.kernel_ring.basis() {
        let o = ring.module().order_of(&b);
        for c in 1..o {
            s_span.push(ring.smul(c as i64, &b));
        }
    }
    let th_span = theta_spanning(cm);
    let r_pures: Vec<RElt> = cm
        .target
        .ring
        .pure_elements()
        .iter()
        .map(|r| cm.d_ring(r))
        .collect();
    let rd = |e: &RElt| ring.render(e);
    let dd = |u: &DElt| t.render_delta(u);

    let mut run_ring = |rep: &mut CheckReport, a: &RElt, b: &RElt| {
        // Peiffer: ab = δ(a)b = aδ(b)
        let ab = ring.mul(a, b);
        let da = cm.delta_r(a);
        let db = cm.delta_r(b);
        rep.record("peiffer-ring-left", ab == ring.mul(&da, b), || {
            format!("a={} b={}", rd(a), rd(b))
        });
        rep.record("peiffer-ring-right", ab == ring.mul(a, &db), || {
            format!("a={} b={}", rd(a), rd(b))
        });
        // δ multiplicative
        rep.record(
            "delta-mult",
            cm.delta_r(&ab) == ring.mul(&da, &db),
            || format!("a={} b={}", rd(a), rd(b)),
        );
    };
    for a in &s_span {
        for b in &s_span {
            run_ring(&mut rep, a, b);
        }
        // δ compatible with φ, involution
        let lhs = cm.delta_d(&t.phi(a));
        let rhs = t.phi(&cm.delta_r(a));
        rep.record("delta-phi", lhs == rhs, || rd(a));
        let lhs = cm.delta_r(&ring.involution(a));
        let rhs = ring.involution(&cm.delta_r(a));
        rep.record("delta-involution", lhs == rhs, || rd(a));
    }
    let mut run_theta = |rep: &mut CheckReport, u: &DElt, a: &RElt| {
        // Peiffer: u·a = δ(u)·a for u ∈ Θ, a ∈ S
        let ua = t.act(u, a);
        let dua = t.act(&cm.delta_d(u), a);
        rep.record("peiffer-theta-left", ua == dua, || {
            format!("u={} a={}", dd(u), rd(a))
        });
        let uda = t.act(u, &cm.delta_r(a));
        rep.record("peiffer-theta-right", ua == uda, || {
            format!("u={} a={}", dd(u), rd(a))
        });
    };
    for u in &th_span {
        rep.record("theta-in-kernel", cm.in_kernel_delta(u), || dd(u));
        for a in &s_span {
            run_theta(&mut rep, u, a);
        }
        // δ equivariance for the R-action and π, ρ
        for r in &r_pures {
            let lhs = cm.delta_d(&t.act(u, r));
            let rhs = t.act(&cm.delta_d(u), r);
            rep.record("delta-equivariant", lhs == rhs, || {
                format!("u={} r={}", dd(u), rd(r))
            });
        }
        let lhs = t.pi(&cm.delta_d(u));
        let rhs = cm.delta_r(&t.pi(u));
        rep.record("delta-pi", lhs == rhs, || dd(u));
        let lhs = t.rho(&cm.delta_d(u));
        let rhs = cm.delta_r(&t.rho(u));
        rep.record("delta-rho", lhs == rhs, || dd(u));
    }
    // dense samples
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dense = budget.min(1000);
    let krank = cm.kernel_ring.basis().len();
    for _ in 0..dense {
        if krank == 0 {
            break;
        }
        let mut a = ring.zero();
        for b in cm.kernel_ring.basis() {
            let c = rng.gen_range(0..4i64);
            a = ring.add(&a, &ring.smul(c, &b));
        }
        let mut b = ring.zero();
        for bb in cm.kernel_ring.basis() {
            let c = rng.gen_range(0..4i64);
            b = ring.add(&b, &ring.smul(c, &bb));
        }
        run_ring(&mut rep, &a, &b);
        let u = kernel_project(cm, &random_delt(t, &mut rng));
        run_theta(&mut rep, &u, &a);
    }
    rep
}

/// Rebuild the semidirect product from the crossed module's action tables
/// (coordinate change kernel ⊕ section-image) and verify it reproduces the
/// total object; slotted representation only.
pub fn semidirect(cm: &CrossedOfr) -> Result<OddFormRing, String> {
    let t = &cm.total;
    let Delta::Slotted(_) = t.delta else {
        return Err("semidirect rebuild requires a slotted total".into());
    };
    // module: kernel coordinates followed by target coordinates
    let sc = SubCoords::new(cm.kernel_ring.clone());
    let rmod = cm.target.ring.module().clone();
    let joint = sc.module.concat(&rmod);
    let embed = |e: &[Coord]| -> RElt {
        let s = sc.to_ambient(&e[..sc.module.rank()]);
        let r = cm.d_ring(&e[sc.module.rank()..]);
        t.ring.add(&s, &r)
    };
    let split = |x: &RElt| -> Option<Vec<Coord>> {
        let r = cm.p2_ring(x);
        let s = t.ring.sub(x, &cm.d_ring(&r));
        let mut out = sc.from_ambient(&s)?;
        out.extend(r);
        Some(out)
    };
    let n = joint.rank();
    let mut mul = vec![vec![joint.zero(); n]; n];
    let mut inv = Vec::with_capacity(n);
    for i in 0..n {
        let mut ei = joint.zero();
        ei[i] = 1;
        let xi = embed(&ei);
        inv.push(split(&t.ring.involution(&xi)).ok_or("involution leaves carrier")?);
        for j in 0..n {
            let mut ej = joint.zero();
            ej[j] = 1;
            let xj = embed(&ej);
            mul[i][j] = split(&t.ring.mul(&xi, &xj)).ok_or("product leaves carrier")?;
        }
    }
    let one = t.ring.one().and_then(|o| split(o));
    let labels = (0..n)
        .map(|i| {
            if i < sc.module.rank() {
                format!("s{i}")
            } else {
                format!("r{}", i - sc.module.rank())
            }
        })
        .collect();
    let ring = crate::ring::Ring::new(joint.clone(), labels, mul, inv, one);
    ring.check_structure()?;
    // Δ: keep the total's slotted delta but recoordinatize π, ρ and actions
    // through the same split; since the slotted coordinates already decompose
    // into kernel and section parts, reuse the total Δ with the new ring.
    let Delta::Slotted(sd) = &t.delta else { unreachable!() };
    let mut coords = Vec::new();
    for c in sd.coords() {
        coords.push(crate::oddform::SlotCoord {
            modulus: c.modulus,
            central: c.central,
            pi: split(&c.pi).ok_or("pi leaves carrier")?,
            rho: split(&c.rho).ok_or("rho leaves carrier")?,
        });
    }
    let mut phi = Vec::new();
    for i in 0..n {
        let mut e = joint.zero();
        e[i] = 1;
        phi.push(t.phi(&embed(&e)));
    }
    let dmod = sd.module().clone();
    let mut act = Vec::new();
    for c in 0..dmod.rank() {
        let mut g = dmod.zero();
        g[c] = 1;
        let mut row = Vec::new();
        for i in 0..n {
            let mut e = joint.zero();
            e[i] = 1;
            row.push(t.act(&g, &embed(&e)));
        }
        act.push(row);
    }
    let sd2 = crate::oddform::SlottedDelta::new(&ring, coords, phi, act);
    Ok(OddFormRing {
        ring,
        delta: Delta::Slotted(sd2),
        unital: t.unital,
    })
}

/// Check that δ of the kernel ring part lands where the pair-level maps say,
/// and that p₁/p₂ are ring homomorphisms (used by construction tests).
pub fn check_projections(cm: &CrossedOfr) -> CheckReport {
    let mut rep = CheckReport::new("projections", 0, 0);
    let t = &cm.total;
    for i in 0..t.ring.rank() {
        let bi = t.ring.basis_elt(i);
        for j in 0..t.ring.rank() {
            let bj = t.ring.basis_elt(j);
            let prod = t.ring.mul(&bi, &bj);
            for (name, p) in [("p1", &cm.p1_r), ("p2", &cm.p2_r)] {
                let ap = |x: &RElt| apply_lin(cm.target.ring.module(), p, x);
                rep.record(
                    &format!("{name}-ring-hom"),
                    ap(&prod) == cm.target.ring.mul(&ap(&bi), &ap(&bj)),
                    || format!("i={i} j={j}"),
                );
            }
        }
    }
    for i in 0..cm.target.ring.rank() {
        let bi = cm.target.ring.basis_elt(i);
        let e = cm.d_ring(&bi);
        rep.record("p2-section", cm.p2_ring(&e) == bi, || format!("i={i}"));
        rep.record("p1-section", cm.p1_ring(&e) == bi, || format!("i={i}"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ofa::{crossed_ofasymp, crossed_ofaorth, ofaorth, ofasymp};
    use crate::pairs::{crossed_pair, ff, identity_crossed, Pair};
    use crate::ring::Ring;
    use crate::zmod::Subgroup;

    #[test]
    fn axioms_pass_small_symplectic() {
        let pair = ff(&Ring::zn(2)).as_c();
        let sp = ofasymp(2, &pair);
        let rep = check_axioms(&sp.ofr, 500, 7);
        assert!(rep.ok(), "failures: {:?}", rep.failures);
        let fam = check_family(&sp.ofr, &sp.family);
        assert!(fam.ok(), "failures: {:?}", fam.failures);
    }

    #[test]
    fn axioms_pass_small_orthogonal() {
        let pair = ff(&Ring::zn(2)).as_b();
        let o = ofaorth(1, &pair);
        let rep = check_axioms(&o.ofr, 500, 7);
        assert!(rep.ok(), "failures: {:?}", rep.failures);
        let fam = check_family(&o.ofr, &o.family);
        assert!(fam.ok(), "failures: {:?}", fam.failures);
    }

    #[test]
    fn corrupted_rho_detected() {
        let pair = ff(&Ring::zn(2)).as_c();
        let sp = ofasymp(2, &pair);
        let mut ofr = sp.ofr;
        // corrupt a ρ table entry on a v-coordinate
        if let Delta::Slotted(sd) = &mut ofr.delta {
            let idx = sp.layout.v_block[&1];
            sd.corrupt_rho(idx, sp.layout.r_elt(1, -1, &[1]));
        }
        let rep = check_axioms(&ofr, 200, 7);
        assert!(!rep.ok());
        assert!(
            rep.failures
                .iter()
                .any(|f| f.axiom.starts_with("rho") || f.axiom.starts_with("act")),
            "unexpected failures: {:?}",
            rep.failures
        );
    }

    #[test]
    fn zero_odd_form_ring_passes() {
        let ofr = OddFormRing {
            ring: Ring::zero_ring(),
            delta: Delta::Slotted(crate::oddform::SlottedDelta::new(
                &Ring::zero_ring(),
                vec![],
                vec![],
                vec![],
            )),
            unital: false,
        };
        assert!(check_axioms(&ofr, 10, 1).ok());
    }

    #[test]
    fn crossed_identity_passes() {
        let pair = ff(&Ring::zn(2)).as_c();
        let idc = identity_crossed(&Pair::C(pair));
        let cm = crossed_ofasymp(&idc, 2);
        assert!(check_projections(&cm).ok());
        let rep = check_crossed(&cm, 200, 3);
        assert!(rep.ok(), "failures: {:?}", rep.failures);
        let rep2 = check_axioms(&cm.total, 200, 3);
        assert!(rep2.ok(), "failures: {:?}", rep2.failures);
    }

    #[test]
    fn crossed_admissible_z4_passes() {
        let k = Ring::zn(4);
        let f = ff(&k);
        let m = k.module().clone();
        let a = Subgroup::from_gens(&m, vec![vec![2]]);
        let b = Subgroup::from_gens(&m, Vec::<Vec<u8>>::new());
        let cp = crossed_pair(&Pair::C(f.as_c()), a, b).unwrap();
        let cm = crossed_ofasymp(&cp, 2);
        let rep = check_crossed(&cm, 200, 3);
        assert!(rep.ok(), "failures: {:?}", rep.failures);
    }

    #[test]
    fn crossed_orthogonal_z4_passes() {
        let k = Ring::zn(4);
        let f = ff(&k);
        let m = k.module().clone();
        let a = Subgroup::from_gens(&m, vec![vec![2]]);
        let b = Subgroup::from_gens(&m, vec![vec![2]]);
        let cp = crossed_pair(&Pair::B(f.as_b()), a, b).unwrap();
        let cm = crossed_ofaorth(&cp, 1).unwrap();
        let rep = check_crossed(&cm, 100, 3);
        assert!(rep.ok(), "failures: {:?}", rep.failures);
        let rep2 = check_axioms(&cm.total, 100, 3);
        assert!(rep2.ok(), "failures: {:?}", rep2.failures);
    }

    #[test]
    fn peirce_identities_symplectic() {
        let pair = ff(&Ring::zn(2)).as_c();
        let sp = ofasymp(2, &pair);
        let rep = check_peirce(&sp.ofr, &sp.family);
        assert!(rep.ok(), "failures: {:?}", rep.failures);
    }

    #[test]
    fn semidirect_rebuild_matches() {
        let pair = ff(&Ring::zn(2)).as_c();
        let idc = identity_crossed(&Pair::C(pair));
        let cm = crossed_ofasymp(&idc, 1);
        let sd = semidirect(&cm).unwrap();
        assert_eq!(sd.ring.module().size(), cm.total.ring.module().size());
        let rep = check_axioms(&sd, 100, 5);
        assert!(rep.ok(), "failures: {:?}", rep.failures);
    }

    #[test]
    fn diag_identity_is_diagonal() {
        let pair = ff(&Ring::zn(3)).as_c();
        let sp = ofasymp(2, &pair);
        assert!(diag_membership(&sp.ofr, &sp.family, &sp.ofr.u_one()));
    }
}

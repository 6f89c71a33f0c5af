use std::time::Instant;
use steinberg_groups::checks::*;
use steinberg_groups::ofa::*;
use steinberg_groups::pairs::*;
use steinberg_groups::ring::Ring;

fn main() {
    for (n, l) in [(2u8, 2usize), (2, 3), (3, 3)] {
        let t0 = Instant::now();
        let pair = ff(&Ring::zn(n)).as_c();
        let sp = ofasymp(l, &pair);
        let t1 = Instant::now();
        let rep = check_axioms(&sp.ofr, 2000, 7);
        let t2 = Instant::now();
        let famr = check_family(&sp.ofr, &sp.family);
        let t3 = Instant::now();
        println!(
            "ofasymp({}; Z/{}) build {:?} axioms {:?} ({} inst, ok={}) family {:?} (ok={})",
            2 * l, n, t1 - t0, t2 - t1, rep.instances, rep.ok(), t3 - t2, famr.ok()
        );
    }
    for (n, l) in [(2u8, 1usize), (2, 2), (2, 3)] {
        let t0 = Instant::now();
        let pair = ff(&Ring::zn(n)).as_b();
        let o = ofaorth(l, &pair);
        let t1 = Instant::now();
        let rep = check_axioms(&o.ofr, 2000, 7);
        let t2 = Instant::now();
        let famr = check_family(&o.ofr, &o.family);
        let t3 = Instant::now();
        println!(
            "ofaorth({}; Z/{}) build {:?} axioms {:?} ({} inst, ok={}) family {:?} (ok={}) |Δ|={}",
            2 * l + 1, n, t1 - t0, t2 - t1, rep.instances, rep.ok(), t3 - t2, famr.ok(),
            o.ofr.delta_size()
        );
    }
}

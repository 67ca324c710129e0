//! CW models of computads: Euler characteristic, homology, pi1 and pi2.

use computads::cw::{f_top2, f_top3, report};
use computads::fixtures;
use computads::presentation::Limits;

fn main() {
    let limits = Limits::default();
    for name in ["sphere", "torus", "delta2dot"] {
        let r = report(&f_top2(&fixtures::computad(name)), &limits);
        println!(
            "{name}: chi {}, betti {:?}, pi1 {:?}, pi2 {:?}",
            r.chi, r.betti, r.pi1, r.pi2_rank
        );
    }
    let r = report(&f_top3(&fixtures::computad3("h_delta2")), &limits);
    println!(
        "h_delta2: chi {}, betti {:?}, pi2 {:?}",
        r.chi, r.betti, r.pi2_rank
    );
}

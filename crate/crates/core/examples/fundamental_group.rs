//! Fundamental groups of presented groupoids, simplified and decided.

use computads::fixtures;
use computads::graph::ObjectId;
use computads::presentation::{
    abelianization_invariants, is_thin_groupoid, is_trivial_group, pi1_presentation, Limits,
};

fn main() -> computads::Result<()> {
    for name in ["torus", "circle", "delta2dot", "xi"] {
        let c = fixtures::groupoidal(name);
        let p = pi1_presentation(&c, ObjectId(0))?;
        println!("{name}: {p}");
        println!("  simplified {}", p.simplify());
        println!("  abelianization {:?}", abelianization_invariants(&p));
        println!("  trivial {:?}", is_trivial_group(&p, &Limits::default()));
        println!(
            "  thin groupoid {}",
            is_thin_groupoid(&c, &Limits::default())
        );
    }
    Ok(())
}

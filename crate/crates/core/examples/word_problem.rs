//! Knuth-Bendix completion of a category presentation and its hom-sets.

use computads::fixtures;
use computads::free::Path;
use computads::presentation::{is_thin_category, knuth_bendix, normal_form, Limits};

fn main() -> computads::Result<()> {
    let c = fixtures::computad("delta2dot");
    let completion = knuth_bendix(&c, &Limits::default());
    let rs = completion.system();
    println!("complete: {}", completion.is_complete());
    for r in &rs.rules {
        println!("  {} -> {}", r.lhs.display(&c.base), r.rhs.display(&c.base));
    }
    for ((x, z), n) in rs.hom_counts() {
        println!(
            "hom({}, {}) = {n:?}",
            c.base.object_name(x),
            c.base.object_name(z)
        );
    }
    let p = Path::parse(&c.base, "d0 s0 d1")?;
    println!(
        "{} reduces to {}",
        p.display(&c.base),
        normal_form(&p, rs).display(&c.base)
    );
    println!("thin: {}", is_thin_category(&c, &Limits::default()));
    Ok(())
}

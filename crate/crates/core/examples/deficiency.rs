//! Deficiency of presentations and synthesis of efficient ones.

use computads::deficiency::{
    check_not_thin_bound, deficiency_of_presentation, lift_to_category_presentation,
    synth_efficient_groupoid, CategoryLift,
};
use computads::fixtures;
use computads::format::{print, CmpDocument};

fn main() -> computads::Result<()> {
    let torus = fixtures::groupoidal("torus");
    println!("torus: {:?}", deficiency_of_presentation(&torus)?);
    println!("  bound: {:?}", check_not_thin_bound(&torus)?);

    let g = fixtures::graph("g_hat");
    let h = synth_efficient_groupoid(&g)?;
    println!(
        "efficient groupoid presentation of g_hat:\n{}",
        print(&CmpDocument::Groupoidal(h.clone()))
    );
    println!("  {:?}", deficiency_of_presentation(&h)?);

    match lift_to_category_presentation(&fixtures::graph("strictly_increasing"))? {
        CategoryLift::Presentation(c) => println!(
            "thin category presentation:\n{}",
            print(&CmpDocument::Computad(c))
        ),
        CategoryLift::NotFair => println!("graph is not fair"),
    }
    Ok(())
}

//! Full contractible subcomputads and the 3-cells that make a
//! (2,0)-category locally thin.

use computads::fixtures;
use computads::presentation::Limits;
use computads::two_dim::{find_fcs_triple, locally_thin_criteria, synth_320_from_triple};

fn main() -> computads::Result<()> {
    for name in ["delta2dot", "dstr_dot"] {
        let c = fixtures::computad(name);
        let Some(triple) = find_fcs_triple(&c) else {
            println!("{name}: no f.c.s. triple found");
            continue;
        };
        println!("{name}: tree {:?}", triple.tree.arrow_names(&c.base));
        let s = synth_320_from_triple(&c, triple)?;
        for cell in &s.lifted.cells3 {
            println!(
                "  {} : {} => {}",
                cell.name,
                cell.source.display(&c),
                cell.target.display(&c)
            );
        }
        println!(
            "  {:?}",
            locally_thin_criteria(&s.lifted, &Limits::default())
        );
    }
    Ok(())
}

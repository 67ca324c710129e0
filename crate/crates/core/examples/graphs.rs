//! Trees, weak forests, fairness and monotone classification of a graph.

use computads::fixtures;
use computads::graph::{classify_monotone, is_fair, Fairness, DEFAULT_FAIR_BOUND};

fn main() -> computads::Result<()> {
    for name in ["weak_tree", "g_hat", "strictly_increasing"] {
        let g = fixtures::graph(name);
        println!(
            "{name}: {} objects, {} arrows, chi {}",
            g.object_count(),
            g.arrow_count(),
            g.euler_char()
        );
        println!(
            "  forest {}, weak forest {}",
            g.is_forest(),
            g.is_weak_forest()
        );
        let tree = g.maximal_tree()?;
        println!("  maximal tree {:?}", tree.arrow_names(&g));
        match is_fair(&g, DEFAULT_FAIR_BOUND)? {
            Fairness::Fair(t) => {
                println!("  fair, witness {:?}", t.arrow_names(&g));
                println!("  {:?}", classify_monotone(&g, &t)?);
            }
            Fairness::NotFair => println!("  not fair"),
        }
    }
    Ok(())
}

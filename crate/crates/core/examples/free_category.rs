//! Paths and hom-set sizes of the free category on a graph.

use computads::fixtures;
use computads::free::{
    enumerate_paths, hom_count_free, recognize_free_category, FiniteCategoryTable, FreeRecognition,
};

fn main() -> computads::Result<()> {
    let g = fixtures::graph("weak_tree");
    for x in g.objects() {
        for z in g.objects() {
            let paths = enumerate_paths(&g, x, z, 4).paths;
            let shown: Vec<String> = paths.iter().map(|p| p.display(&g)).collect();
            println!(
                "{} -> {}: {:?} {:?}",
                g.object_name(x),
                g.object_name(z),
                hom_count_free(&g, x, z),
                shown
            );
        }
    }
    let table = FiniteCategoryTable::of_free_category(&g)?;
    match recognize_free_category(&table)? {
        FreeRecognition::Free(h) => println!("recognized as free on {} arrows", h.arrow_count()),
        FreeRecognition::NotFree(why) => println!("not free: {why}"),
    }
    Ok(())
}

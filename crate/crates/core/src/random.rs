//! Seeded random graphs and computads for property runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::computad::{Computad2, TwoCell};
use crate::free::{enumerate_paths, Path};
use crate::graph::{Graph, ObjectId};

/// A connected graph: a random spanning tree with random orientations, then
/// `arrows - (objects - 1)` extra arrows with arbitrary endpoints.
pub fn connected_graph<R: Rng>(rng: &mut R, objects: usize, arrows: usize) -> Graph {
    let objects = objects.max(1);
    let arrows = arrows.max(objects - 1);
    let mut g = Graph::empty();
    for i in 0..objects {
        g.push_object(&format!("v{i}"));
    }
    for i in 1..objects {
        let j = rng.gen_range(0..i);
        let (a, b) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
        g.push_arrow(&format!("a{}", i - 1), ObjectId(a), ObjectId(b));
    }
    for k in objects - 1..arrows {
        let a = rng.gen_range(0..objects);
        let b = rng.gen_range(0..objects);
        g.push_arrow(&format!("a{k}"), ObjectId(a), ObjectId(b));
    }
    g
}

/// A walk of at most `max_len` arrows along out-arrows from `x`.
fn random_path<R: Rng>(rng: &mut R, g: &Graph, x: ObjectId, max_len: usize) -> Path {
    let len = rng.gen_range(0..=max_len);
    let mut arrows = Vec::new();
    let mut at = x;
    for _ in 0..len {
        let out: Vec<_> = g.arrow_ids().filter(|&a| g.dom(a) == at).collect();
        let Some(&a) = out.choose(rng) else { break };
        arrows.push(a);
        at = g.cod(a);
    }
    Path::new(g, x, arrows).expect("walk follows arrows")
}

/// A connected computad with up to the given sizes; cell boundaries are
/// parallel paths of length at most 3.
pub fn computad<R: Rng>(
    rng: &mut R,
    max_objects: usize,
    max_arrows: usize,
    max_cells: usize,
) -> Computad2 {
    let objects = rng.gen_range(1..=max_objects.max(1));
    let arrows = rng.gen_range(objects - 1..=max_arrows.max(objects - 1));
    let g = connected_graph(rng, objects, arrows);
    let n_cells = rng.gen_range(0..=max_cells);
    let mut cells = Vec::new();
    for i in 0..n_cells {
        let x = ObjectId(rng.gen_range(0..objects));
        let source = random_path(rng, &g, x, 3);
        let parallel = enumerate_paths(&g, x, source.end(&g), 3).paths;
        let target = parallel
            .choose(rng)
            .cloned()
            .unwrap_or_else(|| source.clone());
        cells.push(TwoCell {
            name: format!("c{i}"),
            source,
            target,
        });
    }
    Computad2::new(g, cells).expect("random cells are parallel")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes_and_connectivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let c = computad(&mut rng, 6, 9, 4);
            assert!(c.base.is_connected());
            assert!(c.base.object_count() <= 6);
            assert!(c.base.arrow_count() <= 9);
            assert!(c.cells.len() <= 4);
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = computad(&mut ChaCha8Rng::seed_from_u64(3), 5, 8, 3);
        let b = computad(&mut ChaCha8Rng::seed_from_u64(3), 5, 8, 3);
        assert_eq!(a, b);
    }
}

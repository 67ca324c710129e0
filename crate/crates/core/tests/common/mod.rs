//! Test-side oracles. Each one recomputes a quantity from raw graph data
//! without going through the library's algorithm for it.
#![allow(dead_code)]

use std::collections::HashMap;

use computads::computad::{Boundary, Computad, Computad2};
use computads::graph::{ArrowId, Graph, ObjectId};
use computads::two_dim::Computad3;

/// Every path `x → z` with at most `max_len` arrows, as arrow index lists.
pub fn all_paths(g: &Graph, x: usize, z: usize, max_len: usize) -> Vec<Vec<usize>> {
    fn go(
        g: &Graph,
        at: usize,
        z: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if at == z {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for a in 0..g.arrow_count() {
            if g.dom(ArrowId(a)).0 == at {
                cur.push(a);
                go(g, g.cod(ArrowId(a)).0, z, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, x, z, max_len, &mut Vec::new(), &mut out);
    out
}

/// A directed cycle exists iff some object returns to itself within
/// `|objects|` steps.
pub fn has_cycle(g: &Graph) -> bool {
    let n = g.object_count();
    (0..n).any(|x| all_paths(g, x, x, n).iter().any(|p| !p.is_empty()))
}

/// Weak forest: acyclic, and at most one path between any ordered pair.
pub fn weak_forest(g: &Graph) -> bool {
    let n = g.object_count();
    !has_cycle(g) && (0..n).all(|x| (0..n).all(|z| all_paths(g, x, z, n).len() <= 1))
}

/// The graph on all objects of `g` with only the chosen arrows.
pub fn sub(g: &Graph, arrows: &[usize]) -> Graph {
    let objects: Vec<&str> = g.objects().map(|o| g.object_name(o)).collect();
    let edges: Vec<(&str, &str, &str)> = arrows
        .iter()
        .map(|&a| {
            let a = ArrowId(a);
            (
                g.arrow_name(a),
                g.object_name(g.dom(a)),
                g.object_name(g.cod(a)),
            )
        })
        .collect();
    Graph::new(&objects, &edges).unwrap()
}

/// Undirected connectivity by flood fill.
pub fn connected(g: &Graph) -> bool {
    let n = g.object_count();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for a in g.arrow_ids() {
            let (d, c) = (g.dom(a).0, g.cod(a).0);
            for (p, q) in [(d, c), (c, d)] {
                if p == v && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Fair iff some inclusion-maximal weak-forest arrow subset is a spanning
/// tree; exhaustive over all subsets.
pub fn fair(g: &Graph) -> bool {
    let m = g.arrow_count();
    assert!(m <= 12, "oracle is exponential");
    let weak: Vec<u32> = (0..1u32 << m)
        .filter(|&mask| weak_forest(&sub(g, &bits(mask, m))))
        .collect();
    weak.iter().any(|&mask| {
        let maximal = !weak
            .iter()
            .any(|&other| other != mask && other & mask == mask);
        let arrows = bits(mask, m);
        maximal && arrows.len() + 1 == g.object_count() && connected(&sub(g, &arrows))
    })
}

pub fn bits(mask: u32, m: usize) -> Vec<usize> {
    (0..m).filter(|i| mask >> i & 1 == 1).collect()
}

/// Rank over the rationals by fraction-free (Bareiss) elimination in i128.
pub fn rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let (mut r, mut prev) = (0, 1i128);
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Boundary matrices of the CW model, built directly from cell data:
/// arrows give `cod − dom`, 2-cells give source minus target arrow counts,
/// 3-cells give source minus target generator exponent sums.
pub fn boundaries<B: Boundary>(c: &Computad<B>, cells3: &[Vec<i64>]) -> [Vec<Vec<i64>>; 3] {
    let g = &c.base;
    let d1 = g
        .arrow_ids()
        .map(|a| {
            let mut row = vec![0; g.object_count()];
            row[g.cod(a).0] += 1;
            row[g.dom(a).0] -= 1;
            row
        })
        .collect();
    let d2 = c
        .cells
        .iter()
        .map(|cell| {
            let mut row = vec![0; g.arrow_count()];
            for l in cell.source.signed_letters() {
                row[l.arrow.0] += l.exponent();
            }
            for l in cell.target.signed_letters() {
                row[l.arrow.0] -= l.exponent();
            }
            row
        })
        .collect();
    [d1, d2, cells3.to_vec()]
}

/// Betti numbers from cell counts and boundary ranks.
pub fn betti<B: Boundary>(c: &Computad<B>, cells3: &[Vec<i64>]) -> [usize; 4] {
    let [d1, d2, d3] = boundaries(c, cells3);
    let counts = [
        c.base.object_count(),
        c.base.arrow_count(),
        c.cells.len(),
        cells3.len(),
    ];
    let ranks = [0, rank(&d1), rank(&d2), rank(&d3), 0];
    [0, 1, 2, 3].map(|k| counts[k] - ranks[k] - ranks[k + 1])
}

/// 3-cell boundaries as generator exponent sums, counted from the factors.
pub fn cells3_rows(c3: &Computad3) -> Vec<Vec<i64>> {
    let n = c3.base.cells.len();
    c3.cells3
        .iter()
        .map(|cell| {
            let mut row = vec![0; n];
            for f in &cell.source.factors {
                row[f.gen] += if f.inv { -1 } else { 1 };
            }
            for f in &cell.target.factors {
                row[f.gen] -= if f.inv { -1 } else { 1 };
            }
            row
        })
        .collect()
}

/// Congruence classes of all paths of an acyclic computad, by union-find
/// over every whiskered instance of every cell.
pub struct Congruence {
    pub paths: Vec<(usize, Vec<usize>)>,
    ends: Vec<usize>,
    parent: Vec<usize>,
}

impl Congruence {
    pub fn new(c: &Computad2) -> Self {
        let g = &c.base;
        let n = g.object_count();
        assert!(!has_cycle(g));
        let mut paths = Vec::new();
        let mut ends = Vec::new();
        for x in 0..n {
            for z in 0..n {
                for p in all_paths(g, x, z, n) {
                    paths.push((x, p));
                    ends.push(z);
                }
            }
        }
        let index: HashMap<(usize, Vec<usize>), usize> = paths
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut cong = Congruence {
            parent: (0..paths.len()).collect(),
            paths,
            ends,
        };
        for cell in &c.cells {
            let (s, t) = (&cell.source, &cell.target);
            let (x, y) = (s.start.0, s.end(g).0);
            for w in 0..n {
                for left in all_paths(g, w, x, n) {
                    for v in 0..n {
                        for right in all_paths(g, y, v, n) {
                            let whisk = |mid: &[ArrowId]| {
                                let mut p = left.clone();
                                p.extend(mid.iter().map(|a| a.0));
                                p.extend(&right);
                                index[&(w, p)]
                            };
                            let (i, j) = (whisk(&s.arrows), whisk(&t.arrows));
                            cong.union(i, j);
                        }
                    }
                }
            }
        }
        cong
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        self.parent[a.max(b)] = a.min(b);
    }

    /// Number of classes `x → z`.
    pub fn hom_size(&mut self, x: usize, z: usize) -> usize {
        let members: Vec<usize> = (0..self.paths.len())
            .filter(|&i| self.paths[i].0 == x && self.ends[i] == z)
            .collect();
        let mut roots: Vec<usize> = members.into_iter().map(|i| self.find(i)).collect();
        roots.sort();
        roots.dedup();
        roots.len()
    }
}

/// Nondecreasing maps from an `m`-element chain to an `n`-element chain.
pub fn order_preserving_maps(m: usize, n: usize) -> usize {
    fn go(left: usize, from: usize, n: usize) -> usize {
        if left == 0 {
            return 1;
        }
        (from..n).map(|v| go(left - 1, v, n)).sum()
    }
    go(m, 0, n)
}

pub fn object(g: &Graph, name: &str) -> ObjectId {
    g.object_id(name).unwrap()
}

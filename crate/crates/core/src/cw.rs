//! Combinatorial CW complexes of graphs and computads: cell counts, cellular
//! boundary matrices, rational Betti numbers and the low homotopy groups
//! that the presentation machinery can decide.
//!
//! Boundary matrices use the row convention: row `i` of `∂ₖ` is the boundary
//! of the `i`-th `k`-cell in the basis of `(k−1)`-cells.

use serde::Serialize;

use crate::computad::{Boundary, Computad};
use crate::free::Letter;
use crate::graph::{Graph, ObjectId, Subgraph};
use crate::linalg::{cokernel, is_zero, multiply, rank, IntMatrix};
use crate::presentation::group::{component_of, relator_word};
use crate::presentation::{is_trivial_group, GroupPresentation, Limits, Triviality, Verdict};
use crate::two_dim::Computad3;

/// A 2-cell attached along a closed walk of the 1-skeleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub name: String,
    /// Where the attaching walk starts and ends.
    pub base: ObjectId,
    pub word: Vec<Letter>,
}

/// A 3-cell attached along a 2-sphere, recorded by its cellular boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub name: String,
    /// Coefficient per face.
    pub boundary: Vec<i64>,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CWComplex {
    pub skeleton: Graph,
    pub faces: Vec<Face>,
    pub balls: Vec<Ball>,
}

/// The topological graph: objects are points, arrows are segments.
pub fn f_top1(g: &Graph) -> CWComplex {
    CWComplex {
        skeleton: g.clone(),
        faces: Vec::new(),
        balls: Vec::new(),
    }
}

/// One disk per 2-cell `α: f ⇒ g`, attached along `f` followed by `g⁻¹`.
pub fn f_top2<B: Boundary>(c: &Computad<B>) -> CWComplex {
    let faces = c
        .cells
        .iter()
        .map(|cell| {
            let mut word = cell.source.signed_letters();
            word.extend(
                cell.target
                    .signed_letters()
                    .iter()
                    .rev()
                    .map(|l| l.inverse()),
            );
            Face {
                name: cell.name.clone(),
                base: cell.source.start(),
                word,
            }
        })
        .collect();
    CWComplex {
        skeleton: c.base.clone(),
        faces,
        balls: Vec::new(),
    }
}

/// Adds one ball per 3-cell, with boundary the difference of exponent sums.
pub fn f_top3(c3: &Computad3) -> CWComplex {
    let mut cw = f_top2(&c3.base);
    let g = &c3.base;
    cw.balls = c3
        .cells3
        .iter()
        .zip(c3.boundary_vectors())
        .map(|(cell, boundary)| Ball {
            name: cell.name.clone(),
            boundary,
            source: cell.source.display(g),
            target: cell.target.display(g),
        })
        .collect();
    debug_assert!(cw.chain_law_holds());
    cw
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Betti {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
    pub b3: usize,
}

impl Betti {
    pub fn to_array(&self) -> [usize; 4] {
        [self.b0, self.b1, self.b2, self.b3]
    }
}

impl CWComplex {
    pub fn cell_counts(&self) -> [usize; 4] {
        [
            self.skeleton.object_count(),
            self.skeleton.arrow_count(),
            self.faces.len(),
            self.balls.len(),
        ]
    }

    pub fn euler_char(&self) -> i64 {
        let [c0, c1, c2, c3] = self.cell_counts().map(|c| c as i64);
        c0 - c1 + c2 - c3
    }

    /// `∂ₖ` for `k ∈ {1, 2, 3}`; rows are `k`-cells.
    pub fn boundary_matrix(&self, k: usize) -> IntMatrix {
        let g = &self.skeleton;
        match k {
            1 => g
                .arrow_ids()
                .map(|a| {
                    let mut row = vec![0; g.object_count()];
                    row[g.cod(a).0] += 1;
                    row[g.dom(a).0] -= 1;
                    row
                })
                .collect(),
            2 => self
                .faces
                .iter()
                .map(|f| {
                    let mut row = vec![0; g.arrow_count()];
                    for l in &f.word {
                        row[l.arrow.0] += l.exponent();
                    }
                    row
                })
                .collect(),
            3 => self.balls.iter().map(|b| b.boundary.clone()).collect(),
            _ => Vec::new(),
        }
    }

    /// `∂ₖ₊₁ ∂ₖ = 0` for `k = 1, 2`.
    pub fn chain_law_holds(&self) -> bool {
        (1..=2).all(|k| {
            let upper = self.boundary_matrix(k + 1);
            let lower = self.boundary_matrix(k);
            upper.is_empty() || lower.is_empty() || is_zero(&multiply(&upper, &lower))
        })
    }

    pub fn betti_numbers(&self) -> Betti {
        let [c0, c1, c2, c3] = self.cell_counts();
        let r1 = rank(&self.boundary_matrix(1));
        let r2 = rank(&self.boundary_matrix(2));
        let r3 = rank(&self.boundary_matrix(3));
        let b = Betti {
            b0: c0 - r1,
            b1: c1 - r1 - r2,
            b2: c2 - r2 - r3,
            b3: c3 - r3,
        };
        debug_assert_eq!(
            b.b0 as i64 - b.b1 as i64 + b.b2 as i64 - b.b3 as i64,
            self.euler_char()
        );
        b
    }

    /// Torsion divisors of integral second homology.
    pub fn h2_torsion(&self) -> Vec<String> {
        cokernel(&self.boundary_matrix(3), self.faces.len()).divisors
    }
}

/// Fundamental group of the component of `component`: non-tree edges
/// generate, faces in the component relate with tree letters deleted.
pub fn pi1_from_cw_with_tree(
    cw: &CWComplex,
    component: ObjectId,
    tree: &Subgraph,
) -> GroupPresentation {
    let g = &cw.skeleton;
    let block = component_of(g, component);
    let mut generator_of = vec![None; g.arrow_count()];
    let mut generators = Vec::new();
    for a in g.arrow_ids() {
        if block.contains(&g.dom(a)) && !tree.arrows.contains(&a) {
            generator_of[a.0] = Some(generators.len());
            generators.push(g.arrow_name(a).to_string());
        }
    }
    let relators = cw
        .faces
        .iter()
        .filter(|f| block.contains(&f.base))
        .map(|f| relator_word(&f.word, &generator_of))
        .collect();
    GroupPresentation {
        generators,
        relators,
    }
}

/// One presentation per connected component, each relative to the
/// deterministic spanning forest.
pub fn pi1_from_cw(cw: &CWComplex) -> Vec<GroupPresentation> {
    let tree = cw.skeleton.spanning_forest();
    cw.skeleton
        .connected_components()
        .iter()
        .map(|block| pi1_from_cw_with_tree(cw, block[0], &tree))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "rank", rename_all = "snake_case")]
pub enum Pi2Status {
    Rank(usize),
    NotSimplyConnected,
    Unknown,
}

/// For a simply connected complex, `π₂ ≅ H₂` and its rank is `b₂`.
pub fn pi2_rank_if_simply_connected(cw: &CWComplex, limits: &Limits) -> Pi2Status {
    let mut unknown = false;
    for p in pi1_from_cw(cw) {
        match is_trivial_group(&p, limits) {
            Triviality::Yes => {}
            Triviality::No(_) => return Pi2Status::NotSimplyConnected,
            Triviality::Unknown => unknown = true,
        }
    }
    if unknown {
        Pi2Status::Unknown
    } else {
        Pi2Status::Rank(cw.betti_numbers().b2)
    }
}

/// JSON summary of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CwReport {
    pub cells: [usize; 4],
    pub chi: i64,
    pub betti: [usize; 4],
    pub h2_torsion: Vec<String>,
    pub pi1: Vec<String>,
    pub pi1_status: Verdict,
    pub pi2_rank: Pi2Status,
}

pub fn report(cw: &CWComplex, limits: &Limits) -> CwReport {
    let pi1 = pi1_from_cw(cw);
    let mut status = Verdict::Yes;
    for p in &pi1 {
        match is_trivial_group(p, limits) {
            Triviality::Yes => {}
            Triviality::No(_) => status = Verdict::No,
            Triviality::Unknown => {
                if status == Verdict::Yes {
                    status = Verdict::Unknown;
                }
            }
        }
    }
    CwReport {
        cells: cw.cell_counts(),
        chi: cw.euler_char(),
        betti: cw.betti_numbers().to_array(),
        h2_torsion: cw.h2_torsion(),
        pi1: pi1.iter().map(|p| p.to_string()).collect(),
        pi1_status: status,
        pi2_rank: pi2_rank_if_simply_connected(cw, limits),
    }
}

//! Group presentations, fundamental groups of groupoidal computads, and the
//! triviality test.

use std::fmt;

use serde::Serialize;

use crate::computad::GroupoidalComputad2;
use crate::error::{Error, Result};
use crate::free::Letter;
use crate::graph::{ArrowId, Graph, ObjectId, Subgraph};
use crate::linalg::{cokernel, AbelianInvariants};
use crate::presentation::coset::enumerate_cosets;
use crate::presentation::{Limits, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupLetter {
    pub gen: usize,
    pub inv: bool,
}

impl GroupLetter {
    pub fn inverse(self) -> Self {
        GroupLetter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<GroupLetter>>,
}

pub fn free_reduce_group(word: &[GroupLetter]) -> Vec<GroupLetter> {
    let mut out: Vec<GroupLetter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction: a conjugate with the same normal closure.
fn cyclically_reduce(word: &[GroupLetter]) -> Vec<GroupLetter> {
    let mut w = free_reduce_group(word);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
        w.pop();
        w.remove(0);
    }
    w
}

fn invert(word: &[GroupLetter]) -> Vec<GroupLetter> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

impl GroupPresentation {
    /// Parses relators written as space-separated `g` / `g^-1` tokens.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| {
                r.split_whitespace()
                    .filter(|t| *t != "1")
                    .map(|tok| {
                        let (name, inv) = match tok.strip_suffix("^-1") {
                            Some(n) => (n, true),
                            None => (tok, false),
                        };
                        gens.iter()
                            .position(|g| g == name)
                            .map(|gen| GroupLetter { gen, inv })
                            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(|w| free_reduce_group(&w))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupPresentation {
            generators: gens,
            relators: rels,
        })
    }

    pub fn word_string(&self, w: &[GroupLetter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| {
                let g = &self.generators[l.gen];
                if l.inv {
                    format!("{g}^-1")
                } else {
                    g.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators.iter().map(|r| self.word_string(r)).collect()
    }

    /// Relator exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generators.len()];
                for l in r {
                    row[l.gen] += if l.inv { -1 } else { 1 };
                }
                row
            })
            .collect()
    }

    /// Tietze moves: drop trivial relators, kill generators equal to the
    /// identity, and eliminate generators occurring exactly once in some
    /// relator (shortest such relator first).
    pub fn simplify(&self) -> GroupPresentation {
        const MAX_TOTAL_LENGTH: usize = 100_000;
        let mut gens: Vec<Option<String>> = self.generators.iter().cloned().map(Some).collect();
        let mut rels: Vec<Vec<GroupLetter>> = self.relators.clone();
        loop {
            rels = rels
                .iter()
                .map(|r| cyclically_reduce(r))
                .filter(|r| !r.is_empty())
                .collect();
            rels.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
            rels.dedup();
            // Pick the shortest relator containing a generator exactly once.
            let pick = rels.iter().enumerate().find_map(|(i, r)| {
                r.iter()
                    .position(|l| r.iter().filter(|m| m.gen == l.gen).count() == 1)
                    .map(|pos| (i, pos))
            });
            let Some((i, pos)) = pick else { break };
            let r = rels.remove(i);
            let l = r[pos];
            // r = u·g^±·v = 1 gives g = u⁻¹v⁻¹ (for g) or g = v·u (for g⁻¹).
            let (u, v) = (&r[..pos], &r[pos + 1..]);
            let value: Vec<GroupLetter> = if l.inv {
                v.iter().chain(u).copied().collect()
            } else {
                let mut w = invert(u);
                w.extend(invert(v));
                w
            };
            let substituted: Vec<Vec<GroupLetter>> = rels
                .iter()
                .map(|rel| {
                    let mut out = Vec::new();
                    for &m in rel {
                        if m.gen == l.gen {
                            if m.inv {
                                out.extend(invert(&value));
                            } else {
                                out.extend(value.iter().copied());
                            }
                        } else {
                            out.push(m);
                        }
                    }
                    free_reduce_group(&out)
                })
                .collect();
            if substituted.iter().map(Vec::len).sum::<usize>() > MAX_TOTAL_LENGTH {
                rels.insert(i, r);
                break;
            }
            rels = substituted;
            gens[l.gen] = None;
        }
        // Renumber surviving generators.
        let mut new_index = vec![usize::MAX; gens.len()];
        let mut generators = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if let Some(name) = g {
                new_index[i] = generators.len();
                generators.push(name.clone());
            }
        }
        let relators = rels
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|l| GroupLetter {
                        gen: new_index[l.gen],
                        inv: l.inv,
                    })
                    .collect()
            })
            .collect();
        GroupPresentation {
            generators,
            relators,
        }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "⟨{} | {}⟩",
            self.generators.join(", "),
            self.relator_strings().join(", ")
        )
    }
}

/// Free rank and torsion of the abelianization, via Smith normal form.
pub fn abelianization_invariants(p: &GroupPresentation) -> AbelianInvariants {
    cokernel(&p.exponent_matrix(), p.generators.len())
}

/// Why a group is known to be nontrivial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "witness", rename_all = "snake_case")]
pub enum NonTrivial {
    Abelianization(AbelianInvariants),
    CosetCount { cosets: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum Triviality {
    Yes,
    No(NonTrivial),
    Unknown,
}

impl Triviality {
    pub fn verdict(&self) -> Verdict {
        match self {
            Triviality::Yes => Verdict::Yes,
            Triviality::No(_) => Verdict::No,
            Triviality::Unknown => Verdict::Unknown,
        }
    }
}

/// Tietze simplification, then abelianization, then coset enumeration.
pub fn is_trivial_group(p: &GroupPresentation, limits: &Limits) -> Triviality {
    let s = p.simplify();
    if s.generators.is_empty() {
        return Triviality::Yes;
    }
    let ab = abelianization_invariants(&s);
    if !ab.is_trivial() {
        return Triviality::No(NonTrivial::Abelianization(ab));
    }
    let relators: Vec<Vec<usize>> = s
        .relators
        .iter()
        .map(|r| r.iter().map(|l| 2 * l.gen + usize::from(l.inv)).collect())
        .collect();
    match enumerate_cosets(s.generators.len(), &relators, limits.max_cosets) {
        Some(1) => Triviality::Yes,
        Some(n) => Triviality::No(NonTrivial::CosetCount { cosets: n }),
        None => Triviality::Unknown,
    }
}

/// Generators and relators of the vertex group at `component`, computed
/// relative to the given spanning forest.
pub fn pi1_presentation_with_tree(
    c: &GroupoidalComputad2,
    component: ObjectId,
    tree: &Subgraph,
) -> Result<GroupPresentation> {
    let g = &c.base;
    if component.0 >= g.object_count() {
        return Err(Error::ObjectNotFound(format!("#{}", component.0)));
    }
    let block = component_of(g, component);
    let in_block = |o: ObjectId| block.contains(&o);
    let mut generator_of = vec![None; g.arrow_count()];
    let mut generators = Vec::new();
    for a in g.arrow_ids() {
        if in_block(g.dom(a)) && !tree.arrows.contains(&a) {
            generator_of[a.0] = Some(generators.len());
            generators.push(g.arrow_name(a).to_string());
        }
    }
    let relators = c
        .cells
        .iter()
        .filter(|cell| in_block(cell.source.start))
        .map(|cell| {
            let letters: Vec<Letter> = cell
                .source
                .letters
                .iter()
                .copied()
                .chain(cell.target.invert(g).letters)
                .collect();
            relator_word(&letters, &generator_of)
        })
        .collect();
    Ok(GroupPresentation {
        generators,
        relators,
    })
}

/// Deletes tree letters, renames the rest as generators, freely reduces.
pub(crate) fn relator_word(letters: &[Letter], generator_of: &[Option<usize>]) -> Vec<GroupLetter> {
    let w: Vec<GroupLetter> = letters
        .iter()
        .filter_map(|l| generator_of[l.arrow.0].map(|gen| GroupLetter { gen, inv: l.inv }))
        .collect();
    free_reduce_group(&w)
}

pub(crate) fn component_of(g: &Graph, o: ObjectId) -> Vec<ObjectId> {
    g.connected_components()
        .into_iter()
        .find(|b| b.contains(&o))
        .unwrap_or_default()
}

/// Fundamental group presentation of the component containing `component`,
/// using the deterministic spanning forest of the base graph.
pub fn pi1_presentation(c: &GroupoidalComputad2, component: ObjectId) -> Result<GroupPresentation> {
    pi1_presentation_with_tree(c, component, &c.base.spanning_forest())
}

/// The presented groupoid is thin iff every vertex group is trivial.
pub fn is_thin_groupoid(c: &GroupoidalComputad2, limits: &Limits) -> Verdict {
    let mut verdict = Verdict::Yes;
    for block in c.base.connected_components() {
        let p = pi1_presentation(c, block[0]).expect("component object exists");
        match is_trivial_group(&p, limits) {
            Triviality::Yes => {}
            Triviality::No(_) => return Verdict::No,
            Triviality::Unknown => verdict = Verdict::Unknown,
        }
    }
    verdict
}

/// Arrows of `g` outside the tree, in declaration order.
pub fn non_tree_arrows(g: &Graph, tree: &Subgraph) -> Vec<ArrowId> {
    g.arrow_ids().filter(|a| !tree.arrows.contains(a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::computad::{groupoidalize, i2_groupoidal, Computad2};

    fn torus() -> GroupoidalComputad2 {
        let g = Graph::new(&["p"], &[("a", "p", "p"), ("b", "p", "p")]).unwrap();
        GroupoidalComputad2::from_texts(g, &[("t", "a b", "b a")]).unwrap()
    }

    fn delta2dot() -> GroupoidalComputad2 {
        let g = Graph::new(
            &["0", "1", "2"],
            &[
                ("d", "0", "1"),
                ("s0", "2", "1"),
                ("d0", "1", "2"),
                ("d1", "1", "2"),
            ],
        )
        .unwrap();
        groupoidalize(
            &Computad2::from_texts(
                g,
                &[
                    ("n0", "d0 s0", "id(1)"),
                    ("n1", "id(1)", "d1 s0"),
                    ("theta", "d d1", "d d0"),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn pi1_examples() {
        let circle = Graph::new(&["v"], &[("a", "v", "v")]).unwrap();
        let p = pi1_presentation(&i2_groupoidal(&circle), ObjectId(0)).unwrap();
        assert_eq!(p.to_string(), "⟨a | ⟩");
        let p = pi1_presentation(&torus(), ObjectId(0)).unwrap();
        assert_eq!(p.relator_strings(), vec!["a b a^-1 b^-1"]);
        let p = pi1_presentation(&delta2dot(), ObjectId(0)).unwrap();
        assert_eq!(p.generators, vec!["d0", "d1"]);
        assert_eq!(p.relator_strings(), vec!["d0", "d1^-1", "d1 d0^-1"]);
        assert!(p.simplify().generators.is_empty());
        assert!(pi1_presentation(&torus(), ObjectId(3)).is_err());
    }

    #[test]
    fn triviality() {
        let limits = Limits::default();
        let empty = GroupPresentation::parse(&[], &[]).unwrap();
        assert_eq!(is_trivial_group(&empty, &limits), Triviality::Yes);
        let comm = GroupPresentation::parse(&["a", "b"], &["a b a^-1 b^-1"]).unwrap();
        match is_trivial_group(&comm, &limits) {
            Triviality::No(NonTrivial::Abelianization(ab)) => assert_eq!(ab.free_rank, 2),
            other => panic!("{other:?}"),
        }
        let killed = GroupPresentation::parse(&["a"], &["a"]).unwrap();
        assert_eq!(is_trivial_group(&killed, &limits), Triviality::Yes);
        // Perfect but nontrivial: the binary icosahedral group (order 120).
        let bi = GroupPresentation::parse(
            &["a", "b"],
            &["a a a a a b^-1 b^-1 b^-1", "a a a a a^-1 b^-1 a^-1 b^-1 a"],
        )
        .unwrap();
        assert!(abelianization_invariants(&bi.simplify()).is_trivial());
        assert_eq!(
            is_trivial_group(&bi, &limits),
            Triviality::No(NonTrivial::CosetCount { cosets: 120 })
        );
    }

    #[test]
    fn abelianizations() {
        let comm = GroupPresentation::parse(&["a", "b"], &["a b a^-1 b^-1"]).unwrap();
        assert_eq!(abelianization_invariants(&comm).free_rank, 2);
        let z2 = GroupPresentation::parse(&["a"], &["a a"]).unwrap();
        assert_eq!(abelianization_invariants(&z2).divisors, vec!["2"]);
        let empty = GroupPresentation::parse(&[], &[]).unwrap();
        assert_eq!(abelianization_invariants(&empty).free_rank, 0);
    }

    #[test]
    fn thin_groupoid_verdicts() {
        let limits = Limits::default();
        let circle = Graph::new(&["v"], &[("a", "v", "v")]).unwrap();
        assert_eq!(
            is_thin_groupoid(&i2_groupoidal(&circle), &limits),
            Verdict::No
        );
        let tree = Graph::new(&["x", "y"], &[("f", "x", "y")]).unwrap();
        assert_eq!(
            is_thin_groupoid(&i2_groupoidal(&tree), &limits),
            Verdict::Yes
        );
        assert_eq!(is_thin_groupoid(&delta2dot(), &limits), Verdict::Yes);
    }
}

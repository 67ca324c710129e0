//! 2-cell words in free 2-categories, 3-computads, full contractible
//! subcomputads and the locally-thin criteria built on them.
//!
//! A [`TwoCellWord`] is a vertical composite of whiskered generators
//! `left · α^±1 · right`. Boundaries are positive paths, so identity arrows
//! of reflexive computads must be stripped first
//! ([`crate::computad::ReflexiveComputad2::normalize`]).

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::computad::{Boundary, Collapse, Computad2, SubComputad, TwoCell};
use crate::cw::{f_top3, pi2_rank_if_simply_connected, Pi2Status};
use crate::error::{Error, Result};
use crate::free::{free_reduce, Letter, Path};
use crate::graph::{for_each_spanning_tree, ArrowId, Graph, ObjectId, Subgraph};
use crate::linalg::{cokernel, rank};
use crate::presentation::{is_trivial_group, GroupPresentation, Limits, Triviality};

/// A generator 2-cell (or its inverse) whiskered by paths on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WhiskerFactor {
    pub left: Path,
    pub gen: usize,
    pub inv: bool,
    pub right: Path,
}

impl WhiskerFactor {
    pub fn exponent(&self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    fn sides<'a>(&self, c: &'a Computad2) -> Result<(&'a Path, &'a Path)> {
        let cell = c
            .cells
            .get(self.gen)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{}", self.gen)))?;
        Ok(if self.inv {
            (&cell.target, &cell.source)
        } else {
            (&cell.source, &cell.target)
        })
    }

    fn around(&self, c: &Computad2, mid: &Path) -> Result<Path> {
        self.left
            .compose(&c.base, mid)?
            .compose(&c.base, &self.right)
    }

    pub fn source(&self, c: &Computad2) -> Result<Path> {
        self.around(c, self.sides(c)?.0)
    }

    pub fn target(&self, c: &Computad2) -> Result<Path> {
        self.around(c, self.sides(c)?.1)
    }

    fn inverse(&self) -> WhiskerFactor {
        WhiskerFactor {
            inv: !self.inv,
            ..self.clone()
        }
    }

    fn display(&self, c: &Computad2) -> String {
        let path = |p: &Path| {
            if p.is_empty() {
                String::new()
            } else {
                p.display(&c.base)
            }
        };
        let name = c.cells.get(self.gen).map_or("?", |cell| cell.name.as_str());
        let inv = if self.inv { "^-1" } else { "" };
        format!(
            "[{} | {name}{inv} | {}]",
            path(&self.left),
            path(&self.right)
        )
    }
}

/// A vertical composite of whiskered generators, read left to right.
/// `source` is kept so that empty words still know their path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoCellWord {
    pub source: Path,
    pub factors: Vec<WhiskerFactor>,
}

impl TwoCellWord {
    pub fn identity(p: Path) -> Self {
        TwoCellWord {
            source: p,
            factors: Vec::new(),
        }
    }

    /// The single whiskered generator `left · gen^±1 · right`.
    pub fn factor(c: &Computad2, left: Path, gen: usize, inv: bool, right: Path) -> Result<Self> {
        let f = WhiskerFactor {
            left,
            gen,
            inv,
            right,
        };
        Ok(TwoCellWord {
            source: f.source(c)?,
            factors: vec![f],
        })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Problems with the word, first mismatch only; empty iff it composes.
    pub fn validate(&self, c: &Computad2) -> Vec<String> {
        if self.source.check(&c.base).is_err() {
            return vec!["source is not a path of the base graph".into()];
        }
        let mut at = self.source.clone();
        for (i, f) in self.factors.iter().enumerate() {
            let (src, tgt) = match (f.source(c), f.target(c)) {
                (Ok(s), Ok(t)) => (s, t),
                (Err(e), _) | (_, Err(e)) => return vec![format!("factor {i}: {e}")],
            };
            if src != at {
                return vec![format!("chain break at factor {i}")];
            }
            at = tgt;
        }
        Vec::new()
    }

    pub fn check(&self, c: &Computad2) -> Result<()> {
        match self.validate(c).into_iter().next() {
            Some(p) => Err(Error::InvalidTwoCellWord(p)),
            None => Ok(()),
        }
    }

    pub fn target(&self, c: &Computad2) -> Result<Path> {
        match self.factors.last() {
            Some(f) => f.target(c),
            None => Ok(self.source.clone()),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, c: &Computad2, other: &TwoCellWord) -> Result<TwoCellWord> {
        if self.target(c)? != other.source {
            return Err(Error::InvalidTwoCellWord(
                "vertical composite of non-matching words".into(),
            ));
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(TwoCellWord {
            source: self.source.clone(),
            factors,
        })
    }

    pub fn inverse(&self, c: &Computad2) -> Result<TwoCellWord> {
        Ok(TwoCellWord {
            source: self.target(c)?,
            factors: self
                .factors
                .iter()
                .rev()
                .map(WhiskerFactor::inverse)
                .collect(),
        })
    }

    /// Whiskers every factor by `left` and `right`.
    pub fn whisker(&self, c: &Computad2, left: &Path, right: &Path) -> Result<TwoCellWord> {
        let g = &c.base;
        let factors = self
            .factors
            .iter()
            .map(|f| {
                Ok(WhiskerFactor {
                    left: left.compose(g, &f.left)?,
                    gen: f.gen,
                    inv: f.inv,
                    right: f.right.compose(g, right)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TwoCellWord {
            source: left.compose(g, &self.source)?.compose(g, right)?,
            factors,
        })
    }

    /// Sum of exponents per 2-cell generator of `c`.
    pub fn exponent_sums(&self, cells: usize) -> Vec<i64> {
        let mut v = vec![0; cells];
        for f in &self.factors {
            v[f.gen] += f.exponent();
        }
        v
    }

    /// Interchange normal form: cancels adjacent inverse factors and moves a
    /// factor acting strictly left of its predecessor in front of it.
    pub fn normalize(&self, c: &Computad2) -> Result<TwoCellWord> {
        self.check(c)?;
        let g = &c.base;
        let mut fs = self.factors.clone();
        let cap = 10_000 + 100 * fs.len() * fs.len();
        let mut steps = 0;
        let mut i = 0;
        while i + 1 < fs.len() {
            steps += 1;
            if steps > cap {
                break;
            }
            let (first, second) = (&fs[i], &fs[i + 1]);
            if first.gen == second.gen
                && first.inv != second.inv
                && first.left == second.left
                && first.right == second.right
            {
                fs.drain(i..i + 2);
                i = i.saturating_sub(1);
                continue;
            }
            let (s_f, t_f) = first.sides(c)?;
            let (s_s, t_s) = second.sides(c)?;
            let a_f = first.left.len();
            let a_s = second.left.len();
            let b_s = a_s + s_s.len();
            let ambiguous = a_s == a_f && t_f.is_empty();
            if b_s <= a_f && !ambiguous {
                let m = first.left.segment(g, b_s..a_f);
                let new_first = WhiskerFactor {
                    left: second.left.clone(),
                    gen: second.gen,
                    inv: second.inv,
                    right: m.compose(g, s_f)?.compose(g, &first.right)?,
                };
                let new_second = WhiskerFactor {
                    left: second.left.compose(g, t_s)?.compose(g, &m)?,
                    gen: first.gen,
                    inv: first.inv,
                    right: first.right.clone(),
                };
                fs[i] = new_first;
                fs[i + 1] = new_second;
                i = i.saturating_sub(1);
                continue;
            }
            i += 1;
        }
        Ok(TwoCellWord {
            source: self.source.clone(),
            factors: fs,
        })
    }

    /// `id(<path>)`, or `;`-separated factors `[ <path> | <gen>(^-1)? | <path> ]`.
    pub fn parse(c: &Computad2, text: &str) -> Result<TwoCellWord> {
        let text = text.trim();
        let bad = |m: &str| Error::InvalidTwoCellWord(format!("{m}: {text}"));
        if !text.starts_with('[') {
            let inner = text
                .strip_prefix("id(")
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| bad("expected id(<path>) or a bracketed factor"))?;
            return Ok(TwoCellWord::identity(Path::parse(&c.base, inner.trim())?));
        }
        let mut factors = Vec::new();
        for part in text.split(';') {
            let inner = part
                .trim()
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| bad("factor not in brackets"))?;
            let fields: Vec<&str> = inner.split('|').map(str::trim).collect();
            let [left, gen, right] = fields[..] else {
                return Err(bad("factor needs three |-separated fields"));
            };
            let (name, inv) = match gen.strip_suffix("^-1") {
                Some(n) => (n.trim(), true),
                None => (gen, false),
            };
            let idx = c
                .cell_index(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            let cell = &c.cells[idx];
            let (s, _) = if inv {
                (&cell.target, &cell.source)
            } else {
                (&cell.source, &cell.target)
            };
            let whisker = |t: &str, at: ObjectId| -> Result<Path> {
                if t.is_empty() {
                    Ok(Path::identity(at))
                } else {
                    Path::parse(&c.base, t)
                }
            };
            let left = whisker(left, s.start)?;
            let right = whisker(right, s.end(&c.base))?;
            factors.push(WhiskerFactor {
                left,
                gen: idx,
                inv,
                right,
            });
        }
        let source = factors[0].source(c)?;
        let w = TwoCellWord { source, factors };
        w.check(c)?;
        Ok(w)
    }

    pub fn display(&self, c: &Computad2) -> String {
        if self.factors.is_empty() {
            return format!("id({})", self.source.display(&c.base));
        }
        self.factors
            .iter()
            .map(|f| f.display(c))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeCell {
    pub name: String,
    pub source: TwoCellWord,
    pub target: TwoCellWord,
}

/// A 2-computad with 3-cells between parallel 2-cell words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computad3 {
    pub base: Computad2,
    pub cells3: Vec<ThreeCell>,
}

impl Computad3 {
    pub fn new(base: Computad2, cells3: Vec<ThreeCell>) -> Result<Self> {
        let c = Computad3 { base, cells3 };
        if let Some(p) = c.validate().into_iter().next() {
            return Err(Error::InvalidTwoCellWord(p));
        }
        Ok(c)
    }

    pub fn validate(&self) -> Vec<String> {
        let c = &self.base;
        let mut out = Vec::new();
        let mut names = HashSet::new();
        for cell in &self.cells3 {
            if !names.insert(cell.name.as_str()) {
                out.push(format!("duplicate id: 3-cell {}", cell.name));
            }
            for w in [&cell.source, &cell.target] {
                for p in w.validate(c) {
                    out.push(format!("3-cell {}: {p}", cell.name));
                }
            }
            let ends = |w: &TwoCellWord| Ok::<_, Error>((w.source.clone(), w.target(c)?));
            if let (Ok(a), Ok(b)) = (ends(&cell.source), ends(&cell.target)) {
                if a != b {
                    out.push(format!("not parallel: 3-cell {}", cell.name));
                }
            }
        }
        out
    }

    /// Parses `(name, source, target)` texts against the base.
    pub fn from_texts(base: Computad2, cells: &[(&str, &str, &str)]) -> Result<Self> {
        let cells3 = cells
            .iter()
            .map(|(n, s, t)| {
                Ok(ThreeCell {
                    name: n.to_string(),
                    source: TwoCellWord::parse(&base, s)?,
                    target: TwoCellWord::parse(&base, t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Computad3::new(base, cells3)
    }

    /// Boundary of each 3-cell as source minus target exponent sums.
    pub fn boundary_vectors(&self) -> Vec<Vec<i64>> {
        let n = self.base.cells.len();
        self.cells3
            .iter()
            .map(|c| {
                let s = c.source.exponent_sums(n);
                let t = c.target.exponent_sums(n);
                s.iter().zip(&t).map(|(a, b)| a - b).collect()
            })
            .collect()
    }
}

/// The sub-computad with every object and arrow of `c` and the given cells.
pub fn full_subcomputad(c: &Computad2, cells: impl IntoIterator<Item = usize>) -> SubComputad {
    SubComputad {
        objects: c.base.objects().collect(),
        arrows: c.base.arrow_ids().collect(),
        cells: cells.into_iter().collect(),
    }
}

/// How a cell may be paired with the generator it eliminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PairingRule {
    /// One side is exactly `[f]`, the other a word in earlier generators.
    Constructive,
    /// `f` occurs exactly once in the cyclically reduced boundary word and
    /// every other letter is an earlier generator (an elementary collapse).
    Collapse,
}

/// A collapse order: each cell paired with the 1-cell it eliminates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pairing {
    pub steps: Vec<(usize, usize)>,
    /// Every step has a side that is exactly the paired 1-cell.
    pub constructive: bool,
}

fn cyclic_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut w = free_reduce(letters);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
        w.pop();
        w.remove(0);
    }
    w
}

fn pairable(c: &Computad2, cell: usize, paired: &[bool], rule: PairingRule) -> Option<ArrowId> {
    let TwoCell { source, target, .. } = &c.cells[cell];
    match rule {
        PairingRule::Constructive => {
            for (side, other) in [(source, target), (target, source)] {
                if let [f] = side.arrows[..] {
                    if !paired[f.0] && other.arrows.iter().all(|a| paired[a.0]) {
                        return Some(f);
                    }
                }
            }
            None
        }
        PairingRule::Collapse => {
            let letters: Vec<Letter> = source
                .arrows
                .iter()
                .map(|&a| Letter::pos(a))
                .chain(target.arrows.iter().rev().map(|&a| Letter::neg(a)))
                .collect();
            let free: Vec<ArrowId> = cyclic_reduce(&letters)
                .iter()
                .map(|l| l.arrow)
                .filter(|a| !paired[a.0])
                .collect();
            match free[..] {
                [f] => Some(f),
                _ => None,
            }
        }
    }
}

/// Pairs every arrow of the one-object computad `c` with one of `cells`.
fn find_pairing(
    c: &Computad2,
    cells: &[usize],
    rule: PairingRule,
) -> Option<Vec<(usize, ArrowId)>> {
    fn go(
        c: &Computad2,
        cells: &[usize],
        rule: PairingRule,
        paired: &mut Vec<bool>,
        steps: &mut Vec<(usize, ArrowId)>,
        failed: &mut HashSet<Vec<bool>>,
    ) -> bool {
        if paired.iter().all(|&p| p) {
            return true;
        }
        if failed.contains(paired) {
            return false;
        }
        for &cell in cells {
            if steps.iter().any(|&(used, _)| used == cell) {
                continue;
            }
            if let Some(f) = pairable(c, cell, paired, rule) {
                paired[f.0] = true;
                steps.push((cell, f));
                if go(c, cells, rule, paired, steps, failed) {
                    return true;
                }
                steps.pop();
                paired[f.0] = false;
            }
        }
        failed.insert(paired.clone());
        false
    }
    let mut paired = vec![false; c.base.arrow_count()];
    let mut steps = Vec::new();
    go(c, cells, rule, &mut paired, &mut steps, &mut HashSet::new()).then_some(steps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum FcsVerdict {
    Yes { pairing: Pairing },
    No { reason: String },
    Unknown,
}

impl FcsVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, FcsVerdict::Yes { .. })
    }
}

/// Decides whether `candidate` is a full contractible subcomputad of the
/// one-object computad `ambient`.
///
/// Yes comes with a collapse order of the candidate's complex onto its
/// point; No only with a certified obstruction (a missing 1-cell, Euler
/// characteristic ≠ 1, nonzero second homology or a nontrivial fundamental
/// group); anything else is Unknown.
pub fn is_fcs(candidate: &SubComputad, ambient: &Computad2) -> Result<FcsVerdict> {
    is_fcs_with_limits(candidate, ambient, &Limits::default())
}

pub fn is_fcs_with_limits(
    candidate: &SubComputad,
    ambient: &Computad2,
    limits: &Limits,
) -> Result<FcsVerdict> {
    let g = &ambient.base;
    if g.object_count() != 1 {
        return Err(Error::MultipleZeroCells);
    }
    ambient.check_subcomputad(candidate)?;
    if let Some(a) = g.arrow_ids().find(|a| !candidate.arrows.contains(a)) {
        return Ok(FcsVerdict::No {
            reason: format!("missing 1-cell {}", g.arrow_name(a)),
        });
    }
    let cells: Vec<usize> = candidate.cells.iter().copied().collect();
    if cells.len() != g.arrow_count() {
        return Ok(FcsVerdict::No {
            reason: format!(
                "{} 2-cells for {} 1-cells: Euler characteristic is not 1",
                cells.len(),
                g.arrow_count()
            ),
        });
    }
    for (rule, constructive) in [
        (PairingRule::Constructive, true),
        (PairingRule::Collapse, false),
    ] {
        if let Some(steps) = find_pairing(ambient, &cells, rule) {
            return Ok(FcsVerdict::Yes {
                pairing: Pairing {
                    steps: steps.into_iter().map(|(c, a)| (c, a.0)).collect(),
                    constructive,
                },
            });
        }
    }
    let rows: Vec<Vec<i64>> = cells
        .iter()
        .map(|&i| {
            let mut row = vec![0; g.arrow_count()];
            for &a in &ambient.cells[i].source.arrows {
                row[a.0] += 1;
            }
            for &a in &ambient.cells[i].target.arrows {
                row[a.0] -= 1;
            }
            row
        })
        .collect();
    let b2 = cells.len() - rank(&rows);
    if b2 > 0 {
        return Ok(FcsVerdict::No {
            reason: format!("second homology has rank {b2}"),
        });
    }
    let group = GroupPresentation {
        generators: g.arrow_ids().map(|a| g.arrow_name(a).to_string()).collect(),
        relators: cells
            .iter()
            .map(|&i| {
                let cell = &ambient.cells[i];
                let letters: Vec<Letter> = cell
                    .source
                    .arrows
                    .iter()
                    .map(|&a| Letter::pos(a))
                    .chain(cell.target.arrows.iter().rev().map(|&a| Letter::neg(a)))
                    .collect();
                let all: Vec<Option<usize>> = g.arrow_ids().map(|a| Some(a.0)).collect();
                crate::presentation::group::relator_word(&letters, &all)
            })
            .collect(),
    };
    if let Triviality::No(_) = is_trivial_group(&group, limits) {
        return Ok(FcsVerdict::No {
            reason: "nontrivial fundamental group".into(),
        });
    }
    Ok(FcsVerdict::Unknown)
}

/// A maximal tree, the one-object collapse along it, and an f.c.s. of the
/// collapse given by a constructive pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcsTriple {
    pub tree: Subgraph,
    pub collapse: Collapse<Path>,
    /// Cells of the collapsed computad, in pairing order.
    pub pairing: Vec<(usize, ArrowId)>,
}

impl FcsTriple {
    pub fn fcs(&self) -> SubComputad {
        full_subcomputad(
            &self.collapse.computad,
            self.pairing.iter().map(|&(c, _)| c),
        )
    }

    /// Original cells that survive the collapse but are not in the f.c.s.
    pub fn outside_cells(&self) -> Vec<usize> {
        let fcs: BTreeSet<usize> = self.pairing.iter().map(|&(c, _)| c).collect();
        self.collapse
            .cell_map
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.filter(|q| !fcs.contains(q)).map(|_| i))
            .collect()
    }
}

fn collapse_tree(c: &Computad2, tree: &Subgraph) -> Result<Collapse<Path>> {
    let g = &c.base;
    let spanning = tree.objects.len() == g.object_count() && tree.is_valid_in(g);
    if !spanning || !g.restrict(tree).0.is_tree() {
        return Err(Error::NotFcsTriple("not a maximal tree".into()));
    }
    c.quotient_collapse_with_map(&SubComputad::of_subgraph(tree))
}

/// Searches spanning trees in enumeration order for one whose collapse has
/// a constructive f.c.s.
pub fn find_fcs_triple(c: &Computad2) -> Option<FcsTriple> {
    if !c.base.is_connected() {
        return None;
    }
    let mut found = None;
    let mut budget = 5_000usize;
    for_each_spanning_tree(&c.base, &mut |arrows: &[ArrowId]| {
        budget -= 1;
        let tree = Subgraph::spanning(&c.base, arrows.iter().copied());
        if let Ok(collapse) = collapse_tree(c, &tree) {
            let q = &collapse.computad;
            let all: Vec<usize> = (0..q.cells.len()).collect();
            if let Some(pairing) = find_pairing(q, &all, PairingRule::Constructive) {
                found = Some(FcsTriple {
                    tree,
                    collapse,
                    pairing,
                });
                return true;
            }
        }
        budget == 0
    });
    found
}

/// Builds the triple from a chosen tree and f.c.s. cells of the collapse.
pub fn fcs_triple(c: &Computad2, tree: &Subgraph, fcs: &SubComputad) -> Result<FcsTriple> {
    let collapse = collapse_tree(c, tree)?;
    let q = &collapse.computad;
    let cells: Vec<usize> = fcs.cells.iter().copied().collect();
    let full = full_subcomputad(q, cells.iter().copied());
    if !is_fcs(&full, q)?.is_yes() {
        return Err(Error::NotFcsTriple(
            "cells are not an f.c.s. of the collapse".into(),
        ));
    }
    let pairing = find_pairing(q, &cells, PairingRule::Constructive).ok_or_else(|| {
        Error::NotFcsTriple("no pairing with a single-letter side per cell".into())
    })?;
    Ok(FcsTriple {
        tree: tree.clone(),
        collapse,
        pairing,
    })
}

/// The 3-cells eliminating every non-f.c.s. 2-cell, on the collapse and
/// lifted back to the original computad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synth320 {
    pub triple: FcsTriple,
    pub collapsed: Computad3,
    pub lifted: Computad3,
    /// Cells whose 3-cell could not be lifted within the search budget.
    pub unlifted: Vec<String>,
}

/// `ρ_f : [f] ⇒ w_f` per paired generator, as (cell, inverted, w_f).
fn contraction_table(
    q: &Computad2,
    pairing: &[(usize, ArrowId)],
) -> Vec<Option<(usize, bool, Path)>> {
    let mut table = vec![None; q.base.arrow_count()];
    for &(cell, f) in pairing {
        let TwoCell { source, target, .. } = &q.cells[cell];
        table[f.0] = Some(if source.arrows == [f] {
            (cell, false, target.clone())
        } else {
            (cell, true, source.clone())
        });
    }
    table
}

/// A word from `p` down to the identity using the contraction table.
fn contract(q: &Computad2, table: &[Option<(usize, bool, Path)>], p: &Path) -> Result<TwoCellWord> {
    let g = &q.base;
    let mut word = TwoCellWord::identity(p.clone());
    let mut cur = p.clone();
    while let Some(&a) = cur.arrows.first() {
        let (cell, inv, w) = table[a.0]
            .clone()
            .ok_or_else(|| Error::NotFcsTriple(format!("unpaired 1-cell {}", g.arrow_name(a))))?;
        let rest = cur.segment(g, 1..cur.len());
        let step = TwoCellWord::factor(q, Path::identity(cur.start), cell, inv, rest.clone())?;
        word = word.then(q, &step)?;
        cur = w.compose(g, &rest)?;
        if word.len() > 100_000 {
            return Err(Error::NotFcsTriple("contraction too long".into()));
        }
    }
    Ok(word)
}

/// Positive path along tree arrows from `x` to `z`, if any.
fn tree_path(g: &Graph, tree: &Subgraph, x: ObjectId, z: ObjectId) -> Option<Path> {
    let mut prev: HashMap<ObjectId, ArrowId> = HashMap::new();
    let mut queue = VecDeque::from([x]);
    let mut seen = HashSet::from([x]);
    while let Some(v) = queue.pop_front() {
        if v == z {
            let mut arrows = Vec::new();
            let mut at = z;
            while at != x {
                let a = prev[&at];
                arrows.push(a);
                at = g.dom(a);
            }
            arrows.reverse();
            return Some(Path { start: x, arrows });
        }
        for &a in &tree.arrows {
            if g.dom(a) == v && seen.insert(g.cod(a)) {
                prev.insert(g.cod(a), a);
                queue.push_back(g.cod(a));
            }
        }
    }
    None
}

/// Shortest rewrite of `from` into `to` by whiskered `cells` in either
/// direction, exploring paths of bounded length.
fn rewrite_search(c: &Computad2, cells: &[usize], from: &Path, to: &Path) -> Option<TwoCellWord> {
    let g = &c.base;
    let max_len = from.len().max(to.len()) + 3;
    let objects_along = |p: &Path| {
        let mut v = vec![p.start];
        v.extend(p.arrows.iter().map(|&a| g.cod(a)));
        v
    };
    let mut prev: HashMap<Path, (Path, WhiskerFactor)> = HashMap::new();
    let mut queue = VecDeque::from([from.clone()]);
    let mut seen = HashSet::from([from.clone()]);
    while let Some(p) = queue.pop_front() {
        if &p == to {
            let mut factors = Vec::new();
            let mut at = p;
            while let Some((before, f)) = prev.get(&at) {
                factors.push(f.clone());
                at = before.clone();
            }
            factors.reverse();
            return Some(TwoCellWord {
                source: from.clone(),
                factors,
            });
        }
        if seen.len() > 50_000 {
            return None;
        }
        let objs = objects_along(&p);
        for &cell in cells {
            for inv in [false, true] {
                let TwoCell { source, target, .. } = &c.cells[cell];
                let (s, t) = if inv {
                    (target, source)
                } else {
                    (source, target)
                };
                for i in 0..=p.len() {
                    let j = i + s.len();
                    if j > p.len() || p.arrows[i..j] != s.arrows[..] || objs[i] != s.start {
                        continue;
                    }
                    if p.len() - s.len() + t.len() > max_len {
                        continue;
                    }
                    let left = p.segment(g, 0..i);
                    let right = p.segment(g, j..p.len());
                    let mut arrows = left.arrows.clone();
                    arrows.extend_from_slice(&t.arrows);
                    arrows.extend_from_slice(&right.arrows);
                    let next = Path {
                        start: p.start,
                        arrows,
                    };
                    if seen.insert(next.clone()) {
                        let f = WhiskerFactor {
                            left,
                            gen: cell,
                            inv,
                            right,
                        };
                        prev.insert(next.clone(), (p.clone(), f));
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    None
}

/// One 3-cell `α ⟹ α̇` per 2-cell α outside the f.c.s., where α̇ contracts
/// the source of α to the identity through the f.c.s. and expands back to
/// the target.
///
/// On the collapse the contraction is exact. On the original computad the
/// 3-cell is `[p | α | q] ⟹ …` with `p`, `q` the shortest positive tree
/// paths that make `p·α·q` land on a positive tree path, found by search.
pub fn synth_320_presentation(
    c: &Computad2,
    tree: &Subgraph,
    fcs: &SubComputad,
) -> Result<Synth320> {
    let triple = fcs_triple(c, tree, fcs)?;
    synth_320_from_triple(c, triple)
}

pub fn synth_320_from_triple(c: &Computad2, triple: FcsTriple) -> Result<Synth320> {
    let q = &triple.collapse.computad;
    let table = contraction_table(q, &triple.pairing);
    let outside = triple.outside_cells();
    let mut collapsed = Vec::new();
    for &i in &outside {
        let qi = triple.collapse.cell_map[i].expect("outside cells survive");
        let cell = &q.cells[qi];
        let down = contract(q, &table, &cell.source)?;
        let up = contract(q, &table, &cell.target)?.inverse(q)?;
        collapsed.push(ThreeCell {
            name: cell.name.clone(),
            source: TwoCellWord::factor(
                q,
                Path::identity(cell.source.start),
                qi,
                false,
                Path::identity(cell.source.start),
            )?,
            target: down.then(q, &up)?,
        });
    }
    let collapsed = Computad3::new(q.clone(), collapsed)?;

    let fcs_original: Vec<usize> = triple
        .collapse
        .cell_map
        .iter()
        .enumerate()
        .filter_map(|(i, m)| {
            m.filter(|qc| triple.pairing.iter().any(|&(p, _)| p == *qc))
                .map(|_| i)
        })
        .collect();
    let mut lifted = Vec::new();
    let mut unlifted = Vec::new();
    for &i in &outside {
        let cell = &c.cells[i];
        match lift_cell(c, &triple.tree, &fcs_original, i) {
            Some((source, target)) => lifted.push(ThreeCell {
                name: cell.name.clone(),
                source,
                target,
            }),
            None => unlifted.push(cell.name.clone()),
        }
    }
    Ok(Synth320 {
        collapsed,
        lifted: Computad3::new(c.clone(), lifted)?,
        unlifted,
        triple,
    })
}

fn lift_cell(
    c: &Computad2,
    tree: &Subgraph,
    fcs: &[usize],
    i: usize,
) -> Option<(TwoCellWord, TwoCellWord)> {
    let g = &c.base;
    let cell = &c.cells[i];
    let (x, y) = (cell.source.start, cell.source.end(g));
    let mut candidates = Vec::new();
    for b in g.objects() {
        let Some(p) = tree_path(g, tree, b, x) else {
            continue;
        };
        for e in g.objects() {
            let Some(q) = tree_path(g, tree, y, e) else {
                continue;
            };
            let Some(t) = tree_path(g, tree, b, e) else {
                continue;
            };
            candidates.push((p.len() + q.len(), p.clone(), q, t));
        }
    }
    // Shortest whiskers first; a longer context may expose rewrites that a
    // shorter one hides.
    candidates.sort_by_key(|(cost, ..)| *cost);
    candidates.into_iter().find_map(|(_, p, q, t)| {
        let whisk = |mid: &Path| p.compose(g, mid).and_then(|m| m.compose(g, &q)).ok();
        let (from_s, from_t) = (whisk(&cell.source)?, whisk(&cell.target)?);
        let down = rewrite_search(c, fcs, &from_s, &t)?;
        let up = rewrite_search(c, fcs, &from_t, &t)?.inverse(c).ok()?;
        let source = TwoCellWord::factor(c, p, i, false, q).ok()?;
        Some((source, down.then(c, &up).ok()?))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotThinReason {
    Pi2Rank { rank: usize },
    EulerCharacteristic { chi: i64 },
}

impl fmt::Display for NotThinReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotThinReason::Pi2Rank { rank } => write!(f, "second homotopy group has rank {rank}"),
            NotThinReason::EulerCharacteristic { chi } => {
                write!(f, "Euler characteristic {chi} exceeds 1")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ThinCriteria {
    NotThin { reason: NotThinReason },
    ThinByFcs { tree: Vec<String>, fcs: Vec<String> },
    Unknown,
}

/// Sufficient criteria for the (2,0)-category presented by `c3` to be or
/// not be locally thin.
///
/// The positive route needs an f.c.s. triple whose outside 2-cells are each
/// killed by the 3-cells, checked on exponent sums: the 3-cell boundaries
/// projected onto the outside cells must span the integer lattice.
pub fn locally_thin_criteria(c3: &Computad3, limits: &Limits) -> ThinCriteria {
    let cw = f_top3(c3);
    if let Pi2Status::Rank(rank) = pi2_rank_if_simply_connected(&cw, limits) {
        if rank > 0 {
            return ThinCriteria::NotThin {
                reason: NotThinReason::Pi2Rank { rank },
            };
        }
    }
    let chi = cw.euler_char();
    if chi > 1 {
        return ThinCriteria::NotThin {
            reason: NotThinReason::EulerCharacteristic { chi },
        };
    }
    let Some(triple) = find_fcs_triple(&c3.base) else {
        return ThinCriteria::Unknown;
    };
    let outside = triple.outside_cells();
    let rows: Vec<Vec<i64>> = c3
        .boundary_vectors()
        .iter()
        .map(|v| outside.iter().map(|&i| v[i]).collect())
        .collect();
    if outside.is_empty() || cokernel(&rows, outside.len()).is_trivial() {
        let g = &c3.base.base;
        let q = &triple.collapse.computad;
        ThinCriteria::ThinByFcs {
            tree: triple
                .tree
                .arrow_names(g)
                .into_iter()
                .map(String::from)
                .collect(),
            fcs: triple
                .pairing
                .iter()
                .map(|&(cell, _)| q.cells[cell].name.clone())
                .collect(),
        }
    } else {
        ThinCriteria::Unknown
    }
}

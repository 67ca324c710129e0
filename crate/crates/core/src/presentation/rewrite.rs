//! Knuth–Bendix completion for path rewriting on a graph.
//!
//! Words are typed strings of arrows; every rule has a nonempty left side
//! parallel to its right side. Terms are compared by length, then
//! lexicographically by arrow declaration order.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::computad::Computad2;
use crate::free::{is_acyclic, HomCount, Path};
use crate::graph::{ArrowId, Graph, ObjectId};
use crate::presentation::finite::present_category_finite;
use crate::presentation::{Limits, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Path,
    pub rhs: Path,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    pub base: Graph,
    /// Rules ordered by left side.
    pub rules: Vec<RewriteRule>,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completion {
    Complete(RewriteSystem),
    /// The budget ran out; the partial system is sound but may not decide
    /// equality.
    Timeout(RewriteSystem),
}

impl Completion {
    pub fn system(&self) -> &RewriteSystem {
        match self {
            Completion::Complete(rs) | Completion::Timeout(rs) => rs,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Completion::Complete(_))
    }
}

type Word = Vec<ArrowId>;

/// `a > b` in the length-lexicographic order.
fn greater(a: &[ArrowId], b: &[ArrowId]) -> bool {
    (a.len(), a) > (b.len(), b)
}

/// Rules indexed for leftmost matching.
#[derive(Debug, Default, Clone)]
struct RuleSet {
    rules: Vec<Option<(Word, Word)>>,
    by_lhs: HashMap<Word, usize>,
    lengths: Vec<usize>,
}

impl RuleSet {
    fn rebuild_lengths(&mut self) {
        let set: HashSet<usize> = self.by_lhs.keys().map(Vec::len).collect();
        self.lengths = set.into_iter().collect();
        self.lengths.sort_unstable();
    }

    fn insert(&mut self, lhs: Word, rhs: Word) -> usize {
        let i = self.rules.len();
        self.by_lhs.insert(lhs.clone(), i);
        self.rules.push(Some((lhs, rhs)));
        self.rebuild_lengths();
        i
    }

    fn remove(&mut self, i: usize) -> (Word, Word) {
        let rule = self.rules[i].take().expect("rule is alive");
        self.by_lhs.remove(&rule.0);
        self.rebuild_lengths();
        rule
    }

    fn alive(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rules.len()).filter(|&i| self.rules[i].is_some())
    }

    fn len(&self) -> usize {
        self.by_lhs.len()
    }

    /// Leftmost redex: the occurrence with the smallest end index.
    fn find_redex(&self, w: &[ArrowId]) -> Option<(usize, usize)> {
        for end in 1..=w.len() {
            for &l in &self.lengths {
                if l > end {
                    break;
                }
                if let Some(&i) = self.by_lhs.get(&w[end - l..end]) {
                    return Some((end - l, i));
                }
            }
        }
        None
    }

    /// Rewrites to normal form, charging one step per rewrite. Returns
    /// `None` when the budget is exhausted.
    fn normalize(&self, w: &[ArrowId], steps: &mut usize, max_steps: usize) -> Option<Word> {
        let mut w = w.to_vec();
        while let Some((at, i)) = self.find_redex(&w) {
            *steps += 1;
            if *steps > max_steps {
                return None;
            }
            let (lhs, rhs) = self.rules[i].as_ref().expect("indexed rule is alive");
            w.splice(at..at + lhs.len(), rhs.iter().copied());
        }
        Some(w)
    }
}

fn contains(hay: &[ArrowId], needle: &[ArrowId]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Critical pairs of `(l1 → r1)` against `(l2 → r2)`: proper overlaps of a
/// suffix of `l1` with a prefix of `l2`, and occurrences of `l2` inside `l1`.
fn critical_pairs(a: &(Word, Word), b: &(Word, Word), same: bool) -> Vec<(Word, Word)> {
    let ((l1, r1), (l2, r2)) = (a, b);
    let mut out = Vec::new();
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let mut left = r1.clone();
            left.extend_from_slice(&l2[k..]);
            let mut right = l1[..l1.len() - k].to_vec();
            right.extend_from_slice(r2);
            out.push((left, right));
        }
    }
    if !same && l2.len() <= l1.len() {
        for at in 0..=l1.len() - l2.len() {
            if l1[at..at + l2.len()] == l2[..] {
                let mut right = l1[..at].to_vec();
                right.extend_from_slice(r2);
                right.extend_from_slice(&l1[at + l2.len()..]);
                out.push((r1.clone(), right));
            }
        }
    }
    out
}

fn to_system(g: &Graph, rules: &RuleSet, complete: bool) -> RewriteSystem {
    let mut out: Vec<RewriteRule> = rules
        .alive()
        .map(|i| {
            let (l, r) = rules.rules[i].as_ref().expect("alive");
            let start = g.dom(l[0]);
            RewriteRule {
                lhs: Path {
                    start,
                    arrows: l.clone(),
                },
                rhs: Path {
                    start,
                    arrows: r.clone(),
                },
            }
        })
        .collect();
    out.sort_by(|a, b| a.lhs.shortlex_key().cmp(&b.lhs.shortlex_key()));
    RewriteSystem {
        base: g.clone(),
        rules: out,
        complete,
    }
}

/// Orients the 2-cells and completes them. Cells with identical sides are
/// dropped.
pub fn knuth_bendix(c: &Computad2, limits: &Limits) -> Completion {
    let g = &c.base;
    let mut pending: VecDeque<(Word, Word)> = c
        .cells
        .iter()
        .map(|cell| (cell.source.arrows.clone(), cell.target.arrows.clone()))
        .collect();
    let mut rules = RuleSet::default();
    let mut steps = 0usize;
    let timeout = |rules: &RuleSet| Completion::Timeout(to_system(g, rules, false));
    while let Some((s, t)) = pending.pop_front() {
        let (Some(s), Some(t)) = (
            rules.normalize(&s, &mut steps, limits.max_steps),
            rules.normalize(&t, &mut steps, limits.max_steps),
        ) else {
            return timeout(&rules);
        };
        if s == t {
            continue;
        }
        let (lhs, rhs) = if greater(&s, &t) { (s, t) } else { (t, s) };
        // Rules whose left side contains the new one turn back into equations.
        let displaced: Vec<usize> = rules
            .alive()
            .filter(|&i| contains(&rules.rules[i].as_ref().expect("alive").0, &lhs))
            .collect();
        for i in displaced {
            pending.push_back(rules.remove(i));
        }
        let new = rules.insert(lhs, rhs);
        for i in rules.alive().collect::<Vec<_>>() {
            if i == new {
                continue;
            }
            let rhs = rules.rules[i].as_ref().expect("alive").1.clone();
            let Some(nf) = rules.normalize(&rhs, &mut steps, limits.max_steps) else {
                return timeout(&rules);
            };
            rules.rules[i].as_mut().expect("alive").1 = nf;
        }
        let new_rule = rules.rules[new].clone().expect("alive");
        for i in rules.alive().collect::<Vec<_>>() {
            let other = rules.rules[i].as_ref().expect("alive");
            let same = i == new;
            steps += new_rule.0.len() + other.0.len();
            pending.extend(critical_pairs(&new_rule, other, same));
            if !same {
                pending.extend(critical_pairs(other, &new_rule, false));
            }
        }
        if rules.len() > limits.max_rules || steps > limits.max_steps {
            return timeout(&rules);
        }
    }
    Completion::Complete(to_system(g, &rules, true))
}

fn rule_set(rs: &RewriteSystem) -> RuleSet {
    let mut set = RuleSet::default();
    for r in &rs.rules {
        set.insert(r.lhs.arrows.clone(), r.rhs.arrows.clone());
    }
    set
}

/// Exhaustive leftmost rewriting. For a complete system, equal morphisms have
/// equal normal forms.
pub fn normal_form(p: &Path, rs: &RewriteSystem) -> Path {
    let mut steps = 0;
    let arrows = rule_set(rs)
        .normalize(&p.arrows, &mut steps, usize::MAX)
        .expect("unbounded budget");
    Path {
        start: p.start,
        arrows,
    }
}

/// Irreducible words form a regular language; this automaton tracks the
/// longest suffix that is a proper prefix of some left side.
struct IrreducibleAutomaton<'a> {
    g: &'a Graph,
    lhs: HashSet<Word>,
    prefixes: HashSet<Word>,
    out: Vec<Vec<ArrowId>>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    object: ObjectId,
    suffix: Word,
}

impl<'a> IrreducibleAutomaton<'a> {
    fn new(rs: &'a RewriteSystem) -> Self {
        let lhs: HashSet<Word> = rs.rules.iter().map(|r| r.lhs.arrows.clone()).collect();
        let mut prefixes = HashSet::new();
        for l in &lhs {
            for k in 1..l.len() {
                prefixes.insert(l[..k].to_vec());
            }
        }
        IrreducibleAutomaton {
            g: &rs.base,
            lhs,
            prefixes,
            out: rs.base.out_arrows(),
        }
    }

    fn step(&self, s: &State, a: ArrowId) -> Option<State> {
        let mut w = s.suffix.clone();
        w.push(a);
        for k in 1..=w.len() {
            if self.lhs.contains(&w[w.len() - k..]) {
                return None;
            }
        }
        let suffix = (1..=w.len())
            .rev()
            .map(|k| &w[w.len() - k..])
            .find(|suf| self.prefixes.contains(*suf))
            .map(<[ArrowId]>::to_vec)
            .unwrap_or_default();
        Some(State {
            object: self.g.cod(a),
            suffix,
        })
    }

    /// Number of irreducible paths `x → z`.
    fn count(&self, x: ObjectId, z: ObjectId) -> HomCount {
        let start = State {
            object: x,
            suffix: Vec::new(),
        };
        let mut ids: HashMap<State, usize> = HashMap::from([(start.clone(), 0)]);
        let mut states = vec![start];
        let mut edges: Vec<Vec<usize>> = vec![Vec::new()];
        let mut i = 0;
        while i < states.len() {
            let s = states[i].clone();
            for &a in &self.out[s.object.0] {
                if let Some(t) = self.step(&s, a) {
                    let j = *ids.entry(t.clone()).or_insert_with(|| {
                        states.push(t);
                        edges.push(Vec::new());
                        states.len() - 1
                    });
                    edges[i].push(j);
                }
            }
            i += 1;
        }
        let n = states.len();
        let mut rev = vec![Vec::new(); n];
        for (i, es) in edges.iter().enumerate() {
            for &j in es {
                rev[j].push(i);
            }
        }
        let mut useful = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&i| states[i].object == z).collect();
        for &i in &stack {
            useful[i] = true;
        }
        while let Some(j) = stack.pop() {
            for &i in &rev[j] {
                if !useful[i] {
                    useful[i] = true;
                    stack.push(i);
                }
            }
        }
        // Kahn's algorithm on the useful part; leftover states lie on a cycle.
        let mut indeg = vec![0usize; n];
        for i in (0..n).filter(|&i| useful[i]) {
            for &j in &edges[i] {
                if useful[j] {
                    indeg[j] += 1;
                }
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| useful[i] && indeg[i] == 0).collect();
        let mut order = Vec::new();
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for &j in &edges[i] {
                if useful[j] {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        queue.push_back(j);
                    }
                }
            }
        }
        if order.len() < useful.iter().filter(|&&u| u).count() {
            return HomCount::Infinite;
        }
        let mut ways = vec![0u128; n];
        if useful[0] {
            ways[0] = 1;
        }
        let mut total = 0u128;
        for &i in &order {
            if states[i].object == z {
                total = total.saturating_add(ways[i]);
            }
            for &j in &edges[i] {
                if useful[j] {
                    ways[j] = ways[j].saturating_add(ways[i]);
                }
            }
        }
        HomCount::Finite(total)
    }
}

impl RewriteSystem {
    /// Number of irreducible paths `x → z`; for a complete system this is the
    /// size of the hom-set of the presented category.
    pub fn hom_count(&self, x: ObjectId, z: ObjectId) -> HomCount {
        IrreducibleAutomaton::new(self).count(x, z)
    }

    pub fn hom_counts(&self) -> Vec<((ObjectId, ObjectId), HomCount)> {
        let automaton = IrreducibleAutomaton::new(self);
        let mut out = Vec::new();
        for x in self.base.objects() {
            for z in self.base.objects() {
                out.push(((x, z), automaton.count(x, z)));
            }
        }
        out
    }

    /// Every critical pair joins; used as an independent completeness check.
    pub fn is_locally_confluent(&self) -> bool {
        let words: Vec<(Word, Word)> = self
            .rules
            .iter()
            .map(|r| (r.lhs.arrows.clone(), r.rhs.arrows.clone()))
            .collect();
        let set = rule_set(self);
        let nf = |w: &Word| {
            let mut steps = 0;
            set.normalize(w, &mut steps, usize::MAX).expect("unbounded")
        };
        for (i, a) in words.iter().enumerate() {
            for (j, b) in words.iter().enumerate() {
                for (s, t) in critical_pairs(a, b, i == j) {
                    if nf(&s) != nf(&t) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Whether the presented category has at most one morphism per hom-set.
///
/// Acyclic bases are decided exactly by congruence closure. Otherwise a
/// complete rewriting system decides it by counting irreducible paths; a
/// timeout gives `Unknown`.
pub fn is_thin_category(c: &Computad2, limits: &Limits) -> Verdict {
    if is_acyclic(&c.base) {
        return match present_category_finite(c) {
            Ok(q) if q.is_thin() => Verdict::Yes,
            Ok(_) => Verdict::No,
            Err(_) => Verdict::Unknown,
        };
    }
    match knuth_bendix(c, limits) {
        Completion::Complete(rs) => {
            let thin = rs
                .hom_counts()
                .iter()
                .all(|(_, n)| matches!(n, HomCount::Finite(0 | 1)));
            if thin {
                Verdict::Yes
            } else {
                Verdict::No
            }
        }
        Completion::Timeout(_) => Verdict::Unknown,
    }
}

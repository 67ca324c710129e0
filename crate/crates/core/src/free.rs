//! Free categories and free groupoids on a graph.
//!
//! Morphisms of the free category are [`Path`]s, morphisms of the free
//! groupoid are reduced [`Walk`]s. Both are stored in diagrammatic order: the
//! first arrow traversed comes first.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::computad::{Computad2, GroupoidalComputad2, TwoCell};
use crate::error::{Error, Result};
use crate::graph::{ArrowId, Graph, ObjectId};

/// A composable list of arrows starting at `start`. Empty lists are identities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: ObjectId,
    pub arrows: Vec<ArrowId>,
}

impl Path {
    pub fn identity(x: ObjectId) -> Self {
        Path {
            start: x,
            arrows: Vec::new(),
        }
    }

    pub fn single(g: &Graph, a: ArrowId) -> Self {
        Path {
            start: g.dom(a),
            arrows: vec![a],
        }
    }

    pub fn new(g: &Graph, start: ObjectId, arrows: Vec<ArrowId>) -> Result<Self> {
        let mut at = start;
        for &a in &arrows {
            if a.0 >= g.arrow_count() {
                return Err(Error::UnknownArrow(format!("#{}", a.0)));
            }
            if g.dom(a) != at {
                return Err(Error::NotComposable(format!(
                    "arrow {} does not start at {}",
                    g.arrow_name(a),
                    g.object_name(at)
                )));
            }
            at = g.cod(a);
        }
        Ok(Path { start, arrows })
    }

    /// Builds a nonempty path from arrow names.
    pub fn from_names(g: &Graph, names: &[&str]) -> Result<Self> {
        let arrows = names
            .iter()
            .map(|n| {
                g.arrow_id(n)
                    .ok_or_else(|| Error::UnknownArrow(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let start = match arrows.first() {
            Some(&a) => g.dom(a),
            None => return Err(Error::NotComposable("empty name list".into())),
        };
        Path::new(g, start, arrows)
    }

    pub fn end(&self, g: &Graph) -> ObjectId {
        self.arrows.last().map_or(self.start, |&a| g.cod(a))
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`.
    pub fn compose(&self, g: &Graph, other: &Path) -> Result<Path> {
        if self.end(g) != other.start {
            return Err(Error::NotComposable(format!(
                "path ends at {} but the next starts at {}",
                g.object_name(self.end(g)),
                g.object_name(other.start)
            )));
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Ok(Path {
            start: self.start,
            arrows,
        })
    }

    /// The unique factorization into length-one paths.
    pub fn factorize(&self, g: &Graph) -> Vec<Path> {
        self.arrows.iter().map(|&a| Path::single(g, a)).collect()
    }

    /// Sub-path made of the arrows in `range`.
    pub fn segment(&self, g: &Graph, range: std::ops::Range<usize>) -> Path {
        let start = if range.start == 0 {
            self.start
        } else {
            g.cod(self.arrows[range.start - 1])
        };
        Path {
            start,
            arrows: self.arrows[range].to_vec(),
        }
    }

    /// Key for the (length, lexicographic arrow order) ordering.
    pub fn shortlex_key(&self) -> (usize, &[ArrowId]) {
        (self.arrows.len(), &self.arrows)
    }

    /// Parses space-separated arrow names, or `id(<object>)`.
    pub fn parse(g: &Graph, text: &str) -> Result<Path> {
        match parse_identity(g, text)? {
            Some(x) => Ok(Path::identity(x)),
            None => {
                let names: Vec<&str> = text.split_whitespace().collect();
                if let Some(bad) = names.iter().find(|n| n.ends_with("^-1")) {
                    return Err(Error::NotComposable(format!(
                        "inverse letter {bad} in a path"
                    )));
                }
                Path::from_names(g, &names)
            }
        }
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.arrows.is_empty() {
            format!("id({})", g.object_name(self.start))
        } else {
            let names: Vec<&str> = self.arrows.iter().map(|&a| g.arrow_name(a)).collect();
            names.join(" ")
        }
    }

    /// Function-style rendering, last arrow first: `c·b·a`.
    pub fn display_functional(&self, g: &Graph) -> String {
        if self.arrows.is_empty() {
            format!("id({})", g.object_name(self.start))
        } else {
            let names: Vec<&str> = self.arrows.iter().rev().map(|&a| g.arrow_name(a)).collect();
            names.join("·")
        }
    }
}

fn parse_identity(g: &Graph, text: &str) -> Result<Option<ObjectId>> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("id(").and_then(|r| r.strip_suffix(')')) {
        let inner = inner.trim();
        return g
            .object_id(inner)
            .map(Some)
            .ok_or_else(|| Error::ObjectNotFound(inner.to_string()));
    }
    if t.is_empty() {
        return Err(Error::NotComposable(
            "empty boundary; write id(<object>)".into(),
        ));
    }
    Ok(None)
}

/// An arrow traversed forwards (`inv = false`) or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: ArrowId,
    pub inv: bool,
}

impl Letter {
    pub fn pos(arrow: ArrowId) -> Self {
        Letter { arrow, inv: false }
    }

    pub fn neg(arrow: ArrowId) -> Self {
        Letter { arrow, inv: true }
    }

    pub fn inverse(self) -> Self {
        Letter {
            arrow: self.arrow,
            inv: !self.inv,
        }
    }

    pub fn src(self, g: &Graph) -> ObjectId {
        if self.inv {
            g.cod(self.arrow)
        } else {
            g.dom(self.arrow)
        }
    }

    pub fn tgt(self, g: &Graph) -> ObjectId {
        if self.inv {
            g.dom(self.arrow)
        } else {
            g.cod(self.arrow)
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced signed walk: a morphism of the free groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    pub start: ObjectId,
    pub letters: Vec<Letter>,
}

impl Walk {
    pub fn identity(x: ObjectId) -> Self {
        Walk {
            start: x,
            letters: Vec::new(),
        }
    }

    /// Checks the signed chain and freely reduces it.
    pub fn reduce(g: &Graph, start: ObjectId, letters: &[Letter]) -> Result<Walk> {
        let mut at = start;
        for l in letters {
            if l.arrow.0 >= g.arrow_count() {
                return Err(Error::UnknownArrow(format!("#{}", l.arrow.0)));
            }
            if l.src(g) != at {
                return Err(Error::NotComposable(format!(
                    "letter {} does not start at {}",
                    g.arrow_name(l.arrow),
                    g.object_name(at)
                )));
            }
            at = l.tgt(g);
        }
        Ok(Walk {
            start,
            letters: free_reduce(letters),
        })
    }

    pub fn from_path(p: &Path) -> Walk {
        Walk {
            start: p.start,
            letters: p.arrows.iter().map(|&a| Letter::pos(a)).collect(),
        }
    }

    /// The path with the same letters, when every letter is positive.
    pub fn to_path(&self) -> Option<Path> {
        self.letters.iter().all(|l| !l.inv).then(|| Path {
            start: self.start,
            arrows: self.letters.iter().map(|l| l.arrow).collect(),
        })
    }

    pub fn end(&self, g: &Graph) -> ObjectId {
        self.letters.last().map_or(self.start, |l| l.tgt(g))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn invert(&self, g: &Graph) -> Walk {
        Walk {
            start: self.end(g),
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self` followed by `other`, reduced.
    pub fn compose(&self, g: &Graph, other: &Walk) -> Result<Walk> {
        if self.end(g) != other.start {
            return Err(Error::NotComposable(format!(
                "walk ends at {} but the next starts at {}",
                g.object_name(self.end(g)),
                g.object_name(other.start)
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Walk {
            start: self.start,
            letters: free_reduce(&letters),
        })
    }

    /// Signed length: positive letters minus negative letters.
    pub fn signed_length(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent()).sum()
    }

    /// Parses space-separated tokens `a` or `a^-1`, or `id(<object>)`.
    pub fn parse(g: &Graph, text: &str) -> Result<Walk> {
        if let Some(x) = parse_identity(g, text)? {
            return Ok(Walk::identity(x));
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, inv) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let a = g
                .arrow_id(name)
                .ok_or_else(|| Error::UnknownArrow(name.to_string()))?;
            letters.push(Letter { arrow: a, inv });
        }
        let start = letters[0].src(g);
        Walk::reduce(g, start, &letters)
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.letters.is_empty() {
            return format!("id({})", g.object_name(self.start));
        }
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.inv {
                    format!("{}^-1", g.arrow_name(l.arrow))
                } else {
                    g.arrow_name(l.arrow).to_string()
                }
            })
            .collect();
        toks.join(" ")
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Output of [`enumerate_paths`]. `all` is set when the list is every path
/// between the endpoints, not just those within the length bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathEnumeration {
    pub paths: Vec<Path>,
    pub all: bool,
}

/// Objects lying on some directed route from `x` to `z`.
fn route_objects(g: &Graph, x: ObjectId, z: ObjectId) -> Vec<bool> {
    let all = g.arrow_ids().collect();
    let reach = g.reachability(&all);
    g.objects()
        .map(|v| reach[x.0][v.0] && reach[v.0][z.0])
        .collect()
}

fn has_cycle_within(g: &Graph, keep: &[bool]) -> bool {
    let n = g.object_count();
    let mut out = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for a in g.arrow_ids() {
        let (s, t) = (g.dom(a).0, g.cod(a).0);
        if keep[s] && keep[t] {
            out[s].push(t);
            indeg[t] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| keep[v] && indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen < keep.iter().filter(|&&k| k).count()
}

/// Whether the graph has a directed cycle (loops included).
pub fn is_acyclic(g: &Graph) -> bool {
    !has_cycle_within(g, &vec![true; g.object_count()])
}

/// All paths `x → z` of length at most `max_len`, ordered by length then by
/// arrow declaration order. Acyclic graphs ignore the bound.
pub fn enumerate_paths(g: &Graph, x: ObjectId, z: ObjectId, max_len: usize) -> PathEnumeration {
    let acyclic = is_acyclic(g);
    let on_route = route_objects(g, x, z);
    let route_acyclic = !has_cycle_within(g, &on_route);
    let bound = if acyclic { g.object_count() } else { max_len };
    let out = g.out_arrows();
    let mut paths = Vec::new();
    let mut frontier = vec![Path::identity(x)];
    for len in 0..=bound {
        for p in &frontier {
            if p.end(g) == z {
                paths.push(p.clone());
            }
        }
        if len == bound {
            break;
        }
        let mut next = Vec::new();
        for p in &frontier {
            for &a in &out[p.end(g).0] {
                if on_route[g.cod(a).0] {
                    let mut q = p.clone();
                    q.arrows.push(a);
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let all = acyclic || (route_acyclic && max_len + 1 >= g.object_count());
    PathEnumeration { paths, all }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomCount {
    Finite(u128),
    Infinite,
}

/// Number of paths `x → z`; infinite iff a directed cycle lies on a route.
pub fn hom_count_free(g: &Graph, x: ObjectId, z: ObjectId) -> HomCount {
    let on_route = route_objects(g, x, z);
    if has_cycle_within(g, &on_route) {
        return HomCount::Infinite;
    }
    if !on_route[x.0] {
        return HomCount::Finite(0);
    }
    // Memoized count of paths v → z over the route subgraph.
    fn count(
        g: &Graph,
        v: ObjectId,
        z: ObjectId,
        out: &[Vec<ArrowId>],
        on: &[bool],
        memo: &mut HashMap<ObjectId, u128>,
    ) -> u128 {
        if let Some(&c) = memo.get(&v) {
            return c;
        }
        let mut c: u128 = u128::from(v == z);
        for &a in &out[v.0] {
            let w = g.cod(a);
            if on[w.0] {
                c = c.saturating_add(count(g, w, z, out, on, memo));
            }
        }
        memo.insert(v, c);
        c
    }
    let out = g.out_arrows();
    HomCount::Finite(count(g, x, z, &out, &on_route, &mut HashMap::new()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category given by its full composition table.
/// `composition[(f, g)]` is "f then g".
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiniteCategoryTable {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    pub composition: BTreeMap<(usize, usize), usize>,
}

impl FiniteCategoryTable {
    /// Table of the free category on an acyclic graph; morphism names are the
    /// path renderings.
    pub fn of_free_category(g: &Graph) -> Result<Self> {
        if !is_acyclic(g) {
            return Err(Error::InfiniteFreeCategory);
        }
        let mut t = FiniteCategoryTable {
            objects: g.objects().map(|o| g.object_name(o).to_string()).collect(),
            ..Default::default()
        };
        let mut index: HashMap<Path, usize> = HashMap::new();
        let mut paths = Vec::new();
        for x in g.objects() {
            for z in g.objects() {
                for p in enumerate_paths(g, x, z, 0).paths {
                    index.insert(p.clone(), paths.len());
                    t.morphisms.push(Morphism {
                        name: p.display(g),
                        dom: x.0,
                        cod: z.0,
                    });
                    paths.push(p);
                }
            }
        }
        t.identities = g.objects().map(|x| index[&Path::identity(x)]).collect();
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate() {
                if let Ok(r) = p.compose(g, q) {
                    t.composition.insert((i, j), index[&r]);
                }
            }
        }
        Ok(t)
    }

    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities.contains(&f)
    }

    /// Checks typing, identity and associativity laws.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidTable(m));
        let n = self.morphisms.len();
        for m in &self.morphisms {
            if m.dom >= self.objects.len() || m.cod >= self.objects.len() {
                return bad(format!("morphism {} has an unknown endpoint", m.name));
            }
        }
        if self.identities.len() != self.objects.len() {
            return bad("every object needs one identity".into());
        }
        for (x, &i) in self.identities.iter().enumerate() {
            if i >= n || self.morphisms[i].dom != x || self.morphisms[i].cod != x {
                return bad(format!(
                    "identity of {} is not an endomorphism",
                    self.objects[x]
                ));
            }
        }
        for f in 0..n {
            for g in 0..n {
                let composable = self.morphisms[f].cod == self.morphisms[g].dom;
                match (composable, self.compose(f, g)) {
                    (true, None) => {
                        return bad(format!(
                            "missing composite of {} and {}",
                            self.morphisms[f].name, self.morphisms[g].name
                        ))
                    }
                    (false, Some(_)) => {
                        return bad(format!(
                            "composite of non-composable {} and {}",
                            self.morphisms[f].name, self.morphisms[g].name
                        ))
                    }
                    (true, Some(h)) => {
                        if h >= n
                            || self.morphisms[h].dom != self.morphisms[f].dom
                            || self.morphisms[h].cod != self.morphisms[g].cod
                        {
                            return bad(format!(
                                "composite of {} and {} has the wrong type",
                                self.morphisms[f].name, self.morphisms[g].name
                            ));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..n {
            let m = &self.morphisms[f];
            if self.compose(self.identities[m.dom], f) != Some(f)
                || self.compose(f, self.identities[m.cod]) != Some(f)
            {
                return bad(format!("identity law fails at {}", m.name));
            }
        }
        for (&(f, g), &fg) in &self.composition {
            for h in 0..n {
                if let (Some(gh), Some(fg_h)) = (self.compose(g, h), self.compose(fg, h)) {
                    if self.compose(f, gh) != Some(fg_h) {
                        return bad(format!(
                            "associativity fails at {}, {}, {}",
                            self.morphisms[f].name, self.morphisms[g].name, self.morphisms[h].name
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeRecognition {
    /// The category is free on this graph of indecomposable morphisms.
    Free(Graph),
    NotFree(String),
}

/// Decides whether a finite category is free, returning its generating graph.
pub fn recognize_free_category(t: &FiniteCategoryTable) -> Result<FreeRecognition> {
    t.validate()?;
    let n = t.morphisms.len();
    for f in (0..n).filter(|&f| !t.is_identity(f)) {
        let m = &t.morphisms[f];
        for g in 0..n {
            if t.compose(f, g) == Some(t.identities[m.dom])
                && t.compose(g, f) == Some(t.identities[m.cod])
            {
                return Ok(FreeRecognition::NotFree(format!(
                    "nontrivial isomorphism {}",
                    m.name
                )));
            }
        }
    }
    let mut decomposable = vec![false; n];
    for (&(f, g), &h) in &t.composition {
        if !t.is_identity(f) && !t.is_identity(g) {
            decomposable[h] = true;
        }
    }
    let indecomposable: Vec<usize> = (0..n)
        .filter(|&f| !t.is_identity(f) && !decomposable[f])
        .collect();

    // Factorization counts into indecomposables, saturated at 2.
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Open,
        Done(u8),
    }
    fn count(t: &FiniteCategoryTable, f: usize, ind: &[usize], marks: &mut [Mark]) -> u8 {
        match marks[f] {
            Mark::Done(c) => return c,
            // A cycle means f = i₁⋯iₖ·f, so factorizations are not unique.
            Mark::Open => return 2,
            Mark::Fresh => {}
        }
        marks[f] = Mark::Open;
        let mut c: u8 = u8::from(t.is_identity(f));
        for &i in ind {
            if t.morphisms[i].dom != t.morphisms[f].dom {
                continue;
            }
            for h in 0..t.morphisms.len() {
                if t.compose(i, h) == Some(f) {
                    c = (c + count(t, h, ind, marks)).min(2);
                }
            }
        }
        marks[f] = Mark::Done(c);
        c
    }
    let mut marks = vec![Mark::Fresh; n];
    for f in 0..n {
        match count(t, f, &indecomposable, &mut marks) {
            1 => {}
            0 => {
                return Ok(FreeRecognition::NotFree(format!(
                    "no factorization of {} into indecomposables",
                    t.morphisms[f].name
                )))
            }
            _ => {
                return Ok(FreeRecognition::NotFree(format!(
                    "non-unique factorization of {}",
                    t.morphisms[f].name
                )))
            }
        }
    }
    let mut g = Graph::empty();
    for o in &t.objects {
        g.push_object(o);
    }
    for &i in &indecomposable {
        let m = &t.morphisms[i];
        g.push_arrow(&m.name, ObjectId(m.dom), ObjectId(m.cod));
    }
    Ok(FreeRecognition::Free(g))
}

/// Isomorphism classes of totally ordered free categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "size", rename_all = "snake_case")]
pub enum TotalOrder {
    FinOrdinal(usize),
    NatOrder,
    OpNatOrder,
    IntOrder,
    NotTotalOrder,
}

/// Classifies a finite graph whose free category is a total order.
pub fn classify_total_order(g: &Graph) -> TotalOrder {
    if !g.is_weak_forest() {
        return TotalOrder::NotTotalOrder;
    }
    let reach = g.reachability(&g.arrow_ids().collect());
    let n = g.object_count();
    for x in 0..n {
        for y in 0..n {
            if !reach[x][y] && !reach[y][x] {
                return TotalOrder::NotTotalOrder;
            }
        }
    }
    TotalOrder::FinOrdinal(n)
}

/// The three infinite chains: `0 → 1 → 2 → …`, its opposite, and the chain
/// indexed by the integers. Only finite windows are materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfiniteChain {
    Nat,
    OpNat,
    Int,
}

impl InfiniteChain {
    /// Finite window with `k` arrows, in the family's direction.
    pub fn window(self, k: usize) -> Graph {
        let (lo, hi): (i64, i64) = match self {
            InfiniteChain::Nat | InfiniteChain::OpNat => (0, k as i64),
            InfiniteChain::Int => (-(k as i64) / 2, k as i64 - (k as i64) / 2),
        };
        let mut g = Graph::empty();
        let ids: Vec<ObjectId> = (lo..=hi).map(|i| g.push_object(&i.to_string())).collect();
        for i in 0..k {
            let (a, b) = match self {
                InfiniteChain::OpNat => (ids[i + 1], ids[i]),
                _ => (ids[i], ids[i + 1]),
            };
            g.push_arrow(&format!("s{}", lo + i as i64), a, b);
        }
        g
    }

    /// Checks that windows are finite ordinals, then names the limit order.
    pub fn classify(self, windows: usize) -> TotalOrder {
        for k in 0..windows {
            if classify_total_order(&self.window(k)) != TotalOrder::FinOrdinal(k + 1) {
                return TotalOrder::NotTotalOrder;
            }
        }
        match self {
            InfiniteChain::Nat => TotalOrder::NatOrder,
            InfiniteChain::OpNat => TotalOrder::OpNatOrder,
            InfiniteChain::Int => TotalOrder::IntOrder,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuspensionKind {
    Monoid,
    Group,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Suspension {
    Monoid(Computad2),
    Group(GroupoidalComputad2),
}

impl fmt::Display for SuspensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuspensionKind::Monoid => "monoid",
            SuspensionKind::Group => "group",
        })
    }
}

/// One-object computad with one arrow per generator and one 2-cell per
/// relation. Words are space-separated generator names (`g^-1` allowed for
/// groups); an empty word or `1` is the identity.
pub fn suspend_presentation(
    kind: SuspensionKind,
    generators: &[&str],
    relations: &[(&str, &str)],
) -> Result<Suspension> {
    let mut g = Graph::empty();
    let point = g.push_object("*");
    for gen in generators {
        if g.arrow_id(gen).is_some() {
            return Err(Error::InvalidComputad(format!("duplicate generator {gen}")));
        }
        g.push_arrow(gen, point, point);
    }
    let parse_word = |w: &str| -> Result<Vec<Letter>> {
        w.split_whitespace()
            .filter(|t| *t != "1")
            .map(|tok| {
                let (name, inv) = match tok.strip_suffix("^-1") {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                if inv && kind == SuspensionKind::Monoid {
                    return Err(Error::UnknownGenerator(tok.to_string()));
                }
                g.arrow_id(name)
                    .map(|a| Letter { arrow: a, inv })
                    .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
            })
            .collect()
    };
    let mut seen = HashSet::new();
    let mut names = Vec::new();
    for i in 0..relations.len() {
        let mut name = format!("r{}", i + 1);
        while g.arrow_id(&name).is_some() || !seen.insert(name.clone()) {
            name.push('\'');
        }
        names.push(name);
    }
    match kind {
        SuspensionKind::Monoid => {
            let mut cells = Vec::new();
            for ((lhs, rhs), name) in relations.iter().zip(names) {
                let to_path = |ls: Vec<Letter>| Path {
                    start: point,
                    arrows: ls.into_iter().map(|l| l.arrow).collect(),
                };
                cells.push(TwoCell {
                    name,
                    source: to_path(parse_word(lhs)?),
                    target: to_path(parse_word(rhs)?),
                });
            }
            Ok(Suspension::Monoid(Computad2::new(g, cells)?))
        }
        SuspensionKind::Group => {
            let mut cells = Vec::new();
            for ((lhs, rhs), name) in relations.iter().zip(names) {
                let source = Walk::reduce(&g, point, &parse_word(lhs)?)?;
                let target = Walk::reduce(&g, point, &parse_word(rhs)?)?;
                cells.push(TwoCell {
                    name,
                    source,
                    target,
                });
            }
            Ok(Suspension::Group(GroupoidalComputad2::new(g, cells)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> Graph {
        Graph::new(
            &["x", "y", "z", "w"],
            &[("a", "x", "y"), ("b", "y", "z"), ("c", "z", "w")],
        )
        .unwrap()
    }

    fn weak_tree() -> Graph {
        Graph::new(
            &["w", "x", "y", "z"],
            &[
                ("a", "w", "x"),
                ("b", "y", "x"),
                ("c", "y", "z"),
                ("e", "w", "z"),
            ],
        )
        .unwrap()
    }

    fn circle() -> Graph {
        Graph::new(&["v"], &[("a", "v", "v")]).unwrap()
    }

    #[test]
    fn composition_and_factorization() {
        let g = chain();
        let x = g.object_id("x").unwrap();
        let ab = Path::from_names(&g, &["a", "b"]).unwrap();
        assert_eq!(Path::identity(x).compose(&g, &ab).unwrap(), ab);
        let c = Path::from_names(&g, &["c"]).unwrap();
        let abc = ab.compose(&g, &c).unwrap();
        assert_eq!(abc.len(), 3);
        assert_eq!(abc.factorize(&g).len(), 3);
        let back = abc
            .factorize(&g)
            .into_iter()
            .fold(Path::identity(x), |acc, f| acc.compose(&g, &f).unwrap());
        assert_eq!(back, abc);
        assert!(c.compose(&g, &ab).is_err());
        assert!(Path::identity(x).factorize(&g).is_empty());
        assert_eq!(abc.display_functional(&g), "c·b·a");
    }

    #[test]
    fn walk_reduction() {
        let g = chain();
        let a = g.arrow_id("a").unwrap();
        let b = g.arrow_id("b").unwrap();
        let x = g.object_id("x").unwrap();
        let w = Walk::reduce(&g, x, &[Letter::pos(a), Letter::neg(a)]).unwrap();
        assert!(w.is_empty());
        let ab = Walk::reduce(&g, x, &[Letter::pos(a), Letter::pos(b)]).unwrap();
        assert_eq!(ab.invert(&g).letters, vec![Letter::neg(b), Letter::neg(a)]);
        assert!(ab.compose(&g, &ab.invert(&g)).unwrap().is_empty());
        assert!(Walk::reduce(&g, x, &[Letter::pos(b)]).is_err());
        assert_eq!(Walk::parse(&g, "a b b^-1").unwrap().display(&g), "a");
    }

    #[test]
    fn path_enumeration() {
        let wt = weak_tree();
        let (w, z) = (wt.object_id("w").unwrap(), wt.object_id("z").unwrap());
        let e = enumerate_paths(&wt, w, z, 0);
        assert!(e.all);
        assert_eq!(e.paths, vec![Path::from_names(&wt, &["e"]).unwrap()]);

        let c = circle();
        let v = ObjectId(0);
        let e = enumerate_paths(&c, v, v, 3);
        assert_eq!(e.paths.len(), 4);
        assert!(!e.all);

        let par = Graph::new(&["a", "b"], &[("u", "a", "b"), ("v", "a", "b")]).unwrap();
        assert_eq!(
            enumerate_paths(&par, ObjectId(0), ObjectId(1), 5)
                .paths
                .len(),
            2
        );
    }

    #[test]
    fn free_hom_counts() {
        let par = Graph::new(&["a", "b"], &[("u", "a", "b"), ("v", "a", "b")]).unwrap();
        assert_eq!(
            hom_count_free(&par, ObjectId(0), ObjectId(1)),
            HomCount::Finite(2)
        );
        assert_eq!(
            hom_count_free(&par, ObjectId(1), ObjectId(0)),
            HomCount::Finite(0)
        );
        assert_eq!(
            hom_count_free(&circle(), ObjectId(0), ObjectId(0)),
            HomCount::Infinite
        );
        let wt = weak_tree();
        let (y, x) = (wt.object_id("y").unwrap(), wt.object_id("x").unwrap());
        assert_eq!(hom_count_free(&wt, y, x), HomCount::Finite(1));
    }

    fn two_table() -> FiniteCategoryTable {
        let g = Graph::new(&["0", "1"], &[("f", "0", "1")]).unwrap();
        FiniteCategoryTable::of_free_category(&g).unwrap()
    }

    #[test]
    fn recognizes_the_arrow_category() {
        match recognize_free_category(&two_table()).unwrap() {
            FreeRecognition::Free(g) => {
                assert_eq!((g.object_count(), g.arrow_count()), (2, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_isomorphism_pair() {
        // Objects 0, 1 with mutually inverse i: 0→1, j: 1→0.
        let mut t = FiniteCategoryTable {
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![
                Morphism {
                    name: "id0".into(),
                    dom: 0,
                    cod: 0,
                },
                Morphism {
                    name: "id1".into(),
                    dom: 1,
                    cod: 1,
                },
                Morphism {
                    name: "i".into(),
                    dom: 0,
                    cod: 1,
                },
                Morphism {
                    name: "j".into(),
                    dom: 1,
                    cod: 0,
                },
            ],
            identities: vec![0, 1],
            composition: BTreeMap::new(),
        };
        for (f, g, h) in [
            (0, 0, 0),
            (1, 1, 1),
            (0, 2, 2),
            (2, 1, 2),
            (1, 3, 3),
            (3, 0, 3),
            (2, 3, 0),
            (3, 2, 1),
        ] {
            t.composition.insert((f, g), h);
        }
        let r = recognize_free_category(&t).unwrap();
        assert!(matches!(r, FreeRecognition::NotFree(ref m) if m.contains("isomorphism")));
    }

    #[test]
    fn rejects_non_unique_factorization() {
        // h: a→b, f, g: b→c, with h;f = h;g.
        let mut t = FiniteCategoryTable {
            objects: vec!["a".into(), "b".into(), "c".into()],
            morphisms: ["ida", "idb", "idc", "h", "f", "g", "k"]
                .iter()
                .zip([(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (1, 2), (0, 2)])
                .map(|(n, (d, c))| Morphism {
                    name: n.to_string(),
                    dom: d,
                    cod: c,
                })
                .collect(),
            identities: vec![0, 1, 2],
            composition: BTreeMap::new(),
        };
        for m in 0..7 {
            let (d, c) = (t.morphisms[m].dom, t.morphisms[m].cod);
            t.composition.insert((d, m), m);
            t.composition.insert((m, c), m);
        }
        t.composition.insert((3, 4), 6);
        t.composition.insert((3, 5), 6);
        let r = recognize_free_category(&t).unwrap();
        assert!(matches!(r, FreeRecognition::NotFree(ref m) if m.contains("non-unique")));
    }

    #[test]
    fn invalid_table_is_an_error() {
        let mut t = two_table();
        t.composition.clear();
        assert!(matches!(
            recognize_free_category(&t),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn total_orders() {
        assert_eq!(classify_total_order(&chain()), TotalOrder::FinOrdinal(4));
        let par = Graph::new(&["a", "b"], &[("u", "a", "b"), ("v", "a", "b")]).unwrap();
        assert_eq!(classify_total_order(&par), TotalOrder::NotTotalOrder);
        let point = Graph::new(&["p"], &[]).unwrap();
        assert_eq!(classify_total_order(&point), TotalOrder::FinOrdinal(1));
        assert_eq!(InfiniteChain::Nat.classify(6), TotalOrder::NatOrder);
        assert_eq!(InfiniteChain::OpNat.classify(6), TotalOrder::OpNatOrder);
        assert_eq!(InfiniteChain::Int.classify(6), TotalOrder::IntOrder);
    }

    #[test]
    fn suspensions() {
        match suspend_presentation(SuspensionKind::Monoid, &["a"], &[]).unwrap() {
            Suspension::Monoid(c) => {
                assert_eq!(c.base.arrow_count(), 1);
                assert!(c.cells.is_empty());
            }
            _ => panic!(),
        }
        match suspend_presentation(SuspensionKind::Group, &["a", "b"], &[("a b", "b a")]).unwrap() {
            Suspension::Group(c) => assert_eq!(c.cells.len(), 1),
            _ => panic!(),
        }
        match suspend_presentation(SuspensionKind::Monoid, &["a"], &[("a", "")]).unwrap() {
            Suspension::Monoid(c) => assert!(c.cells[0].target.is_empty()),
            _ => panic!(),
        }
        assert_eq!(
            suspend_presentation(SuspensionKind::Monoid, &["a"], &[("b", "")]),
            Err(Error::UnknownGenerator("b".into()))
        );
    }
}

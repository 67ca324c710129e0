//! 2-computads: a graph together with 2-cells between parallel boundaries.
//!
//! [`Computad2`] has path boundaries (presentations of categories),
//! [`GroupoidalComputad2`] has reduced-walk boundaries (presentations of
//! groupoids). Both share the generic [`Computad`] container.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::free::{enumerate_paths, is_acyclic, Letter, Path, Walk};
use crate::graph::{ArrowId, Graph, ObjectId, RawGraph, ReflexiveGraph, Subgraph};

/// Boundary expressions of 2-cells: paths or reduced walks.
pub trait Boundary: Clone + PartialEq + Eq + Hash + Debug {
    fn start(&self) -> ObjectId;
    fn end(&self, g: &Graph) -> ObjectId;
    fn signed_letters(&self) -> Vec<Letter>;
    /// Rebuilds a boundary from letters, checking composability.
    fn rebuild(g: &Graph, start: ObjectId, letters: &[Letter]) -> Result<Self>;
    fn parse(g: &Graph, text: &str) -> Result<Self>;
    fn display(&self, g: &Graph) -> String;

    /// Well-typed over `g`, and reduced for walks.
    fn check(&self, g: &Graph) -> Result<()> {
        if self.start().0 >= g.object_count() {
            return Err(Error::ObjectNotFound(format!("#{}", self.start().0)));
        }
        let rebuilt = Self::rebuild(g, self.start(), &self.signed_letters())?;
        if &rebuilt != self {
            return Err(Error::NotComposable("boundary word is not reduced".into()));
        }
        Ok(())
    }
}

impl Boundary for Path {
    fn start(&self) -> ObjectId {
        self.start
    }

    fn end(&self, g: &Graph) -> ObjectId {
        Path::end(self, g)
    }

    fn signed_letters(&self) -> Vec<Letter> {
        self.arrows.iter().map(|&a| Letter::pos(a)).collect()
    }

    fn rebuild(g: &Graph, start: ObjectId, letters: &[Letter]) -> Result<Self> {
        if letters.iter().any(|l| l.inv) {
            return Err(Error::NotComposable("inverse letter in a path".into()));
        }
        Path::new(g, start, letters.iter().map(|l| l.arrow).collect())
    }

    fn parse(g: &Graph, text: &str) -> Result<Self> {
        Path::parse(g, text)
    }

    fn display(&self, g: &Graph) -> String {
        Path::display(self, g)
    }
}

impl Boundary for Walk {
    fn start(&self) -> ObjectId {
        self.start
    }

    fn end(&self, g: &Graph) -> ObjectId {
        Walk::end(self, g)
    }

    fn signed_letters(&self) -> Vec<Letter> {
        self.letters.clone()
    }

    fn rebuild(g: &Graph, start: ObjectId, letters: &[Letter]) -> Result<Self> {
        Walk::reduce(g, start, letters)
    }

    fn parse(g: &Graph, text: &str) -> Result<Self> {
        Walk::parse(g, text)
    }

    fn display(&self, g: &Graph) -> String {
        Walk::display(self, g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoCell<B> {
    pub name: String,
    pub source: B,
    pub target: B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computad<B> {
    pub base: Graph,
    pub cells: Vec<TwoCell<B>>,
}

pub type Computad2 = Computad<Path>;
pub type GroupoidalComputad2 = Computad<Walk>;

/// Name-level computad data, before boundary resolution.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawComputad {
    pub graph: RawGraph,
    pub cells: Vec<(String, String, String)>,
}

impl RawComputad {
    pub fn cell(mut self, name: &str, source: &str, target: &str) -> Self {
        self.cells
            .push((name.to_string(), source.to_string(), target.to_string()));
        self
    }

    /// Lists every problem: graph problems, unknown arrows, non-parallel
    /// cells and duplicate identifiers.
    pub fn validate<B: Boundary>(&self) -> Vec<String> {
        let mut problems: Vec<String> = self
            .graph
            .validate()
            .iter()
            .map(|p| p.to_string())
            .collect();
        let Ok(g) = self.graph.build() else {
            return problems;
        };
        let mut names = HashSet::new();
        for (name, s, t) in &self.cells {
            if !names.insert(name.as_str()) || g.arrow_id(name).is_some() {
                problems.push(format!("duplicate id: cell {name}"));
            }
            match (B::parse(&g, s), B::parse(&g, t)) {
                (Ok(s), Ok(t)) => {
                    if s.start() != t.start() || s.end(&g) != t.end(&g) {
                        problems.push(format!("not parallel: cell {name}"));
                    }
                }
                (Err(e), _) | (_, Err(e)) => problems.push(describe(name, &e)),
            }
        }
        problems
    }

    pub fn build<B: Boundary>(&self) -> Result<Computad<B>> {
        if let Some(p) = self.validate::<B>().into_iter().next() {
            return Err(Error::InvalidComputad(p));
        }
        let g = self.graph.build()?;
        Computad::parse_cells(g, &self.cells)
    }
}

fn describe(cell: &str, e: &Error) -> String {
    match e {
        Error::UnknownArrow(a) => format!("unknown arrow {a} in cell {cell}"),
        Error::ObjectNotFound(o) => format!("unknown object {o} in cell {cell}"),
        other => format!("cell {cell}: {other}"),
    }
}

/// Result of [`sigma2`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sigma2 {
    Complete(Computad2),
    Truncated { computad: Computad2, max_len: usize },
    Unbounded,
}

/// Object, arrow and 2-cell subsets of a computad.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubComputad {
    pub objects: BTreeSet<ObjectId>,
    pub arrows: BTreeSet<ArrowId>,
    pub cells: BTreeSet<usize>,
}

impl SubComputad {
    /// The subgraph with no 2-cells.
    pub fn of_subgraph(s: &Subgraph) -> Self {
        SubComputad {
            objects: s.objects.clone(),
            arrows: s.arrows.clone(),
            cells: BTreeSet::new(),
        }
    }

    pub fn subgraph(&self) -> Subgraph {
        Subgraph {
            objects: self.objects.clone(),
            arrows: self.arrows.clone(),
        }
    }
}

/// A collapse quotient with the maps from old to new identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapse<B> {
    pub computad: Computad<B>,
    pub object_map: Vec<ObjectId>,
    pub arrow_map: Vec<Option<ArrowId>>,
    pub cell_map: Vec<Option<usize>>,
}

impl<B: Boundary> Computad<B> {
    pub fn new(base: Graph, cells: Vec<TwoCell<B>>) -> Result<Self> {
        let c = Computad { base, cells };
        if let Some(p) = c.validate().into_iter().next() {
            return Err(Error::InvalidComputad(p));
        }
        Ok(c)
    }

    /// Parses `(name, source, target)` boundary texts over `base`.
    pub fn parse_cells(base: Graph, cells: &[(String, String, String)]) -> Result<Self> {
        let parsed = cells
            .iter()
            .map(|(n, s, t)| {
                Ok(TwoCell {
                    name: n.clone(),
                    source: B::parse(&base, s)?,
                    target: B::parse(&base, t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Computad::new(base, parsed)
    }

    /// Convenience form of [`Computad::parse_cells`] over string slices.
    pub fn from_texts(base: Graph, cells: &[(&str, &str, &str)]) -> Result<Self> {
        let owned: Vec<(String, String, String)> = cells
            .iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect();
        Computad::parse_cells(base, &owned)
    }

    /// Empty iff every cell is well-typed and parallel and names are unique.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let mut names = HashSet::new();
        for c in &self.cells {
            if !names.insert(c.name.as_str()) {
                problems.push(format!("duplicate id: cell {}", c.name));
            }
            let typed = [&c.source, &c.target]
                .into_iter()
                .map(|b| b.check(&self.base))
                .collect::<Result<Vec<_>>>();
            match typed {
                Err(e) => problems.push(describe(&c.name, &e)),
                Ok(_) => {
                    if c.source.start() != c.target.start()
                        || c.source.end(&self.base) != c.target.end(&self.base)
                    {
                        problems.push(format!("not parallel: cell {}", c.name));
                    }
                }
            }
        }
        problems
    }

    pub fn cell_index(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.name == name)
    }

    /// The underlying graph.
    pub fn u2(&self) -> Graph {
        self.base.clone()
    }

    fn support<'a>(&self, boundaries: impl Iterator<Item = &'a B>) -> Subgraph
    where
        B: 'a,
    {
        let mut s = Subgraph::default();
        for b in boundaries {
            s.objects.insert(b.start());
            for l in b.signed_letters() {
                s.arrows.insert(l.arrow);
                s.objects.insert(self.base.dom(l.arrow));
                s.objects.insert(self.base.cod(l.arrow));
            }
        }
        s
    }

    /// Smallest subgraph containing every source boundary.
    pub fn graph_domain(&self) -> Subgraph {
        self.support(self.cells.iter().map(|c| &c.source))
    }

    /// Smallest subgraph containing every target boundary.
    pub fn graph_codomain(&self) -> Subgraph {
        self.support(self.cells.iter().map(|c| &c.target))
    }

    /// Smallest subgraph containing every boundary.
    pub fn image_subgraph(&self) -> Subgraph {
        self.support(self.cells.iter().flat_map(|c| [&c.source, &c.target]))
    }

    /// Checks that `sub` is closed: arrows' endpoints and cells' boundaries
    /// lie inside it.
    pub fn check_subcomputad(&self, sub: &SubComputad) -> Result<()> {
        let g = &self.base;
        let fail = |m: String| Err(Error::NotSubcomputad(m));
        if let Some(o) = sub.objects.iter().find(|o| o.0 >= g.object_count()) {
            return fail(format!("unknown object #{}", o.0));
        }
        for &a in &sub.arrows {
            if a.0 >= g.arrow_count() {
                return fail(format!("unknown arrow #{}", a.0));
            }
            if !sub.objects.contains(&g.dom(a)) || !sub.objects.contains(&g.cod(a)) {
                return fail(format!(
                    "arrow {} leaves the object subset",
                    g.arrow_name(a)
                ));
            }
        }
        for &i in &sub.cells {
            let Some(c) = self.cells.get(i) else {
                return fail(format!("unknown cell #{i}"));
            };
            for b in [&c.source, &c.target] {
                if !sub.objects.contains(&b.start())
                    || b.signed_letters()
                        .iter()
                        .any(|l| !sub.arrows.contains(&l.arrow))
                {
                    return fail(format!(
                        "boundary of cell {} leaves the sub-computad",
                        c.name
                    ));
                }
            }
        }
        Ok(())
    }

    /// Collapses the objects of `sub` to one point (kept at the position of
    /// the first of them), deletes its arrows and cells, and erases collapsed
    /// letters from the remaining boundaries.
    pub fn quotient_collapse(&self, sub: &SubComputad) -> Result<Computad<B>> {
        Ok(self.quotient_collapse_with_map(sub)?.computad)
    }

    pub fn quotient_collapse_with_map(&self, sub: &SubComputad) -> Result<Collapse<B>> {
        self.check_subcomputad(sub)?;
        let g = &self.base;
        let mut q = Graph::empty();
        let mut object_map = vec![ObjectId(0); g.object_count()];
        let mut point = None;
        for o in g.objects() {
            if sub.objects.contains(&o) {
                let p = *point.get_or_insert_with(|| q.push_object(g.object_name(o)));
                object_map[o.0] = p;
            } else {
                object_map[o.0] = q.push_object(g.object_name(o));
            }
        }
        let mut arrow_map = vec![None; g.arrow_count()];
        for a in g.arrow_ids().filter(|a| !sub.arrows.contains(a)) {
            let arrow = g.arrow(a);
            arrow_map[a.0] = Some(q.push_arrow(
                &arrow.name,
                object_map[arrow.dom.0],
                object_map[arrow.cod.0],
            ));
        }
        let erase = |b: &B| -> Result<B> {
            let letters: Vec<Letter> = b
                .signed_letters()
                .into_iter()
                .filter_map(|l| {
                    arrow_map[l.arrow.0].map(|a| Letter {
                        arrow: a,
                        inv: l.inv,
                    })
                })
                .collect();
            B::rebuild(&q, object_map[b.start().0], &letters)
        };
        let mut cells = Vec::new();
        let mut cell_map = vec![None; self.cells.len()];
        for (i, c) in self.cells.iter().enumerate() {
            if sub.cells.contains(&i) {
                continue;
            }
            cell_map[i] = Some(cells.len());
            cells.push(TwoCell {
                name: c.name.clone(),
                source: erase(&c.source)?,
                target: erase(&c.target)?,
            });
        }
        Ok(Collapse {
            computad: Computad::new(q, cells)?,
            object_map,
            arrow_map,
            cell_map,
        })
    }
}

/// The computad with no 2-cells on `g`.
pub fn i2(g: &Graph) -> Computad2 {
    Computad {
        base: g.clone(),
        cells: Vec::new(),
    }
}

/// Groupoidal counterpart of [`i2`].
pub fn i2_groupoidal(g: &Graph) -> GroupoidalComputad2 {
    Computad {
        base: g.clone(),
        cells: Vec::new(),
    }
}

/// One 2-cell per ordered pair of parallel paths, diagonal pairs and
/// identities included. Graphs with a directed cycle have infinitely many
/// such pairs: they give `Unbounded`, or a truncation when `max_len` is set.
pub fn sigma2(g: &Graph, max_len: Option<usize>) -> Sigma2 {
    let acyclic = is_acyclic(g);
    if !acyclic && max_len.is_none() {
        return Sigma2::Unbounded;
    }
    let bound = max_len.unwrap_or(0);
    let mut cells = Vec::new();
    for x in g.objects() {
        for z in g.objects() {
            let paths = enumerate_paths(g, x, z, bound).paths;
            for p in &paths {
                for q in &paths {
                    cells.push(TwoCell {
                        name: format!("c{}", cells.len()),
                        source: p.clone(),
                        target: q.clone(),
                    });
                }
            }
        }
    }
    let computad = Computad {
        base: g.clone(),
        cells,
    };
    if acyclic {
        Sigma2::Complete(computad)
    } else {
        Sigma2::Truncated {
            computad,
            max_len: bound,
        }
    }
}

/// Reads every path boundary as a positive walk.
pub fn groupoidalize(c: &Computad2) -> GroupoidalComputad2 {
    Computad {
        base: c.base.clone(),
        cells: c
            .cells
            .iter()
            .map(|cell| TwoCell {
                name: cell.name.clone(),
                source: Walk::from_path(&cell.source),
                target: Walk::from_path(&cell.target),
            })
            .collect(),
    }
}

/// A computad over a reflexive graph; identity arrows in boundaries stand for
/// empty segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexiveComputad2 {
    pub base: ReflexiveGraph,
    pub cells: Vec<TwoCell<Path>>,
}

impl ReflexiveComputad2 {
    /// Adds fresh identities to every object of `c`.
    pub fn free(c: &Computad2) -> Self {
        ReflexiveComputad2 {
            base: ReflexiveGraph::free(&c.base),
            cells: c.cells.clone(),
        }
    }

    /// Strips identity arrows and deletes identity letters from boundaries.
    pub fn normalize(&self) -> Result<Computad2> {
        let (g, map) = self.base.strip_with_map();
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let strip = |p: &Path| {
                    Path::new(
                        &g,
                        p.start,
                        p.arrows.iter().filter_map(|a| map[a.0]).collect(),
                    )
                };
                Ok(TwoCell {
                    name: c.name.clone(),
                    source: strip(&c.source)?,
                    target: strip(&c.target)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Computad::new(g, cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_raw() -> RawComputad {
        RawComputad {
            graph: RawGraph::default()
                .object("p")
                .arrow("a", "p", "p")
                .arrow("b", "p", "p"),
            cells: vec![],
        }
        .cell("t", "a b", "b a")
    }

    fn delta2dot() -> Computad2 {
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
        Computad::from_texts(
            g,
            &[
                ("n0", "d0 s0", "id(1)"),
                ("n1", "id(1)", "d1 s0"),
                ("theta", "d d1", "d d0"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation_reports() {
        assert!(torus_raw().validate::<Path>().is_empty());
        let bad = torus_raw().cell("u", "a", "c");
        assert_eq!(bad.validate::<Path>(), vec!["unknown arrow c in cell u"]);
        let g = Graph::new(&["x", "y"], &[("f", "x", "y")]).unwrap();
        let c = Computad {
            base: g.clone(),
            cells: vec![TwoCell {
                name: "k".into(),
                source: Path::from_names(&g, &["f"]).unwrap(),
                target: Path::identity(ObjectId(0)),
            }],
        };
        assert_eq!(c.validate(), vec!["not parallel: cell k"]);
        let dup = torus_raw().cell("t", "a", "a");
        assert_eq!(dup.validate::<Path>(), vec!["duplicate id: cell t"]);
    }

    #[test]
    fn i2_u2_roundtrip() {
        let c = torus_raw().build::<Path>().unwrap();
        assert_eq!(i2(&c.u2()).u2(), c.base);
        assert!(i2(&c.base).cells.is_empty());
        assert!(i2(&c.base).image_subgraph().arrows.is_empty());
    }

    #[test]
    fn sigma2_small_cases() {
        let g = Graph::new(&["x", "y"], &[("a", "x", "y")]).unwrap();
        match sigma2(&g, None) {
            Sigma2::Complete(c) => assert_eq!(c.cells.len(), 3),
            other => panic!("{other:?}"),
        }
        let circle = Graph::new(&["v"], &[("a", "v", "v")]).unwrap();
        assert_eq!(sigma2(&circle, None), Sigma2::Unbounded);
        match sigma2(&circle, Some(2)) {
            // Paths of length 0..=2, all parallel: 3 × 3 pairs.
            Sigma2::Truncated { computad, max_len } => {
                assert_eq!((computad.cells.len(), max_len), (9, 2))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn images_of_torus() {
        let c = torus_raw().build::<Walk>().unwrap();
        let img = c.image_subgraph();
        assert_eq!(img.arrows.len(), 2);
        let mut union = c.graph_domain();
        union.arrows.extend(c.graph_codomain().arrows);
        union.objects.extend(c.graph_codomain().objects);
        assert_eq!(union, img);
    }

    #[test]
    fn groupoidalize_keeps_data() {
        let c = delta2dot();
        let gc = groupoidalize(&c);
        assert_eq!(gc.u2(), c.u2());
        assert!(gc.validate().is_empty());
        assert_eq!(gc.cells[2].source.display(&gc.base), "d d1");
    }

    #[test]
    fn collapse_tree_of_delta2dot() {
        let c = delta2dot();
        let tree = c.base.maximal_tree().unwrap();
        let q = c
            .quotient_collapse(&SubComputad::of_subgraph(&tree))
            .unwrap();
        assert_eq!(q.base.object_count(), 1);
        let names: Vec<&str> = q.base.arrow_ids().map(|a| q.base.arrow_name(a)).collect();
        assert_eq!(names, vec!["d0", "d1"]);
        let shown: Vec<String> = q
            .cells
            .iter()
            .map(|c| {
                format!(
                    "{}: {} => {}",
                    c.name,
                    c.source.display(&q.base),
                    c.target.display(&q.base)
                )
            })
            .collect();
        assert_eq!(
            shown,
            vec!["n0: d0 => id(0)", "n1: id(0) => d1", "theta: d1 => d0"]
        );
    }

    #[test]
    fn collapse_extremes() {
        let c = delta2dot();
        let whole = SubComputad {
            objects: c.base.objects().collect(),
            arrows: c.base.arrow_ids().collect(),
            cells: (0..c.cells.len()).collect(),
        };
        let q = c.quotient_collapse(&whole).unwrap();
        assert_eq!(
            (q.base.object_count(), q.base.arrow_count(), q.cells.len()),
            (1, 0, 0)
        );
        assert_eq!(c.quotient_collapse(&SubComputad::default()).unwrap(), c);
        let open = SubComputad {
            objects: BTreeSet::new(),
            arrows: [ArrowId(0)].into(),
            cells: BTreeSet::new(),
        };
        assert!(matches!(
            c.quotient_collapse(&open),
            Err(Error::NotSubcomputad(_))
        ));
    }

    #[test]
    fn collapsed_cell_survives_as_sphere() {
        // Collapsing the arrows but keeping the cell leaves id => id.
        let c = torus_raw().build::<Walk>().unwrap();
        let sub = SubComputad {
            objects: c.base.objects().collect(),
            arrows: c.base.arrow_ids().collect(),
            cells: BTreeSet::new(),
        };
        let q = c.quotient_collapse(&sub).unwrap();
        assert_eq!(q.cells.len(), 1);
        assert!(q.cells[0].source.is_empty() && q.cells[0].target.is_empty());
    }

    #[test]
    fn reflexive_normalization() {
        let c = delta2dot();
        let r = ReflexiveComputad2::free(&c);
        assert_eq!(r.normalize().unwrap(), c);
        // A boundary written with an identity letter strips to the empty path.
        let mut r2 = r.clone();
        let id1 = r2.base.identity[1];
        r2.cells[0].target = Path::new(&r2.base.base, ObjectId(1), vec![id1]).unwrap();
        assert_eq!(r2.normalize().unwrap(), c);
    }
}

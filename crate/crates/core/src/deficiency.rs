//! Deficiency of presentations, the Euler-characteristic bound on thin
//! presentations, and the efficient presentations built from maximal trees.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::computad::{Boundary, Computad, Computad2, GroupoidalComputad2, TwoCell};
use crate::cw::f_top2;
use crate::error::{Error, GraphError, Result};
use crate::free::{Letter, Path, Walk};
use crate::graph::{
    classify_monotone, is_fair, ArrowId, Fairness, Graph, Monotonicity, ObjectId, Subgraph,
    DEFAULT_FAIR_BOUND,
};
use crate::presentation::group::non_tree_arrows;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeficiencyReport {
    pub chi1: i64,
    pub cells2: usize,
    pub deficiency: i64,
    pub bound_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.object_count() == 0 || !g.is_connected() {
        return Err(GraphError::NotConnected.into());
    }
    Ok(())
}

fn report<B: Boundary>(c: &Computad<B>) -> Result<DeficiencyReport> {
    require_connected(&c.base)?;
    let chi1 = c.base.euler_char();
    let cells2 = c.cells.len();
    Ok(DeficiencyReport {
        chi1,
        cells2,
        deficiency: 1 - cells2 as i64 - chi1,
        bound_ok: chi1 + cells2 as i64 - 1 >= 0,
        construction: None,
    })
}

/// `1 − |cells| − χ` of the base graph.
pub fn deficiency_of_presentation(c: &GroupoidalComputad2) -> Result<DeficiencyReport> {
    report(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundCheck {
    /// `χ(F_Top2) < 1`: the presented groupoid cannot be thin.
    ViolatesBound,
    Inconclusive,
}

pub fn check_not_thin_bound(c: &GroupoidalComputad2) -> Result<BoundCheck> {
    require_connected(&c.base)?;
    Ok(if f_top2(c).euler_char() < 1 {
        BoundCheck::ViolatesBound
    } else {
        BoundCheck::Inconclusive
    })
}

/// The reduced walk between two objects inside a tree.
fn tree_walk(g: &Graph, tree: &Subgraph, x: ObjectId, y: ObjectId) -> Option<Walk> {
    let mut prev: HashMap<ObjectId, Letter> = HashMap::new();
    let mut queue = VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        if v == y {
            let mut letters = Vec::new();
            let mut at = y;
            while at != x {
                let l = prev[&at];
                letters.push(l);
                at = l.src(g);
            }
            letters.reverse();
            return Some(Walk { start: x, letters });
        }
        for &a in &tree.arrows {
            for l in [Letter::pos(a), Letter::neg(a)] {
                let w = l.tgt(g);
                if l.src(g) == v && w != x && !prev.contains_key(&w) {
                    prev.insert(w, l);
                    queue.push_back(w);
                }
            }
        }
    }
    None
}

/// The positive path between two objects inside a weak tree.
fn tree_path(g: &Graph, tree: &Subgraph, x: ObjectId, y: ObjectId) -> Option<Path> {
    let mut prev: HashMap<ObjectId, ArrowId> = HashMap::new();
    let mut queue = VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        if v == y {
            let mut arrows = Vec::new();
            let mut at = y;
            while at != x {
                let a = prev[&at];
                arrows.push(a);
                at = g.dom(a);
            }
            arrows.reverse();
            return Some(Path { start: x, arrows });
        }
        for &a in &tree.arrows {
            let w = g.cod(a);
            if g.dom(a) == v && w != x && !prev.contains_key(&w) {
                prev.insert(w, a);
                queue.push_back(w);
            }
        }
    }
    None
}

/// One cell `ḟ ⇒ f` per arrow `f` outside the deterministic maximal tree,
/// `ḟ` being the tree walk between the endpoints of `f`.
pub fn synth_efficient_groupoid(g: &Graph) -> Result<GroupoidalComputad2> {
    require_connected(g)?;
    let tree = g.maximal_tree()?;
    let cells = non_tree_arrows(g, &tree)
        .into_iter()
        .map(|f| {
            let dot = tree_walk(g, &tree, g.dom(f), g.cod(f)).expect("tree spans g");
            TwoCell {
                name: format!("alpha_{}", g.arrow_name(f)),
                source: dot,
                target: Walk::from_path(&Path::single(g, f)),
            }
        })
        .collect();
    Computad::new(g.clone(), cells)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryLift {
    Presentation(Computad2),
    NotFair,
}

/// For a fair graph: per non-tree arrow `f`, the cycle closed by `f` in the
/// witnessing tree splits into two directed halves with common endpoints.
/// The cell goes from the half through `f` to the half inside the tree.
pub fn lift_to_category_presentation(g: &Graph) -> Result<CategoryLift> {
    require_connected(g)?;
    let tree = match is_fair(g, DEFAULT_FAIR_BOUND)? {
        Fairness::Fair(t) => t,
        Fairness::NotFair => return Ok(CategoryLift::NotFair),
    };
    let mut cells = Vec::new();
    for f in non_tree_arrows(g, &tree) {
        let dot = tree_walk(g, &tree, g.dom(f), g.cod(f)).expect("tree spans g");
        let mut cycle = dot.letters.clone();
        cycle.push(Letter::neg(f));
        let (through, inside) = split_cycle(g, &cycle).ok_or_else(|| {
            Error::InvalidComputad(format!(
                "cycle of {} is not two directed halves",
                g.arrow_name(f)
            ))
        })?;
        cells.push(TwoCell {
            name: format!("alpha_{}", g.arrow_name(f)),
            source: through,
            target: inside,
        });
    }
    Ok(CategoryLift::Presentation(Computad::new(g.clone(), cells)?))
}

/// Splits a closed walk whose last letter is negative into the directed
/// halves `(negative run reversed, positive run)`, both from the same source.
fn split_cycle(g: &Graph, cycle: &[Letter]) -> Option<(Path, Path)> {
    let n = cycle.len();
    // Rotate so the walk starts at the beginning of a positive run.
    let start = (0..n).find(|&i| !cycle[i].inv && cycle[(i + n - 1) % n].inv)?;
    let rotated: Vec<Letter> = (0..n).map(|k| cycle[(start + k) % n]).collect();
    let split = rotated.iter().position(|l| l.inv)?;
    if rotated[split..].iter().any(|l| !l.inv) {
        return None;
    }
    let source = rotated[0].src(g);
    let positive = Path::new(
        g,
        source,
        rotated[..split].iter().map(|l| l.arrow).collect(),
    )
    .ok()?;
    let negative = Path::new(
        g,
        source,
        rotated[split..].iter().rev().map(|l| l.arrow).collect(),
    )
    .ok()?;
    // The half through the closing arrow is the negative run.
    Some((negative, positive))
}

/// Per arrow `f` outside `t`: `f ⇒ ḟ` with `ḟ` the `t`-path along `f`.
pub fn synth_strictly_increasing(g: &Graph, t: &Subgraph) -> Result<Computad2> {
    if classify_monotone(g, t)? != Monotonicity::StrictlyIncreasing {
        return Err(Error::NotStrictlyIncreasing);
    }
    synth_monotone(g, t)
}

/// As [`synth_strictly_increasing`] for increasing arrows; a nonincreasing
/// arrow `f: x → y` gets `f ḟ ⇒ id(x)` and `ḟ f ⇒ id(y)` with `ḟ: y → x`.
pub fn synth_monotone(g: &Graph, t: &Subgraph) -> Result<Computad2> {
    if classify_monotone(g, t)? == Monotonicity::NotMonotone {
        return Err(Error::NotMonotone);
    }
    let mut cells = Vec::new();
    for f in non_tree_arrows(g, t) {
        let (x, y) = (g.dom(f), g.cod(f));
        let name = g.arrow_name(f);
        let single = Path::single(g, f);
        if let Some(back) = tree_path(g, t, y, x) {
            cells.push(TwoCell {
                name: format!("beta_{name}_1"),
                source: single.compose(g, &back)?,
                target: Path::identity(x),
            });
            cells.push(TwoCell {
                name: format!("beta_{name}_-1"),
                source: back.compose(g, &single)?,
                target: Path::identity(y),
            });
        } else {
            let dot = tree_path(g, t, x, y).ok_or(Error::NotMonotone)?;
            cells.push(TwoCell {
                name: format!("alpha_{name}"),
                source: single,
                target: dot,
            });
        }
    }
    Computad::new(g.clone(), cells)
}

/// `1 − χ(F_Top2(c))`.
pub fn deficiency_of_category_presentation(c: &Computad2) -> Result<i64> {
    require_connected(&c.base)?;
    Ok(1 - f_top2(c).euler_char())
}

/// Category-level report: the deficiency field is `1 − χ(F_Top2)`.
pub fn category_report(c: &Computad2, construction: &str) -> Result<DeficiencyReport> {
    let mut r = report(c)?;
    r.construction = Some(construction.to_string());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::computad::{groupoidalize, i2, i2_groupoidal};
    use crate::presentation::{is_thin_category, is_thin_groupoid, Limits, Verdict};

    fn parallel(n: usize) -> Graph {
        let names: Vec<String> = (0..n)
            .map(|i| ["t", "u", "v", "w"][i].to_string())
            .collect();
        let arrows: Vec<(&str, &str, &str)> =
            names.iter().map(|a| (a.as_str(), "x", "y")).collect();
        Graph::new(&["x", "y"], &arrows).unwrap()
    }

    #[test]
    fn torus_and_tree_deficiency() {
        let g = Graph::new(&["*"], &[("a", "*", "*"), ("b", "*", "*")]).unwrap();
        let torus = GroupoidalComputad2::from_texts(g, &[("t", "a b", "b a")]).unwrap();
        let r = deficiency_of_presentation(&torus).unwrap();
        assert_eq!(
            (r.chi1, r.cells2, r.deficiency, r.bound_ok),
            (-1, 1, 1, false)
        );
        assert_eq!(
            check_not_thin_bound(&torus).unwrap(),
            BoundCheck::ViolatesBound
        );
        let tree = Graph::new(&["x", "y"], &[("a", "x", "y")]).unwrap();
        assert_eq!(
            deficiency_of_presentation(&i2_groupoidal(&tree))
                .unwrap()
                .deficiency,
            0
        );
        let two = Graph::new(&["x", "y"], &[]).unwrap();
        assert_eq!(
            deficiency_of_presentation(&i2_groupoidal(&two)),
            Err(Error::Graph(GraphError::NotConnected))
        );
    }

    #[test]
    fn efficient_groupoid_shapes() {
        let circle = Graph::new(&["*"], &[("a", "*", "*")]).unwrap();
        let c = synth_efficient_groupoid(&circle).unwrap();
        assert_eq!(c.cells.len(), 1);
        assert_eq!(c.cells[0].source.display(&c.base), "id(*)");
        assert_eq!(
            check_not_thin_bound(&i2_groupoidal(&circle)).unwrap(),
            BoundCheck::ViolatesBound
        );
        assert_eq!(check_not_thin_bound(&c).unwrap(), BoundCheck::Inconclusive);

        let c = synth_efficient_groupoid(&parallel(3)).unwrap();
        let shown: Vec<String> = c
            .cells
            .iter()
            .map(|k| {
                format!(
                    "{} => {}",
                    k.source.display(&c.base),
                    k.target.display(&c.base)
                )
            })
            .collect();
        assert_eq!(shown, ["t => u", "t => v"]);
        assert_eq!(is_thin_groupoid(&c, &Limits::default()), Verdict::Yes);
        assert_eq!(deficiency_of_presentation(&c).unwrap().deficiency, 0);
    }

    #[test]
    fn lifts() {
        let lifted = lift_to_category_presentation(&parallel(2)).unwrap();
        let CategoryLift::Presentation(c) = lifted else {
            panic!("parallel pair is fair")
        };
        assert_eq!(c.cells[0].source.display(&c.base), "u");
        assert_eq!(c.cells[0].target.display(&c.base), "t");

        // Weak tree a: x → y, b: z → y, c: z → w, e: x → w is not fair.
        let wt = Graph::new(
            &["x", "y", "z", "w"],
            &[
                ("a", "x", "y"),
                ("b", "z", "y"),
                ("c", "z", "w"),
                ("e", "x", "w"),
            ],
        )
        .unwrap();
        assert_eq!(
            lift_to_category_presentation(&wt).unwrap(),
            CategoryLift::NotFair
        );
        assert_eq!(
            deficiency_of_category_presentation(&i2(&wt)).unwrap(),
            1 - wt.euler_char()
        );
    }

    #[test]
    fn strictly_increasing_and_monotone() {
        let g = Graph::new(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("chord", "1", "3")],
        )
        .unwrap();
        let t = Subgraph::spanning(&g, [ArrowId(0), ArrowId(1)]);
        let c = synth_strictly_increasing(&g, &t).unwrap();
        assert_eq!(c.cells.len(), 1);
        assert_eq!(c.cells[0].target.display(&g), "a b");
        assert_eq!(deficiency_of_category_presentation(&c).unwrap(), 0);
        assert_eq!(is_thin_category(&c, &Limits::default()), Verdict::Yes);

        let back = Graph::new(&["1", "2"], &[("t", "1", "2"), ("f", "2", "1")]).unwrap();
        let t = Subgraph::spanning(&back, [ArrowId(0)]);
        assert_eq!(
            synth_strictly_increasing(&back, &t),
            Err(Error::NotStrictlyIncreasing)
        );
        let m = synth_monotone(&back, &t).unwrap();
        assert_eq!(m.cells.len(), 2);
        assert_eq!(m.cells[0].source.display(&back), "f t");
        assert_eq!(m.cells[1].source.display(&back), "t f");
        assert_eq!(deficiency_of_category_presentation(&m).unwrap(), -1);
        assert_eq!(is_thin_category(&m, &Limits::default()), Verdict::Yes);

        let loop_ = Graph::new(&["*"], &[("f", "*", "*")]).unwrap();
        let empty = Subgraph::spanning(&loop_, []);
        let m = synth_monotone(&loop_, &empty).unwrap();
        assert_eq!(m.cells.len(), 2);
        assert!(m.cells.iter().all(|k| k.source.display(&loop_) == "f"));
        assert_eq!(is_thin_category(&m, &Limits::default()), Verdict::Yes);
        assert_eq!(
            is_thin_groupoid(&groupoidalize(&m), &Limits::default()),
            Verdict::Yes
        );
    }
}

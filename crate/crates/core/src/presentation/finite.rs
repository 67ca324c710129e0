//! Exact quotients of finite free categories by congruence closure.

use std::collections::{BTreeMap, HashMap};

use crate::computad::Computad2;
use crate::error::{Error, Result};
use crate::free::{enumerate_paths, is_acyclic, FiniteCategoryTable, Morphism, Path};
use crate::graph::{DisjointSets, Graph, ObjectId};

/// A morphism class of the quotient, named by its least representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismClass {
    pub dom: ObjectId,
    pub cod: ObjectId,
    pub rep: Path,
}

/// The category presented by a computad over an acyclic graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinQuotient {
    pub base: Graph,
    /// Classes grouped by (dom, cod), each group ordered by representative.
    pub classes: Vec<MorphismClass>,
    pub identities: Vec<usize>,
    /// `composition[(f, g)]` is "f then g".
    pub composition: BTreeMap<(usize, usize), usize>,
    class_of: HashMap<Path, usize>,
}

impl FinQuotient {
    /// Class of an arbitrary path of the base graph.
    pub fn class_of(&self, p: &Path) -> Option<usize> {
        self.class_of.get(p).copied()
    }

    pub fn same_morphism(&self, p: &Path, q: &Path) -> bool {
        match (self.class_of(p), self.class_of(q)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    pub fn hom_size(&self, x: ObjectId, z: ObjectId) -> usize {
        self.classes
            .iter()
            .filter(|c| c.dom == x && c.cod == z)
            .count()
    }

    pub fn hom_sizes(&self) -> BTreeMap<(ObjectId, ObjectId), usize> {
        let mut out = BTreeMap::new();
        for x in self.base.objects() {
            for z in self.base.objects() {
                out.insert((x, z), self.hom_size(x, z));
            }
        }
        out
    }

    pub fn morphism_count(&self) -> usize {
        self.classes.len()
    }

    pub fn is_thin(&self) -> bool {
        self.hom_sizes().values().all(|&n| n <= 1)
    }

    pub fn to_table(&self) -> FiniteCategoryTable {
        FiniteCategoryTable {
            objects: self
                .base
                .objects()
                .map(|o| self.base.object_name(o).to_string())
                .collect(),
            morphisms: self
                .classes
                .iter()
                .map(|c| Morphism {
                    name: c.rep.display(&self.base),
                    dom: c.dom.0,
                    cod: c.cod.0,
                })
                .collect(),
            identities: self.identities.clone(),
            composition: self.composition.clone(),
        }
    }

    pub fn satisfies_cancellation(&self) -> bool {
        satisfies_cancellation_finite(&self.to_table())
    }
}

/// Closes the 2-cells under whiskering on all paths and merges classes with
/// union-find. Requires an acyclic base so that the free category is finite.
pub fn present_category_finite(c: &Computad2) -> Result<FinQuotient> {
    let g = &c.base;
    if !is_acyclic(g) {
        return Err(Error::InfiniteFreeCategory);
    }
    let mut paths: Vec<Path> = Vec::new();
    let mut index: HashMap<Path, usize> = HashMap::new();
    // Paths into / out of each object, for whiskering contexts.
    let mut into: Vec<Vec<usize>> = vec![Vec::new(); g.object_count()];
    let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); g.object_count()];
    for x in g.objects() {
        for z in g.objects() {
            for p in enumerate_paths(g, x, z, 0).paths {
                into[z.0].push(paths.len());
                out_of[x.0].push(paths.len());
                index.insert(p.clone(), paths.len());
                paths.push(p);
            }
        }
    }
    let mut uf = DisjointSets::new(paths.len());
    for cell in &c.cells {
        let (x, z) = (cell.source.start, cell.source.end(g));
        for &l in &into[x.0] {
            for &r in &out_of[z.0] {
                let whisker = |mid: &Path| {
                    let mut arrows = paths[l].arrows.clone();
                    arrows.extend_from_slice(&mid.arrows);
                    arrows.extend_from_slice(&paths[r].arrows);
                    index[&Path {
                        start: paths[l].start,
                        arrows,
                    }]
                };
                uf.union(whisker(&cell.source), whisker(&cell.target));
            }
        }
    }
    // Least representative per class: paths are already in (dom, cod,
    // length, lex) order, so the first member seen wins.
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut classes = Vec::new();
    let mut class_of = HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        let root = uf.find(i);
        let class = *class_of_root.entry(root).or_insert_with(|| {
            classes.push(MorphismClass {
                dom: p.start,
                cod: p.end(g),
                rep: p.clone(),
            });
            classes.len() - 1
        });
        class_of.insert(p.clone(), class);
    }
    let identities = g.objects().map(|x| class_of[&Path::identity(x)]).collect();
    let mut composition = BTreeMap::new();
    for (i, f) in classes.iter().enumerate() {
        for (j, h) in classes.iter().enumerate() {
            if f.cod == h.dom {
                let fh = f.rep.compose(g, &h.rep)?;
                composition.insert((i, j), class_of[&fh]);
            }
        }
    }
    Ok(FinQuotient {
        base: g.clone(),
        classes,
        identities,
        composition,
        class_of,
    })
}

/// Every morphism is mono and epi, checked over the whole table.
pub fn satisfies_cancellation_finite(t: &FiniteCategoryTable) -> bool {
    let mut left: HashMap<(usize, usize), usize> = HashMap::new();
    let mut right: HashMap<(usize, usize), usize> = HashMap::new();
    for (&(f, g), &h) in &t.composition {
        // f;g = f;g' forces g = g', and f;g = f';g forces f = f'.
        if left.insert((f, h), g).is_some_and(|prev| prev != g) {
            return false;
        }
        if right.insert((g, h), f).is_some_and(|prev| prev != f) {
            return false;
        }
    }
    true
}

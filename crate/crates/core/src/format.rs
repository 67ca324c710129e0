//! The `.cmp` text format.
//!
//! One statement per line, `#` starts a comment. A file holds a single
//! document; its kind is given by an optional `kind <k>` line or inferred from
//! the statements used:
//!
//! ```text
//! object <id>
//! arrow <id> : <src> -> <tgt>
//! identity <id> : <obj>
//! cell2 <id> : <path> => <path>
//! cell3 <id> : <2word> => <2word>
//! morphism <id> : <src> -> <tgt>
//! compose <f> <g> = <h>
//! generator <id>
//! relation <word> = <word>
//! relator <word>
//! ```
//!
//! Declaration order is kept everywhere, so it fixes every later tie-break.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use crate::computad::{
    groupoidalize, i2, i2_groupoidal, Boundary, Computad, Computad2, GroupoidalComputad2,
    ReflexiveComputad2, TwoCell,
};
use crate::error::{Error, Result};
use crate::free::{
    suspend_presentation, FiniteCategoryTable, Morphism, Path, Suspension, SuspensionKind, Walk,
};
use crate::graph::{Graph, ReflexiveGraph};
use crate::two_dim::{Computad3, ThreeCell, TwoCellWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DocumentKind {
    Graph,
    Reflexive,
    Computad,
    Groupoidal,
    Computad3,
    Category,
    Monoid,
    Group,
}

impl DocumentKind {
    pub fn name(self) -> &'static str {
        match self {
            DocumentKind::Graph => "graph",
            DocumentKind::Reflexive => "reflexive",
            DocumentKind::Computad => "computad",
            DocumentKind::Groupoidal => "groupoidal",
            DocumentKind::Computad3 => "computad3",
            DocumentKind::Category => "category",
            DocumentKind::Monoid => "monoid",
            DocumentKind::Group => "group",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        [
            DocumentKind::Graph,
            DocumentKind::Reflexive,
            DocumentKind::Computad,
            DocumentKind::Groupoidal,
            DocumentKind::Computad3,
            DocumentKind::Category,
            DocumentKind::Monoid,
            DocumentKind::Group,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

/// A monoid or group presentation by generators and relations. Group
/// relators are stored as relations `w = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationDoc {
    pub kind: SuspensionKind,
    pub generators: Vec<String>,
    pub relations: Vec<(String, String)>,
}

impl PresentationDoc {
    pub fn suspend(&self) -> Result<Suspension> {
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        let rels: Vec<(&str, &str)> = self
            .relations
            .iter()
            .map(|(l, r)| (l.as_str(), r.as_str()))
            .collect();
        suspend_presentation(self.kind, &gens, &rels)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CmpDocument {
    Graph(Graph),
    ReflexiveGraph(ReflexiveGraph),
    ReflexiveComputad(ReflexiveComputad2),
    Computad(Computad2),
    Groupoidal(GroupoidalComputad2),
    Computad3(Computad3),
    Category(FiniteCategoryTable),
    Presentation(PresentationDoc),
}

impl CmpDocument {
    pub fn kind(&self) -> DocumentKind {
        match self {
            CmpDocument::Graph(_) => DocumentKind::Graph,
            CmpDocument::ReflexiveGraph(_) | CmpDocument::ReflexiveComputad(_) => {
                DocumentKind::Reflexive
            }
            CmpDocument::Computad(_) => DocumentKind::Computad,
            CmpDocument::Groupoidal(_) => DocumentKind::Groupoidal,
            CmpDocument::Computad3(_) => DocumentKind::Computad3,
            CmpDocument::Category(_) => DocumentKind::Category,
            CmpDocument::Presentation(p) => match p.kind {
                SuspensionKind::Monoid => DocumentKind::Monoid,
                SuspensionKind::Group => DocumentKind::Group,
            },
        }
    }

    /// The underlying 1-dimensional graph, identities stripped.
    pub fn graph(&self) -> Option<Graph> {
        match self {
            CmpDocument::Graph(g) => Some(g.clone()),
            CmpDocument::ReflexiveGraph(r) => Some(r.strip()),
            CmpDocument::Category(_) => None,
            _ => self
                .computad()
                .map(|c| c.base)
                .or_else(|| self.groupoidal().map(|c| c.base)),
        }
    }

    /// The document as a computad with path boundaries, when it is one:
    /// graphs give `i₂`, reflexive data is normalized, monoids are suspended.
    pub fn computad(&self) -> Option<Computad2> {
        match self {
            CmpDocument::Graph(g) => Some(i2(g)),
            CmpDocument::ReflexiveGraph(r) => Some(i2(&r.strip())),
            CmpDocument::ReflexiveComputad(r) => r.normalize().ok(),
            CmpDocument::Computad(c) => Some(c.clone()),
            CmpDocument::Computad3(c) => Some(c.base.clone()),
            CmpDocument::Presentation(p) => match p.suspend().ok()? {
                Suspension::Monoid(c) => Some(c),
                Suspension::Group(_) => None,
            },
            CmpDocument::Groupoidal(_) | CmpDocument::Category(_) => None,
        }
    }

    /// The document as a groupoidal computad, when it has a 2-skeleton.
    pub fn groupoidal(&self) -> Option<GroupoidalComputad2> {
        match self {
            CmpDocument::Groupoidal(c) => Some(c.clone()),
            CmpDocument::Graph(g) => Some(i2_groupoidal(g)),
            CmpDocument::Presentation(p) => match p.suspend().ok()? {
                Suspension::Monoid(c) => Some(groupoidalize(&c)),
                Suspension::Group(c) => Some(c),
            },
            _ => self.computad().map(|c| groupoidalize(&c)),
        }
    }

    pub fn computad3(&self) -> Option<Computad3> {
        match self {
            CmpDocument::Computad3(c) => Some(c.clone()),
            _ => self.computad().map(|base| Computad3 {
                base,
                cells3: Vec::new(),
            }),
        }
    }
}

enum Stmt {
    Kind(String),
    Object(String),
    Arrow(String, String, String),
    Identity(String, String),
    Cell2(String, String, String),
    Cell3(String, String, String),
    Morphism(String, String, String),
    Compose(String, String, String),
    Generator(String),
    Relation(String, String),
    Relator(String),
}

impl Stmt {
    fn keyword(&self) -> &'static str {
        match self {
            Stmt::Kind(_) => "kind",
            Stmt::Object(_) => "object",
            Stmt::Arrow(..) => "arrow",
            Stmt::Identity(..) => "identity",
            Stmt::Cell2(..) => "cell2",
            Stmt::Cell3(..) => "cell3",
            Stmt::Morphism(..) => "morphism",
            Stmt::Compose(..) => "compose",
            Stmt::Generator(_) => "generator",
            Stmt::Relation(..) => "relation",
            Stmt::Relator(_) => "relator",
        }
    }

    fn allowed_in(&self, kind: DocumentKind) -> bool {
        use DocumentKind as K;
        match self {
            Stmt::Kind(_) => true,
            Stmt::Object(_) => !matches!(kind, K::Monoid | K::Group),
            Stmt::Arrow(..) => !matches!(kind, K::Category | K::Monoid | K::Group),
            Stmt::Identity(..) => matches!(kind, K::Reflexive | K::Category),
            Stmt::Cell2(..) => matches!(
                kind,
                K::Reflexive | K::Computad | K::Groupoidal | K::Computad3
            ),
            Stmt::Cell3(..) => kind == K::Computad3,
            Stmt::Morphism(..) | Stmt::Compose(..) => kind == K::Category,
            Stmt::Generator(_) | Stmt::Relation(..) => matches!(kind, K::Monoid | K::Group),
            Stmt::Relator(_) => kind == K::Group,
        }
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Attaches a line number to an error from a lower layer.
fn at(line: usize, e: Error) -> Error {
    match e {
        Error::UnknownArrow(name) | Error::ObjectNotFound(name) | Error::UnknownGenerator(name) => {
            Error::UnresolvedReference { line, name }
        }
        e @ (Error::Parse { .. } | Error::UnresolvedReference { .. }) => e,
        other => perr(line, other.to_string()),
    }
}

fn ident(line: usize, s: &str) -> Result<String> {
    let s = s.trim();
    let reserved = |c: char| c.is_whitespace() || ":;|[]()=#".contains(c);
    if s.is_empty() || s.contains(reserved) || s.ends_with("^-1") || s.contains("->") {
        return Err(perr(line, format!("invalid identifier `{s}`")));
    }
    Ok(s.to_string())
}

/// Splits `<id> : <rest>`.
fn head(line: usize, rest: &str) -> Result<(String, String)> {
    let (id, body) = rest
        .split_once(':')
        .ok_or_else(|| perr(line, "expected `<id> : ...`"))?;
    Ok((ident(line, id)?, body.trim().to_string()))
}

fn split2(line: usize, body: &str, sep: &str) -> Result<(String, String)> {
    let (a, b) = body
        .split_once(sep)
        .ok_or_else(|| perr(line, format!("expected `{sep}`")))?;
    let (a, b) = (a.trim(), b.trim());
    if a.is_empty() || b.is_empty() || b.contains(sep) {
        return Err(perr(line, format!("malformed `... {sep} ...`")));
    }
    Ok((a.to_string(), b.to_string()))
}

fn parse_stmt(line: usize, text: &str) -> Result<Stmt> {
    let (kw, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    let edge = |rest: &str| -> Result<(String, String, String)> {
        let (id, body) = head(line, rest)?;
        let (s, t) = split2(line, &body, "->")?;
        Ok((id, ident(line, &s)?, ident(line, &t)?))
    };
    let cell = |rest: &str| -> Result<(String, String, String)> {
        let (id, body) = head(line, rest)?;
        let (s, t) = split2(line, &body, "=>")?;
        Ok((id, s, t))
    };
    Ok(match kw {
        "kind" => Stmt::Kind(ident(line, rest)?),
        "object" => Stmt::Object(ident(line, rest)?),
        "generator" => Stmt::Generator(ident(line, rest)?),
        "arrow" => {
            let (a, s, t) = edge(rest)?;
            Stmt::Arrow(a, s, t)
        }
        "morphism" => {
            let (a, s, t) = edge(rest)?;
            Stmt::Morphism(a, s, t)
        }
        "identity" => {
            let (id, obj) = head(line, rest)?;
            Stmt::Identity(id, ident(line, &obj)?)
        }
        "cell2" => {
            let (a, s, t) = cell(rest)?;
            Stmt::Cell2(a, s, t)
        }
        "cell3" => {
            let (a, s, t) = cell(rest)?;
            Stmt::Cell3(a, s, t)
        }
        "compose" => {
            let (fg, h) = split2(line, rest, "=")?;
            let parts: Vec<&str> = fg.split_whitespace().collect();
            let [f, g] = parts[..] else {
                return Err(perr(line, "expected `compose <f> <g> = <h>`"));
            };
            Stmt::Compose(ident(line, f)?, ident(line, g)?, ident(line, &h)?)
        }
        "relation" => {
            let (l, r) = split2(line, rest, "=")?;
            Stmt::Relation(l, r)
        }
        "relator" if !rest.is_empty() => Stmt::Relator(rest.to_string()),
        _ => return Err(perr(line, format!("unknown statement `{text}`"))),
    })
}

fn infer_kind(stmts: &[(usize, Stmt)]) -> Result<DocumentKind> {
    let mut explicit = None;
    for (line, s) in stmts {
        if let Stmt::Kind(k) = s {
            if explicit.is_some() {
                return Err(perr(*line, "duplicate kind line"));
            }
            explicit = Some(
                DocumentKind::from_name(k)
                    .ok_or_else(|| perr(*line, format!("unknown kind `{k}`")))?,
            );
        }
    }
    if let Some(k) = explicit {
        return Ok(k);
    }
    let has = |p: &dyn Fn(&Stmt) -> bool| stmts.iter().any(|(_, s)| p(s));
    let inverse_token = |w: &str| w.split_whitespace().any(|t| t.ends_with("^-1"));
    Ok(
        if has(&|s| matches!(s, Stmt::Morphism(..) | Stmt::Compose(..))) {
            DocumentKind::Category
        } else if has(&|s| matches!(s, Stmt::Relator(_)))
            || has(&|s| matches!(s, Stmt::Relation(l, r) if inverse_token(l) || inverse_token(r)))
        {
            DocumentKind::Group
        } else if has(&|s| matches!(s, Stmt::Generator(_) | Stmt::Relation(..))) {
            DocumentKind::Monoid
        } else if has(&|s| matches!(s, Stmt::Cell3(..))) {
            DocumentKind::Computad3
        } else if has(&|s| matches!(s, Stmt::Identity(..))) {
            DocumentKind::Reflexive
        } else if has(
            &|s| matches!(s, Stmt::Cell2(_, a, b) if inverse_token(a) || inverse_token(b)),
        ) {
            DocumentKind::Groupoidal
        } else if has(&|s| matches!(s, Stmt::Cell2(..))) {
            DocumentKind::Computad
        } else {
            DocumentKind::Graph
        },
    )
}

/// Objects, arrows and identities, resolved with line numbers.
fn build_graph(stmts: &[(usize, Stmt)]) -> Result<(Graph, Vec<crate::graph::ArrowId>)> {
    let mut g = Graph::empty();
    let mut identities = BTreeMap::new();
    for (line, s) in stmts {
        let line = *line;
        let object = |g: &Graph, name: &str| {
            g.object_id(name).ok_or_else(|| Error::UnresolvedReference {
                line,
                name: name.to_string(),
            })
        };
        match s {
            Stmt::Object(name) => {
                if g.object_id(name).is_some() {
                    return Err(perr(line, format!("duplicate object {name}")));
                }
                g.push_object(name);
            }
            Stmt::Arrow(name, src, tgt) | Stmt::Identity(name, src @ tgt) => {
                if g.arrow_id(name).is_some() {
                    return Err(perr(line, format!("duplicate arrow {name}")));
                }
                let (d, c) = (object(&g, src)?, object(&g, tgt)?);
                let a = g.push_arrow(name, d, c);
                if matches!(s, Stmt::Identity(..)) && identities.insert(d, a).is_some() {
                    return Err(perr(line, format!("second identity for object {src}")));
                }
            }
            _ => {}
        }
    }
    let ids = g
        .objects()
        .map(|o| identities.get(&o).copied())
        .collect::<Option<Vec<_>>>()
        .unwrap_or_default();
    if !identities.is_empty() && ids.is_empty() {
        let missing = g.objects().find(|o| !identities.contains_key(o)).unwrap();
        let line = stmts.last().map_or(1, |(l, _)| *l);
        return Err(perr(
            line,
            format!("object {} has no identity", g.object_name(missing)),
        ));
    }
    Ok((g, ids))
}

fn build_cells<B: Boundary>(g: &Graph, stmts: &[(usize, Stmt)]) -> Result<Computad<B>> {
    let mut cells: Vec<TwoCell<B>> = Vec::new();
    for (line, s) in stmts {
        if let Stmt::Cell2(name, src, tgt) = s {
            let line = *line;
            if cells.iter().any(|c| &c.name == name) {
                return Err(perr(line, format!("duplicate cell {name}")));
            }
            let cell = TwoCell {
                name: name.clone(),
                source: B::parse(g, src).map_err(|e| at(line, e))?,
                target: B::parse(g, tgt).map_err(|e| at(line, e))?,
            };
            let probe = Computad {
                base: g.clone(),
                cells: vec![cell.clone()],
            };
            if let Some(p) = probe.validate().into_iter().next() {
                return Err(perr(line, p));
            }
            cells.push(cell);
        }
    }
    Ok(Computad {
        base: g.clone(),
        cells,
    })
}

fn build_category(stmts: &[(usize, Stmt)]) -> Result<FiniteCategoryTable> {
    let mut t = FiniteCategoryTable::default();
    let mut objects: HashMap<String, usize> = HashMap::new();
    let mut morphisms: HashMap<String, usize> = HashMap::new();
    let mut identities: BTreeMap<usize, usize> = BTreeMap::new();
    let unresolved = |line: usize, name: &str| Error::UnresolvedReference {
        line,
        name: name.to_string(),
    };
    for (line, s) in stmts {
        let line = *line;
        match s {
            Stmt::Object(name) => {
                if objects.insert(name.clone(), t.objects.len()).is_some() {
                    return Err(perr(line, format!("duplicate object {name}")));
                }
                t.objects.push(name.clone());
            }
            Stmt::Morphism(name, src, tgt) | Stmt::Identity(name, src @ tgt) => {
                let dom = *objects.get(src).ok_or_else(|| unresolved(line, src))?;
                let cod = *objects.get(tgt).ok_or_else(|| unresolved(line, tgt))?;
                let idx = t.morphisms.len();
                if morphisms.insert(name.clone(), idx).is_some() {
                    return Err(perr(line, format!("duplicate morphism {name}")));
                }
                t.morphisms.push(Morphism {
                    name: name.clone(),
                    dom,
                    cod,
                });
                if matches!(s, Stmt::Identity(..)) && identities.insert(dom, idx).is_some() {
                    return Err(perr(line, format!("second identity for object {src}")));
                }
            }
            Stmt::Compose(f, g, h) => {
                let look =
                    |n: &String| morphisms.get(n).copied().ok_or_else(|| unresolved(line, n));
                let (f, g, h) = (look(f)?, look(g)?, look(h)?);
                if let Some(old) = t.composition.insert((f, g), h) {
                    if old != h {
                        return Err(perr(line, "conflicting composite"));
                    }
                }
            }
            _ => {}
        }
    }
    t.identities = (0..t.objects.len())
        .map(|x| identities.get(&x).copied())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidTable("every object needs one identity".into()))?;
    // Identity composites are implied.
    for (f, m) in t.morphisms.iter().enumerate() {
        t.composition.entry((t.identities[m.dom], f)).or_insert(f);
        t.composition.entry((f, t.identities[m.cod])).or_insert(f);
    }
    t.validate()?;
    Ok(t)
}

fn build_presentation(kind: DocumentKind, stmts: &[(usize, Stmt)]) -> Result<PresentationDoc> {
    let mut p = PresentationDoc {
        kind: if kind == DocumentKind::Group {
            SuspensionKind::Group
        } else {
            SuspensionKind::Monoid
        },
        generators: Vec::new(),
        relations: Vec::new(),
    };
    let mut seen = HashSet::new();
    for (line, s) in stmts {
        let line = *line;
        let check = |w: &str| -> Result<String> {
            let mut toks = Vec::new();
            for tok in w.split_whitespace() {
                let name = tok.strip_suffix("^-1").unwrap_or(tok);
                if tok != "1" && !seen.contains(name) {
                    return Err(Error::UnresolvedReference {
                        line,
                        name: name.to_string(),
                    });
                }
                if name != tok && p.kind == SuspensionKind::Monoid {
                    return Err(perr(line, format!("inverse letter {tok} in a monoid word")));
                }
                toks.push(tok);
            }
            Ok(toks.join(" "))
        };
        match s {
            Stmt::Generator(g) => {
                if !seen.insert(g.clone()) {
                    return Err(perr(line, format!("duplicate generator {g}")));
                }
                p.generators.push(g.clone());
            }
            Stmt::Relation(l, r) => {
                let rel = (check(l)?, check(r)?);
                p.relations.push(rel);
            }
            Stmt::Relator(w) => {
                let rel = (check(w)?, "1".to_string());
                p.relations.push(rel);
            }
            _ => {}
        }
    }
    Ok(p)
}

/// Parses a `.cmp` document.
pub fn parse(text: &str) -> Result<CmpDocument> {
    let mut stmts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if !content.is_empty() {
            stmts.push((i + 1, parse_stmt(i + 1, content)?));
        }
    }
    let kind = infer_kind(&stmts)?;
    if let Some((line, s)) = stmts.iter().find(|(_, s)| !s.allowed_in(kind)) {
        return Err(perr(
            *line,
            format!(
                "`{}` is not allowed in a {} document",
                s.keyword(),
                kind.name()
            ),
        ));
    }
    Ok(match kind {
        DocumentKind::Category => CmpDocument::Category(build_category(&stmts)?),
        DocumentKind::Monoid | DocumentKind::Group => {
            CmpDocument::Presentation(build_presentation(kind, &stmts)?)
        }
        DocumentKind::Graph => CmpDocument::Graph(build_graph(&stmts)?.0),
        DocumentKind::Reflexive => {
            let (g, ids) = build_graph(&stmts)?;
            let line = stmts.last().map_or(1, |(l, _)| *l);
            if ids.len() != g.object_count() {
                return Err(perr(line, "every object needs an identity"));
            }
            let cells = build_cells::<Path>(&g, &stmts)?.cells;
            let base = ReflexiveGraph::new(g, ids).map_err(|e| at(line, e.into()))?;
            if stmts.iter().any(|(_, s)| matches!(s, Stmt::Cell2(..))) {
                CmpDocument::ReflexiveComputad(ReflexiveComputad2 { base, cells })
            } else {
                CmpDocument::ReflexiveGraph(base)
            }
        }
        DocumentKind::Computad => {
            CmpDocument::Computad(build_cells(&build_graph(&stmts)?.0, &stmts)?)
        }
        DocumentKind::Groupoidal => {
            CmpDocument::Groupoidal(build_cells::<Walk>(&build_graph(&stmts)?.0, &stmts)?)
        }
        DocumentKind::Computad3 => {
            let base: Computad2 = build_cells(&build_graph(&stmts)?.0, &stmts)?;
            let mut cells3: Vec<ThreeCell> = Vec::new();
            for (line, s) in &stmts {
                if let Stmt::Cell3(name, src, tgt) = s {
                    let line = *line;
                    if cells3.iter().any(|c| &c.name == name) {
                        return Err(perr(line, format!("duplicate 3-cell {name}")));
                    }
                    cells3.push(ThreeCell {
                        name: name.clone(),
                        source: TwoCellWord::parse(&base, src).map_err(|e| at(line, e))?,
                        target: TwoCellWord::parse(&base, tgt).map_err(|e| at(line, e))?,
                    });
                    let probe = Computad3 {
                        base: base.clone(),
                        cells3: vec![cells3.last().unwrap().clone()],
                    };
                    if let Some(p) = probe.validate().into_iter().next() {
                        return Err(perr(line, p));
                    }
                }
            }
            CmpDocument::Computad3(Computad3 { base, cells3 })
        }
    })
}

pub fn parse_file(path: impl AsRef<std::path::Path>) -> Result<CmpDocument> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

fn print_graph(out: &mut String, g: &Graph, identity: &[crate::graph::ArrowId]) {
    for o in g.objects() {
        let _ = writeln!(out, "object {}", g.object_name(o));
    }
    for a in g.arrow_ids() {
        let (d, c) = (g.object_name(g.dom(a)), g.object_name(g.cod(a)));
        if identity.contains(&a) {
            let _ = writeln!(out, "identity {} : {d}", g.arrow_name(a));
        } else {
            let _ = writeln!(out, "arrow {} : {d} -> {c}", g.arrow_name(a));
        }
    }
}

fn print_cells<B: Boundary>(out: &mut String, c: &Computad<B>) {
    for cell in &c.cells {
        let _ = writeln!(
            out,
            "cell2 {} : {} => {}",
            cell.name,
            cell.source.display(&c.base),
            cell.target.display(&c.base)
        );
    }
}

/// Canonical text of a document; `parse(&print(d)) == d`.
pub fn print(doc: &CmpDocument) -> String {
    let mut out = format!("kind {}\n", doc.kind().name());
    match doc {
        CmpDocument::Graph(g) => print_graph(&mut out, g, &[]),
        CmpDocument::ReflexiveGraph(r) => print_graph(&mut out, &r.base, &r.identity),
        CmpDocument::ReflexiveComputad(r) => {
            print_graph(&mut out, &r.base.base, &r.base.identity);
            print_cells(
                &mut out,
                &Computad {
                    base: r.base.base.clone(),
                    cells: r.cells.clone(),
                },
            );
        }
        CmpDocument::Computad(c) => {
            print_graph(&mut out, &c.base, &[]);
            print_cells(&mut out, c);
        }
        CmpDocument::Groupoidal(c) => {
            print_graph(&mut out, &c.base, &[]);
            print_cells(&mut out, c);
        }
        CmpDocument::Computad3(c) => {
            print_graph(&mut out, &c.base.base, &[]);
            print_cells(&mut out, &c.base);
            for cell in &c.cells3 {
                let _ = writeln!(
                    out,
                    "cell3 {} : {} => {}",
                    cell.name,
                    cell.source.display(&c.base),
                    cell.target.display(&c.base)
                );
            }
        }
        CmpDocument::Category(t) => {
            for o in &t.objects {
                let _ = writeln!(out, "object {o}");
            }
            for (i, m) in t.morphisms.iter().enumerate() {
                let (d, c) = (&t.objects[m.dom], &t.objects[m.cod]);
                if t.identities[m.dom] == i {
                    let _ = writeln!(out, "identity {} : {d}", m.name);
                } else {
                    let _ = writeln!(out, "morphism {} : {d} -> {c}", m.name);
                }
            }
            for (&(f, g), &h) in &t.composition {
                if !t.is_identity(f) && !t.is_identity(g) {
                    let name = |i: usize| &t.morphisms[i].name;
                    let _ = writeln!(out, "compose {} {} = {}", name(f), name(g), name(h));
                }
            }
        }
        CmpDocument::Presentation(p) => {
            for g in &p.generators {
                let _ = writeln!(out, "generator {g}");
            }
            for (l, r) in &p.relations {
                let _ = writeln!(out, "relation {l} = {r}");
            }
        }
    }
    out
}

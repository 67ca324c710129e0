//! Command-line front end: every command reads a `.cmp` file and prints one
//! JSON object on stdout.
//!
//! Exit codes: `0` for definite answers, `2` when some answer is unknown or
//! a budget ran out, `1` on errors.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::computad::{Computad2, GroupoidalComputad2};
use crate::cw::{self, f_top1, f_top2, f_top3, CWComplex};
use crate::deficiency::{
    category_report, check_not_thin_bound, deficiency_of_category_presentation,
    deficiency_of_presentation, lift_to_category_presentation, synth_efficient_groupoid,
    synth_monotone, synth_strictly_increasing, CategoryLift,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::format::{self, CmpDocument};
use crate::free::{enumerate_paths, hom_count_free, is_acyclic, HomCount};
use crate::graph::{
    classify_monotone, is_fair, Fairness, Graph, ObjectId, Subgraph, DEFAULT_FAIR_BOUND,
};
use crate::presentation::{
    abelianization_invariants, is_thin_category, is_thin_groupoid, is_trivial_group, knuth_bendix,
    pi1_presentation, Completion, Limits, Verdict,
};
use crate::random;
use crate::two_dim::{
    find_fcs_triple, full_subcomputad, is_fcs, locally_thin_criteria, synth_320_from_triple,
    Computad3, FcsVerdict, ThinCriteria,
};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "computads",
    version,
    about = "Analyze computads and presentations"
)]
pub struct Cli {
    /// Budgets as `rules=N,steps=N,cosets=N`.
    #[arg(long, global = true, default_value = "")]
    pub limits: String,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SynthKind {
    Efficient,
    Category,
    Strict,
    Monotone,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Connectivity, forests, weak trees and fairness of the underlying graph.
    AnalyzeGraph { file: PathBuf },
    /// Hom-set sizes of the free category, and paths between two objects.
    FreeInfo {
        file: PathBuf,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Completes the presentation and reports the presented category.
    Present { file: PathBuf },
    /// Fundamental group of each component.
    Pi1 { file: PathBuf },
    /// Thinness of the presented category and groupoid.
    Thin { file: PathBuf },
    /// Cells, Euler characteristic, homology and homotopy of the CW model.
    Cw { file: PathBuf },
    /// Deficiency and the thinness bound.
    Deficiency { file: PathBuf },
    /// Builds a presentation of the thin category or groupoid on the graph.
    Synth {
        kind: SynthKind,
        file: PathBuf,
        /// Comma-separated tree arrows; defaults to a fair witness or the
        /// spanning tree.
        #[arg(long)]
        tree: Option<String>,
    },
    /// Whether the given cells form a full contractible subcomputad.
    Fcs {
        file: PathBuf,
        /// Comma-separated cells; defaults to all cells.
        #[arg(long)]
        cells: Option<String>,
    },
    /// Local thinness criteria of a 3-computad.
    Thin2 {
        file: PathBuf,
        /// Adds the 3-cells built from an f.c.s. triple before deciding.
        #[arg(long)]
        synth: bool,
    },
    /// Checks the shipped corpus and random computads.
    Fixtures {
        #[arg(long, default_value_t = 20)]
        random: usize,
    },
}

/// A finished command: the JSON body and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    fn new(command: &str, mut body: Value, code: i32) -> Self {
        let obj = body.as_object_mut().expect("reports are objects");
        obj.insert("schema".into(), json!(SCHEMA));
        obj.insert("command".into(), json!(command));
        Outcome { report: body, code }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            report: json!({ "schema": SCHEMA, "error": e.to_string() }),
            code: 1,
        }
    }
}

fn code_of(verdicts: &[Verdict]) -> i32 {
    if verdicts.contains(&Verdict::Unknown) {
        2
    } else {
        0
    }
}

fn need<T>(doc: &CmpDocument, what: &str, v: Option<T>) -> Result<T> {
    v.ok_or_else(|| {
        Error::InvalidComputad(format!("a {} document has no {what}", doc.kind().name()))
    })
}

fn graph_of(doc: &CmpDocument) -> Result<Graph> {
    need(doc, "graph", doc.graph())
}

fn computad_of(doc: &CmpDocument) -> Result<Computad2> {
    need(doc, "path-boundary computad", doc.computad())
}

fn groupoidal_of(doc: &CmpDocument) -> Result<GroupoidalComputad2> {
    need(doc, "groupoidal computad", doc.groupoidal())
}

fn names(g: &Graph, s: &Subgraph) -> Vec<String> {
    s.arrow_names(g).into_iter().map(String::from).collect()
}

fn hom_json(count: &HomCount) -> Value {
    match count {
        HomCount::Finite(n) => json!(n),
        HomCount::Infinite => json!("infinite"),
    }
}

fn object(g: &Graph, name: &str) -> Result<ObjectId> {
    g.object_id(name)
        .ok_or_else(|| Error::ObjectNotFound(name.to_string()))
}

fn parse_tree(g: &Graph, spec: &str) -> Result<Subgraph> {
    let arrows = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|n| {
            g.arrow_id(n)
                .ok_or_else(|| Error::UnknownArrow(n.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subgraph::spanning(g, arrows))
}

/// The CW model of the document at its top dimension.
fn complex(doc: &CmpDocument) -> Result<CWComplex> {
    Ok(match doc {
        CmpDocument::Graph(g) => f_top1(g),
        CmpDocument::ReflexiveGraph(r) => f_top1(&r.strip()),
        CmpDocument::Computad3(c) => f_top3(c),
        CmpDocument::Groupoidal(c) => f_top2(c),
        _ => f_top2(&computad_of(doc)?),
    })
}

fn analyze_graph(doc: &CmpDocument) -> Result<Outcome> {
    let g = graph_of(doc)?;
    let components: Vec<Vec<&str>> = g
        .connected_components()
        .iter()
        .map(|b| b.iter().map(|&o| g.object_name(o)).collect())
        .collect();
    let fair = match is_fair(&g, DEFAULT_FAIR_BOUND) {
        Ok(Fairness::Fair(t)) => {
            let class = classify_monotone(&g, &t).ok();
            json!({ "fair": true, "witness": names(&g, &t), "monotone": class })
        }
        Ok(Fairness::NotFair) => json!({ "fair": false }),
        Err(e) => json!({ "fair": "unknown", "reason": e.to_string() }),
    };
    let code = if fair["fair"] == json!("unknown") {
        2
    } else {
        0
    };
    let body = json!({
        "objects": g.object_count(),
        "arrows": g.arrow_count(),
        "euler_char": g.euler_char(),
        "components": components,
        "connected": g.is_connected(),
        "acyclic": is_acyclic(&g),
        "forest": g.is_forest(),
        "tree": g.is_tree(),
        "weak_forest": g.is_weak_forest(),
        "spanning_forest": names(&g, &g.spanning_forest()),
        "fairness": fair,
    });
    Ok(Outcome::new("analyze-graph", body, code))
}

fn free_info(
    doc: &CmpDocument,
    from: Option<&str>,
    to: Option<&str>,
    max_len: usize,
) -> Result<Outcome> {
    let g = graph_of(doc)?;
    let mut homs = Vec::new();
    for x in g.objects() {
        for z in g.objects() {
            homs.push(json!({
                "from": g.object_name(x),
                "to": g.object_name(z),
                "count": hom_json(&hom_count_free(&g, x, z)),
            }));
        }
    }
    let mut body = json!({ "acyclic": is_acyclic(&g), "hom_sizes": homs });
    if let (Some(x), Some(z)) = (from, to) {
        let e = enumerate_paths(&g, object(&g, x)?, object(&g, z)?, max_len);
        body["paths"] = json!(e.paths.iter().map(|p| p.display(&g)).collect::<Vec<_>>());
        body["all_paths"] = json!(e.all);
    }
    Ok(Outcome::new("free-info", body, 0))
}

fn present(doc: &CmpDocument, limits: &Limits) -> Result<Outcome> {
    let c = computad_of(doc)?;
    let g = &c.base;
    let completion = knuth_bendix(&c, limits);
    let rs = completion.system();
    let status = match completion {
        Completion::Complete(_) => "complete",
        Completion::Timeout(_) => "timeout",
    };
    let rules: Vec<String> = rs
        .rules
        .iter()
        .map(|r| format!("{} -> {}", r.lhs.display(g), r.rhs.display(g)))
        .collect();
    let mut body = json!({ "status": status, "rules": rules });
    let mut code = 0;
    if completion.is_complete() {
        let counts = rs.hom_counts();
        let total = counts.iter().try_fold(0u128, |acc, (_, h)| match h {
            HomCount::Finite(n) => Some(acc + n),
            HomCount::Infinite => None,
        });
        body["hom_sizes"] = json!(counts
            .iter()
            .map(|((x, z), h)| json!({
                "from": g.object_name(*x),
                "to": g.object_name(*z),
                "count": hom_json(h),
            }))
            .collect::<Vec<_>>());
        body["total"] = total.map_or(json!("infinite"), |t| json!(t));
    } else {
        code = 2;
    }
    let groupoidal = crate::computad::groupoidalize(&c);
    let relators: Vec<Vec<String>> = g
        .connected_components()
        .iter()
        .map(|b| {
            pi1_presentation(&groupoidal, b[0])
                .map(|p| p.relator_strings())
                .unwrap_or_default()
        })
        .collect();
    body["relators"] = json!(relators);
    Ok(Outcome::new("present", body, code))
}

fn pi1(doc: &CmpDocument, limits: &Limits) -> Result<Outcome> {
    let c = groupoidal_of(doc)?;
    let g = &c.base;
    let mut verdicts = Vec::new();
    let mut groups = Vec::new();
    for block in g.connected_components() {
        let p = pi1_presentation(&c, block[0])?;
        let simplified = p.simplify();
        let trivial = is_trivial_group(&p, limits);
        verdicts.push(trivial.verdict());
        groups.push(json!({
            "base": g.object_name(block[0]),
            "presentation": p.to_string(),
            "simplified": simplified.to_string(),
            "abelianization": abelianization_invariants(&simplified),
            "trivial": trivial,
        }));
    }
    Ok(Outcome::new(
        "pi1",
        json!({ "components": groups }),
        code_of(&verdicts),
    ))
}

fn thin(doc: &CmpDocument, limits: &Limits) -> Result<Outcome> {
    let groupoidal = groupoidal_of(doc)?;
    let groupoid = is_thin_groupoid(&groupoidal, limits);
    let mut verdicts = vec![groupoid];
    let mut body = json!({ "groupoid": groupoid });
    if let Some(c) = doc.computad() {
        let category = is_thin_category(&c, limits);
        verdicts.push(category);
        body["category"] = json!(category);
    }
    if let Ok(bound) = check_not_thin_bound(&groupoidal) {
        body["bound"] = json!(bound);
    }
    Ok(Outcome::new("thin", body, code_of(&verdicts)))
}

fn cw_command(doc: &CmpDocument, limits: &Limits) -> Result<Outcome> {
    let cw = complex(doc)?;
    let mut body = serde_json::to_value(cw::report(&cw, limits)).expect("report serializes");
    body["chain_law"] = json!(cw.chain_law_holds());
    Ok(Outcome::new("cw", body, 0))
}

fn deficiency(doc: &CmpDocument) -> Result<Outcome> {
    let c = groupoidal_of(doc)?;
    let report = deficiency_of_presentation(&c)?;
    let mut body = serde_json::to_value(&report).expect("report serializes");
    body["bound"] = json!(check_not_thin_bound(&c)?);
    if let Some(cat) = doc.computad() {
        body["category_deficiency"] = json!(deficiency_of_category_presentation(&cat)?);
    }
    Ok(Outcome::new("deficiency", body, 0))
}

fn synth(doc: &CmpDocument, kind: SynthKind, tree: Option<&str>) -> Result<Outcome> {
    let g = graph_of(doc)?;
    let pick_tree = || -> Result<Subgraph> {
        if let Some(spec) = tree {
            return parse_tree(&g, spec);
        }
        Ok(match is_fair(&g, DEFAULT_FAIR_BOUND) {
            Ok(Fairness::Fair(t)) => t,
            _ => g.maximal_tree()?,
        })
    };
    let emit = |construction: &str, text: String, report: Value| {
        Outcome::new(
            "synth",
            json!({ "construction": construction, "document": text, "report": report }),
            0,
        )
    };
    let value = |r| serde_json::to_value(r).expect("report serializes");
    Ok(match kind {
        SynthKind::Efficient => {
            let c = synth_efficient_groupoid(&g)?;
            let mut r = deficiency_of_presentation(&c)?;
            r.construction = Some("efficient".into());
            emit(
                "efficient",
                format::print(&CmpDocument::Groupoidal(c)),
                value(r),
            )
        }
        SynthKind::Category => match lift_to_category_presentation(&g)? {
            CategoryLift::Presentation(c) => {
                let r = category_report(&c, "category")?;
                emit(
                    "category",
                    format::print(&CmpDocument::Computad(c)),
                    value(r),
                )
            }
            CategoryLift::NotFair => Outcome::new(
                "synth",
                json!({ "construction": "category", "fair": false }),
                0,
            ),
        },
        SynthKind::Strict | SynthKind::Monotone => {
            let t = pick_tree()?;
            let (name, c) = if kind == SynthKind::Strict {
                ("strict", synth_strictly_increasing(&g, &t)?)
            } else {
                ("monotone", synth_monotone(&g, &t)?)
            };
            let r = category_report(&c, name)?;
            emit(name, format::print(&CmpDocument::Computad(c)), value(r))
        }
    })
}

fn fcs(doc: &CmpDocument, cells: Option<&str>) -> Result<Outcome> {
    let c = computad_of(doc)?;
    let chosen: Vec<usize> = match cells {
        None => (0..c.cells.len()).collect(),
        Some(spec) => spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|n| {
                c.cell_index(n)
                    .ok_or_else(|| Error::UnknownGenerator(n.to_string()))
            })
            .collect::<Result<_>>()?,
    };
    let verdict = is_fcs(&full_subcomputad(&c, chosen.iter().copied()), &c);
    let mut body = json!({ "cells": chosen.iter().map(|&i| &c.cells[i].name).collect::<Vec<_>>() });
    let mut code = 0;
    match verdict {
        Ok(v) => {
            if v == FcsVerdict::Unknown {
                code = 2;
            }
            body["fcs"] = serde_json::to_value(&v).expect("verdict serializes");
        }
        Err(e) => body["fcs"] = json!({ "verdict": "not_applicable", "reason": e.to_string() }),
    }
    body["triple"] = match find_fcs_triple(&c) {
        Some(t) => {
            let q = &t.collapse.computad;
            json!({
                "tree": names(&c.base, &t.tree),
                "fcs": t.pairing.iter().map(|&(i, _)| &q.cells[i].name).collect::<Vec<_>>(),
                "outside": t.outside_cells().iter().map(|&i| &c.cells[i].name).collect::<Vec<_>>(),
            })
        }
        None => Value::Null,
    };
    Ok(Outcome::new("fcs", body, code))
}

fn thin2(doc: &CmpDocument, synth: bool, limits: &Limits) -> Result<Outcome> {
    let mut c3 = need(doc, "3-computad", doc.computad3())?;
    let mut body = json!({});
    if synth {
        let triple = find_fcs_triple(&c3.base)
            .ok_or_else(|| Error::NotFcsTriple("no tree with a constructive f.c.s.".into()))?;
        let s = synth_320_from_triple(&c3.base, triple)?;
        let mut cells3 = c3.cells3.clone();
        cells3.extend(s.lifted.cells3.iter().cloned());
        c3 = Computad3::new(c3.base.clone(), cells3)?;
        body["unlifted"] = json!(s.unlifted);
        body["document"] = json!(format::print(&CmpDocument::Computad3(c3.clone())));
    }
    let criteria = locally_thin_criteria(&c3, limits);
    let code = if criteria == ThinCriteria::Unknown {
        2
    } else {
        0
    };
    body["cells3"] = json!(c3.cells3.len());
    body["criteria"] = serde_json::to_value(&criteria).expect("criteria serialize");
    Ok(Outcome::new("thin2", body, code))
}

/// Per-fixture checks; independent, so they run on scoped threads.
fn fixture_checks() -> Vec<Value> {
    std::thread::scope(|s| {
        let handles: Vec<_> = fixtures::ALL
            .iter()
            .map(|f| {
                s.spawn(move || {
                    let checked = f.document().and_then(|doc| {
                        let round_trip = format::parse(&format::print(&doc))? == doc;
                        let cw = complex(&doc).ok();
                        Ok(json!({
                            "kind": doc.kind().name(),
                            "round_trip": round_trip,
                            "cells": cw.as_ref().map(|c| c.cell_counts()),
                            "chi": cw.as_ref().map(|c| c.euler_char()),
                            "chain_law": cw.as_ref().map(|c| c.chain_law_holds()),
                        }))
                    });
                    match checked {
                        Ok(mut v) => {
                            let ok =
                                v["round_trip"] == json!(true) && v["chain_law"] != json!(false);
                            v["name"] = json!(f.name);
                            v["ok"] = json!(ok);
                            v
                        }
                        Err(e) => json!({ "name": f.name, "ok": false, "error": e.to_string() }),
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check panicked"))
            .collect()
    })
}

fn fixtures_command(runs: usize, seed: u64) -> Outcome {
    let checks = fixture_checks();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..runs {
        let c = random::computad(&mut rng, 8, 12, 6);
        let cw = f_top2(&c);
        let additive = cw.euler_char() == c.base.euler_char() + c.cells.len() as i64;
        let betti: i64 = cw
            .betti_numbers()
            .to_array()
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        if !additive || !cw.chain_law_holds() || betti != cw.euler_char() {
            failures.push(format::print(&CmpDocument::Computad(c)));
        }
    }
    let ok = failures.is_empty() && checks.iter().all(|c| c["ok"] == json!(true));
    Outcome::new(
        "fixtures",
        json!({
            "fixtures": checks,
            "random": { "seed": seed, "runs": runs, "failures": failures },
            "ok": ok,
        }),
        if ok { 0 } else { 1 },
    )
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let limits: Limits = cli.limits.parse()?;
    let load = |p: &PathBuf| format::parse_file(p);
    match &cli.command {
        Command::AnalyzeGraph { file } => analyze_graph(&load(file)?),
        Command::FreeInfo {
            file,
            from,
            to,
            max_len,
        } => free_info(&load(file)?, from.as_deref(), to.as_deref(), *max_len),
        Command::Present { file } => present(&load(file)?, &limits),
        Command::Pi1 { file } => pi1(&load(file)?, &limits),
        Command::Thin { file } => thin(&load(file)?, &limits),
        Command::Cw { file } => cw_command(&load(file)?, &limits),
        Command::Deficiency { file } => deficiency(&load(file)?),
        Command::Synth { kind, file, tree } => synth(&load(file)?, *kind, tree.as_deref()),
        Command::Fcs { file, cells } => fcs(&load(file)?, cells.as_deref()),
        Command::Thin2 { file, synth } => thin2(&load(file)?, *synth, &limits),
        Command::Fixtures { random } => Ok(fixtures_command(*random, cli.seed)),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    dispatch(cli).unwrap_or_else(|e| Outcome::error(&e))
}

/// Parses `args` (program name first) and runs them. Usage errors exit 1
/// with clap's message in the `error` field.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Outcome {
            report: json!({ "schema": SCHEMA, "error": e.to_string() }),
            code: 1,
        },
    }
}

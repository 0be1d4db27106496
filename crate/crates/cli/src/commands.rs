use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;
use tightcut::decomp::{brick_number, decompose, is_brace, is_brick, DecompositionTree, LeafKind, Strategy};
use tightcut::elp::{all_nontrivial_elp_cuts, enumerate_nontrivial_barriers, two_separations, ElpKind};
use tightcut::graph::to_graph6;
use tightcut::gscut::{classify_unchecked, SearchLimits, TightCutClassification};
use tightcut::matching::{
    enumerate_tight_cuts, has_perfect_matching, is_bicritical, is_matching_covered,
    perfect_matching_on, tight_pairwise, Matching,
};
use tightcut::verify::{sweep, Check, SweepReport};
use tightcut::{Cut, MultiGraph, VertexSet};

use crate::report::*;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn labels(g: &MultiGraph, s: VertexSet) -> Vec<String> {
    g.labels_of(s)
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

fn finish(
    command: &str,
    input: InputInfo,
    findings: impl Serialize,
    started: Instant,
    warnings: Vec<String>,
    exit_code: u8,
    summary: Vec<String>,
) -> Outcome {
    Outcome {
        report: Report {
            version: VERSION.to_string(),
            command: command.to_string(),
            input,
            findings: serde_json::to_value(findings).expect("findings serialize"),
            timing: Timing {
                elapsed_ms: started.elapsed().as_millis(),
            },
            warnings,
            exit_code,
        },
        summary,
    }
}

fn matching_labels(g: &MultiGraph, m: &Matching) -> Vec<[String; 2]> {
    m.edges()
        .iter()
        .map(|&e| {
            let e = g.edge(e);
            [g.label(e.u).to_string(), g.label(e.v).to_string()]
        })
        .collect()
}

pub fn parse_shore(g: &MultiGraph, spec: &str) -> Result<VertexSet, CliError> {
    let mut s = VertexSet::EMPTY;
    for l in spec.split(',').map(str::trim).filter(|l| !l.is_empty()) {
        let v = g
            .position_of_label(l)
            .ok_or_else(|| CliError::new(EXIT_BAD_CUT, format!("no vertex labelled {l:?}")))?;
        s = s.with(v);
    }
    Ok(s)
}

pub fn analyze(g: &MultiGraph, input: InputInfo, mut warnings: Vec<String>) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let n = g.vertex_count();
    let mc = is_matching_covered(g);
    let bicritical = if n >= 4 { Some(is_bicritical(g)?) } else { None };
    let mut summary = vec![
        format!("graph: {n} vertices, {} edges", g.edge_count()),
        format!("perfect matching: {}", has_perfect_matching(g)),
        format!("matching covered: {mc}"),
    ];
    if let Some(b) = bicritical {
        summary.push(format!("bicritical: {b}"));
    }
    let mut findings = json!({
        "matching_covered": mc,
        "has_perfect_matching": has_perfect_matching(g),
        "bicritical": bicritical,
        "bipartite": g.is_bipartite(),
    });
    if !mc {
        warnings.push("graph is not matching covered; structural analysis skipped".into());
        return Ok(finish("analyze", input, findings, started, warnings, EXIT_OK, summary));
    }
    let tight: Vec<Vec<String>> = enumerate_tight_cuts(g, true)?
        .iter()
        .map(|c| labels(g, c.shore()))
        .collect();
    let barriers: Vec<_> = enumerate_nontrivial_barriers(g)?
        .into_iter()
        .map(|b| {
            json!({
                "vertices": labels(g, b.vertices),
                "odd_components": b.odd_components.iter().map(|&c| labels(g, c)).collect::<Vec<_>>(),
                "maximal": b.maximal,
            })
        })
        .collect();
    let seps = two_separations(g);
    let separations: Vec<_> = seps
        .iter()
        .map(|s| {
            json!({
                "pair": labels(g, s.pair),
                "components": s.components.iter().map(|&c| labels(g, c)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let elp: Vec<_> = all_nontrivial_elp_cuts(g)?
        .into_iter()
        .map(|e| {
            let kind = match e.kind {
                ElpKind::BarrierCut => "barrier-cut",
                ElpKind::TwoSeparationCut => "2-separation-cut",
            };
            json!({ "kind": kind, "shore": labels(g, e.cut.canonical_shore()) })
        })
        .collect();
    let brick = is_brick(g);
    let brace = is_brace(g);
    summary.push(format!("non-trivial tight cuts: {}", tight.len()));
    for t in &tight {
        summary.push(format!("  {}", braces(t)));
    }
    summary.push(format!("non-trivial barriers: {}", barriers.len()));
    for b in &barriers {
        summary.push(format!("  {}", b["vertices"]));
    }
    summary.push(format!("2-separations: {}", seps.len()));
    for s in &seps {
        summary.push(format!("  {}", braces(&labels(g, s.pair))));
    }
    summary.push(format!("non-trivial ELP-cuts: {}", elp.len()));
    if brick {
        summary.push("brick: no non-trivial tight cut".into());
    } else if brace {
        summary.push("brace: no non-trivial tight cut".into());
    }
    let obj = findings.as_object_mut().expect("object");
    obj.insert("tight_cuts".into(), json!(tight));
    obj.insert("barriers".into(), json!(barriers));
    obj.insert("two_separations".into(), json!(separations));
    obj.insert("elp_cuts".into(), json!(elp));
    obj.insert("brick".into(), json!(brick));
    obj.insert("brace".into(), json!(brace));
    Ok(finish("analyze", input, findings, started, warnings, EXIT_OK, summary))
}

pub fn classify(
    g: &MultiGraph,
    shore: &str,
    input: InputInfo,
    warnings: Vec<String>,
) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let x = parse_shore(g, shore)?;
    let cut = Cut::new(g, x)?;
    if !is_matching_covered(g) {
        return Err(tightcut::Error::NotMatchingCovered.into());
    }
    let shore_labels = labels(g, x);
    let rejected = |reason: &str, witness: Option<Matching>| {
        let w = witness.as_ref().map(|m| matching_labels(g, m));
        let mut summary = vec![format!("cut {}: {reason}", braces(&shore_labels))];
        if let Some(w) = &w {
            let edges: Vec<String> = w.iter().map(|[a, b]| format!("{a}{b}")).collect();
            summary.push(format!("witness perfect matching: {}", edges.join(" ")));
        }
        let findings = json!({
            "shore": shore_labels,
            "rejected": reason,
            "witness": w,
        });
        finish("classify", input.clone(), findings, started, warnings.clone(), EXIT_BAD_CUT, summary)
    };
    if cut.is_trivial() {
        return Ok(rejected("trivial", None));
    }
    if x.len() % 2 == 0 {
        return Ok(rejected("not tight (even shore)", perfect_matching_on(g, g.vertex_set())));
    }
    let verdict = tight_pairwise(g, x);
    if !verdict.tight {
        return Ok(rejected("not tight", verdict.witness));
    }
    let c = classify_unchecked(g, x, SearchLimits::default())?;
    let mut summary = vec![format!("cut {}", braces(&shore_labels))];
    let mut exit = EXIT_OK;
    let detail = match &c {
        TightCutClassification::BarrierCut(w) => {
            summary.push("verdict: barrier-cut".into());
            summary.push(format!("barrier: {}", braces(&labels(g, w.barrier.vertices))));
            json!({ "barrier": labels(g, w.barrier.vertices), "component": labels(g, w.component) })
        }
        TightCutClassification::EssentialGsCut(e) => {
            let bs: Vec<Vec<String>> = e.barrier_sets().into_iter().map(|b| labels(g, b)).collect();
            let h = &e.contracted_graph;
            let family: Vec<Vec<String>> = e.inner.family.iter().map(|s| labels(h, s.pair)).collect();
            summary.push("verdict: essential-gs-cut".into());
            let rendered: Vec<String> = bs.iter().map(|b| braces(b)).collect();
            summary.push(format!("shrunk barriers: {{{}}}", rendered.join(",")));
            let rendered: Vec<String> = family.iter().map(|f| braces(f)).collect();
            summary.push(format!("associated 2-separations: {}", rendered.join(" ")));
            json!({ "barriers": bs, "family": family })
        }
        TightCutClassification::Unclassified(_) => {
            summary.push("verdict: unclassified (counterexample candidate)".into());
            exit = EXIT_COUNTEREXAMPLE;
            json!({})
        }
    };
    let findings = json!({
        "shore": shore_labels,
        "shore_positions": x,
        "verdict": c.verdict(),
        "summary": detail,
        "classification": c,
    });
    Ok(finish("classify", input, findings, started, warnings, exit, summary))
}

fn leaf_summary(t: &DecompositionTree) -> serde_json::Value {
    let kind = match t.kind {
        Some(LeafKind::Brick) => "brick",
        Some(LeafKind::Brace) => "brace",
        None => "internal",
    };
    json!({
        "kind": kind,
        "vertices": t.graph.vertices().iter().map(|v| v.label.clone()).collect::<Vec<_>>(),
        "edges": t.graph.edge_count(),
    })
}

pub fn decompose_cmd(
    g: &MultiGraph,
    strategy: Strategy,
    seed: u64,
    repeats: usize,
    input: InputInfo,
    warnings: Vec<String>,
) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let repeats = repeats.max(1);
    let mut runs = Vec::new();
    let mut first = None;
    for s in seed..seed + repeats as u64 {
        let t = decompose(g, strategy, s)?;
        runs.push(json!({ "seed": s, "bricks": brick_number(&t), "leaves": t.leaves().len() }));
        first.get_or_insert(t);
    }
    let tree = first.expect("at least one run");
    let bricks = brick_number(&tree);
    let mut counts: Vec<u64> = runs.iter().map(|r| r["bricks"].as_u64().unwrap()).collect();
    counts.sort_unstable();
    counts.dedup();
    let agree = counts.len() == 1;
    let leaves: Vec<_> = tree.leaves().into_iter().map(leaf_summary).collect();
    let braces_n = leaves.iter().filter(|l| l["kind"] == "brace").count();
    let mut summary = vec![
        format!("brick number: {bricks}"),
        format!("braces: {braces_n}"),
        format!("leaves: {}", leaves.len()),
    ];
    for l in &leaves {
        summary.push(format!("  {} on {} vertices", l["kind"].as_str().unwrap(), l["vertices"].as_array().unwrap().len()));
    }
    if repeats > 1 {
        summary.push(if agree {
            format!("all {repeats} runs agree")
        } else {
            format!("brick numbers disagree across runs: {counts:?}")
        });
    }
    let findings = json!({
        "strategy": format!("{strategy:?}"),
        "brick_number": bricks,
        "brace_count": braces_n,
        "leaves": leaves,
        "runs": runs,
        "agree": agree,
        "tree": tree,
    });
    let exit = if agree { EXIT_OK } else { EXIT_INVARIANCE };
    Ok(finish("decompose", input, findings, started, warnings, exit, summary))
}

fn dump_counterexamples(report: &SweepReport, dir: &Path) -> Result<Vec<String>, CliError> {
    let mut written = Vec::new();
    for o in report.outcomes.iter().filter(|o| !o.passed()) {
        if o.counterexamples.is_empty() {
            continue;
        }
        fs::create_dir_all(dir)
            .map_err(|e| CliError::new(EXIT_OTHER, format!("creating {}: {e}", dir.display())))?;
        for (i, c) in o.counterexamples.iter().enumerate() {
            let path = dir.join(format!("{}-{i:04}.json", o.check.name()));
            let body = json!({
                "check": c.check,
                "graph6": to_graph6(&c.graph).ok(),
                "graph": c.graph,
                "shore": c.shore,
                "detail": c.detail,
            });
            let text = serde_json::to_string_pretty(&body).expect("serializable");
            fs::write(&path, text)
                .map_err(|e| CliError::new(EXIT_OTHER, format!("writing {}: {e}", path.display())))?;
            written.push(path.display().to_string());
        }
    }
    Ok(written)
}

pub fn verify(
    graphs: &[MultiGraph],
    checks: &[Check],
    max_counterexamples: usize,
    dump_dir: &Path,
    input: InputInfo,
    mut warnings: Vec<String>,
) -> Result<Outcome, CliError> {
    let started = Instant::now();
    if graphs.is_empty() {
        warnings.push("corpus is empty; every check passes vacuously".into());
    }
    let report = sweep(graphs, checks, max_counterexamples);
    let dumped = dump_counterexamples(&report, dump_dir)?;
    let mut summary = vec![format!("graphs: {}", report.graphs)];
    for (n, k) in &report.orders {
        summary.push(format!("  order {n}: {k}"));
    }
    for o in &report.outcomes {
        summary.push(format!(
            "{}: {} ({} instances, {} failures)",
            o.check.name(),
            if o.passed() { "pass" } else { "FAIL" },
            o.instances,
            o.failures
        ));
    }
    if !dumped.is_empty() {
        summary.push(format!("counterexample candidates written to {}", dump_dir.display()));
    }
    let exit = if report.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE };
    let outcomes: Vec<_> = report
        .outcomes
        .iter()
        .map(|o| {
            json!({
                "check": o.check.name(),
                "graphs": o.graphs,
                "instances": o.instances,
                "failures": o.failures,
                "passed": o.passed(),
                "counterexamples": o.counterexamples.iter().map(|c| json!({
                    "graph6": to_graph6(&c.graph).ok(),
                    "shore": c.shore,
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let findings = json!({
        "graphs": report.graphs,
        "orders": report.orders,
        "passed": report.passed(),
        "outcomes": outcomes,
        "dumped": dumped,
    });
    Ok(finish("verify", input, findings, started, warnings, exit, summary))
}

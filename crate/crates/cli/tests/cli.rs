use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tightcut::corpus::gen_named;
use tightcut::graph::{parse_json, to_json};
use tightcut::gscut::TightCutClassification;
use tightcut::VertexSet;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tightcut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tightcut"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

#[test]
fn analyze_k4_is_a_brick() {
    let out = run(&["--json", "analyze", "--graph", "k4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["command"], "analyze");
    assert_eq!(r["findings"]["matching_covered"], true);
    assert_eq!(r["findings"]["tight_cuts"].as_array().unwrap().len(), 0);
    assert_eq!(r["findings"]["brick"], true);
    assert_eq!(r["input"]["vertices"], 4);
}

#[test]
fn analyze_h2_lists_three_separations() {
    let r = report(&run(&["--json", "analyze", "--graph", "h:2"]));
    let seps = r["findings"]["two_separations"].as_array().unwrap();
    assert_eq!(seps.len(), 3);
    assert_eq!(seps[0]["pair"], serde_json::json!(["v1", "u3"]));
    assert_eq!(r["findings"]["bicritical"], true);
}

#[test]
fn analyze_reads_json_and_graph6_from_stdin() {
    let c6 = to_json(&gen_named("c6").unwrap());
    let out = run_stdin(&["--json", "analyze", "--input", "-", "--format", "json"], &c6);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["findings"]["bipartite"], true);

    let out = run_stdin(&["--json", "analyze", "--input", "-"], "C~\n");
    assert_eq!(report(&out)["input"]["edges"], 6);
}

#[test]
fn analyze_flags_graphs_that_are_not_matching_covered() {
    // a path on four vertices
    let out = run_stdin(
        &["--json", "analyze", "--input", "-", "--format", "json"],
        r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#,
    );
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["findings"]["matching_covered"], false);
    assert!(!r["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_input_exits_2() {
    let out = run_stdin(&["analyze", "--input", "-"], "not graph6 !!\n");
    assert_eq!(out.status.code(), Some(2));
    let out = run_stdin(&["analyze", "--input", "-", "--format", "json"], "{");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["analyze", "--graph", "nonesuch"]).status.code(), Some(2));
}

#[test]
fn classify_essential_gs_cut_of_h_prime() {
    let out = run(&["--json", "classify", "--graph", "hprime:4", "--shore", "v1,v2,v3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["findings"]["verdict"], "essential-gs-cut");
    assert_eq!(r["findings"]["summary"]["barriers"], serde_json::json!([["u1", "u2"]]));
}

#[test]
fn classify_certificate_revalidates() {
    for (graph, shore) in [("hprime:4", "v1,v2,v3"), ("c6", "0,1,2")] {
        let r = report(&run(&["--json", "classify", "--graph", graph, "--shore", shore]));
        let c: TightCutClassification =
            serde_json::from_value(r["findings"]["classification"].clone()).unwrap();
        let x: VertexSet = serde_json::from_value(r["findings"]["shore_positions"].clone()).unwrap();
        let g = tightcut_graph(graph);
        c.validate(&g, x).unwrap();
    }
}

fn tightcut_graph(spec: &str) -> tightcut::MultiGraph {
    match spec.strip_prefix("hprime:") {
        Some(n) => tightcut::corpus::gen_h_n_prime(n.parse().unwrap()).unwrap(),
        None => gen_named(spec).unwrap(),
    }
}

#[test]
fn classify_c6_barrier_cut() {
    let r = report(&run(&["--json", "classify", "--graph", "c6", "--shore", "0,1,2"]));
    assert_eq!(r["findings"]["verdict"], "barrier-cut");
}

#[test]
fn classify_rejects_bad_cuts_with_exit_3() {
    let out = run(&["--json", "classify", "--graph", "c6", "--shore", "0,1,3"]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["findings"]["rejected"], "not tight");
    let witness = r["findings"]["witness"].as_array().unwrap();
    assert_eq!(witness.len(), 3);

    let out = run(&["classify", "--graph", "c6", "--shore", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["classify", "--graph", "c6", "--shore", "0,1,x9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn decompose_examples() {
    let r = report(&run(&["--json", "decompose", "--graph", "c6"]));
    assert_eq!(r["findings"]["brick_number"], 0);

    let r = report(&run(&["--json", "decompose", "--graph", "petersen"]));
    assert_eq!(r["findings"]["brick_number"], 1);
    assert_eq!(r["findings"]["leaves"].as_array().unwrap().len(), 1);

    let out = run(&["--json", "decompose", "--graph", "h:1", "--repeats", "10", "--strategy", "exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["findings"]["brick_number"], 2);
    assert_eq!(r["findings"]["agree"], true);
    assert_eq!(r["findings"]["runs"].as_array().unwrap().len(), 10);
}

#[test]
fn report_round_trips() {
    let out = run(&["--json", "analyze", "--graph", "prism"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_value(serde_json::from_str::<Value>(&v.to_string()).unwrap()).unwrap();
    assert_eq!(v, again);
    for key in ["version", "command", "input", "findings", "timing"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["input"]["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn verify_small_corpus_passes() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("cx");
    let out = run(&[
        "--json", "--jobs", "2", "verify", "--max-n", "6", "--theorems", "1.1,1.2,1.3,props",
        "--dump-dir", dump.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["findings"]["graphs"], 27);
    assert_eq!(r["findings"]["passed"], true);
    assert!(!dump.exists());
}

#[test]
fn verify_empty_corpus_is_vacuous() {
    let out = run(&["--json", "verify", "--max-n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["findings"]["graphs"], 0);
    assert!(r["warnings"][0].as_str().unwrap().contains("vacuous"));
}

#[test]
fn verify_dumps_counterexample_candidates() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("cx");
    let out = run(&[
        "verify", "--max-n", "6", "--theorems", "3.3", "--max-counterexamples", "2",
        "--dump-dir", dump.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(5));
    let files: Vec<_> = std::fs::read_dir(&dump).unwrap().collect();
    assert!(!files.is_empty() && files.len() <= 2);
    let text = std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let g = parse_json(&v["graph"].to_string()).unwrap();
    assert_eq!(g.vertex_count(), 6);
    assert!(v["shore"].is_array());
}

#[test]
fn verify_external_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ten.g6");
    std::fs::write(&path, "IheA@GUAo\n").unwrap();
    let out = run(&[
        "--json", "verify", "--external-only", "--max-n", "10", "--theorems", "1.1,1.2,1.3",
        "--input", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["findings"]["graphs"], 1);
    // larger orders need an external file
    assert_eq!(run(&["verify", "--max-n", "10"]).status.code(), Some(1));
}

use std::fs;
use std::io::{self, BufReader, Read};
use std::path::Path;

use sha2::{Digest, Sha256};
use tightcut::corpus::{corpus_with_external, gen_h_n, gen_h_n_prime, gen_named};
use tightcut::graph::{parse_json, read_graph6, to_json};
use tightcut::MultiGraph;

use crate::report::{CliError, InputInfo, EXIT_OTHER, EXIT_PARSE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Graph6,
    Json,
}

pub fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::new(EXIT_OTHER, format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::new(EXIT_OTHER, format!("reading {path}: {e}")))
    }
}

fn infer_format(path: &str, format: Option<Format>) -> Format {
    format.unwrap_or_else(|| {
        if Path::new(path).extension().is_some_and(|e| e == "json") {
            Format::Json
        } else {
            Format::Graph6
        }
    })
}

/// `k4`, `petersen`, `h:2`, `hprime:4`.
pub fn named_graph(spec: &str) -> Result<MultiGraph, CliError> {
    let param = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| CliError::new(EXIT_PARSE, format!("bad family parameter in {spec:?}")))
    };
    let g = if let Some(n) = spec.strip_prefix("hprime:") {
        gen_h_n_prime(param(n)?)
    } else if let Some(n) = spec.strip_prefix("h:") {
        gen_h_n(param(n)?)
    } else {
        gen_named(spec)
    };
    g.map_err(|e| CliError::new(EXIT_PARSE, e.to_string()))
}

pub fn digest_graphs<'a>(graphs: impl IntoIterator<Item = &'a MultiGraph>) -> String {
    let mut h = Sha256::new();
    for g in graphs {
        h.update(to_json(g).as_bytes());
        h.update(b"\n");
    }
    format!("{:x}", h.finalize())
}

pub fn describe(g: &MultiGraph, source: String) -> InputInfo {
    InputInfo {
        digest: digest_graphs([g]),
        source,
        vertices: Some(g.vertex_count()),
        edges: Some(g.edge_count()),
        labels: g.vertices().iter().map(|v| v.label.clone()).collect(),
        graphs: None,
    }
}

/// One graph from `--graph` or `--input`. Extra graph6 lines are ignored with a warning.
pub fn load_graph(
    name: Option<&str>,
    input: Option<&str>,
    format: Option<Format>,
    warnings: &mut Vec<String>,
) -> Result<(MultiGraph, InputInfo), CliError> {
    match (name, input) {
        (Some(n), None) => {
            let g = named_graph(n)?;
            let info = describe(&g, format!("named:{n}"));
            Ok((g, info))
        }
        (None, Some(path)) => {
            let text = read_source(path)?;
            let g = match infer_format(path, format) {
                Format::Json => parse_json(&text)?,
                Format::Graph6 => {
                    let mut gs = read_graph6(BufReader::new(text.as_bytes()))?;
                    if gs.is_empty() {
                        return Err(CliError::new(EXIT_PARSE, "input holds no graph"));
                    }
                    if gs.len() > 1 {
                        warnings.push(format!("input holds {} graphs; using the first", gs.len()));
                    }
                    gs.swap_remove(0)
                }
            };
            let info = describe(&g, path.to_string());
            Ok((g, info))
        }
        _ => Err(CliError::new(EXIT_OTHER, "give exactly one of --graph or --input")),
    }
}

/// Built-in enumeration up to `min(max_n, 8)` plus larger graphs from an
/// external graph6 file; with `external_only` just the file.
pub fn load_corpus(
    max_n: usize,
    input: Option<&str>,
    external_only: bool,
) -> Result<(Vec<MultiGraph>, InputInfo), CliError> {
    let text = input.map(read_source).transpose()?;
    let graphs = if external_only {
        let Some(text) = &text else {
            return Err(CliError::new(EXIT_OTHER, "--external-only needs --input"));
        };
        read_graph6(BufReader::new(text.as_bytes()))?
            .into_iter()
            .filter(|g| g.vertex_count() <= max_n)
            .collect()
    } else {
        corpus_with_external(max_n, text.as_ref().map(|t| BufReader::new(t.as_bytes())))?
    };
    let source = match (input, external_only) {
        (Some(p), true) => p.to_string(),
        (Some(p), false) => format!("builtin<={}+{p}", max_n.min(8)),
        (None, _) => format!("builtin<={}", max_n.min(8)),
    };
    let info = InputInfo {
        digest: digest_graphs(&graphs),
        source,
        vertices: None,
        edges: None,
        labels: Vec::new(),
        graphs: Some(graphs.len()),
    };
    Ok((graphs, info))
}

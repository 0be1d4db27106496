//! graph6 and JSON edge-list formats.

use std::collections::BTreeMap;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::multigraph::{MultiGraph, VertexInfo};
use super::vertex_set::MAX_VERTICES;
use crate::error::{Error, Result};

/// Parses one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(line: &str) -> Result<MultiGraph> {
    let line = line.trim_end_matches(['\r', '\n']);
    let body = line.strip_prefix(">>graph6<<").unwrap_or(line).as_bytes();
    if body.is_empty() {
        return Err(Error::Parse("empty graph6 line".into()));
    }
    if let Some(&c) = body.iter().find(|&&c| !(63..=126).contains(&c)) {
        return Err(Error::Parse(format!("invalid graph6 byte {c:#x}")));
    }
    let (n, rest) = if body[0] != 126 {
        ((body[0] - 63) as usize, &body[1..])
    } else if body.len() >= 4 && body[1] != 126 {
        let n = body[1..4]
            .iter()
            .fold(0usize, |acc, &c| (acc << 6) | (c - 63) as usize);
        (n, &body[4..])
    } else {
        return Err(Error::Parse("graph6 size field out of range".into()));
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if rest.len() != bytes_needed {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {bytes_needed} for n = {n}",
            rest.len()
        )));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if (bits_needed..bytes_needed * 6).any(bit) {
        return Err(Error::Parse("graph6 padding bits are not zero".into()));
    }
    MultiGraph::new(n, edges)
}

/// Encodes a simple graph as graph6 (no header, no newline).
pub fn to_graph6(g: &MultiGraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::Parse("graph6 cannot encode parallel edges".into()));
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// Reads every non-blank line of a graph6 stream.
pub fn read_graph6<R: BufRead>(reader: R) -> Result<Vec<MultiGraph>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            parse_graph6(line.trim())
                .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?,
        );
    }
    Ok(out)
}

/// JSON edge-list form: `{"n": 4, "edges": [[0,1], ...], "labels": {"0": "v1"}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

impl From<&MultiGraph> for GraphJson {
    fn from(g: &MultiGraph) -> Self {
        let labels = g
            .vertices()
            .iter()
            .enumerate()
            .filter(|(i, v)| v.label != i.to_string())
            .map(|(i, v)| (i.to_string(), v.label.clone()))
            .collect();
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|e| [e.u, e.v]).collect(),
            labels,
        }
    }
}

impl TryFrom<GraphJson> for MultiGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<MultiGraph> {
        let mut vertices: Vec<VertexInfo> = (0..j.n)
            .map(|i| VertexInfo {
                id: i as u32,
                label: i.to_string(),
                replaces: Vec::new(),
            })
            .collect();
        for (k, label) in j.labels {
            let i: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("label key {k:?} is not a vertex index")))?;
            let slot = vertices
                .get_mut(i)
                .ok_or(Error::BadVertex { vertex: i, n: j.n })?;
            slot.label = label;
        }
        MultiGraph::with_vertices(j.n, j.edges.into_iter().map(|[u, v]| (u, v)), vertices)
    }
}

pub fn parse_json(text: &str) -> Result<MultiGraph> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    MultiGraph::try_from(j)
}

pub fn to_json(g: &MultiGraph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph JSON is serializable")
}

impl Serialize for MultiGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        MultiGraph::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn graph6_known_strings() {
        // K4 is "C~", the path P3 (0-1-2) is "Bg"
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
        let p3 = parse_graph6(">>graph6<<Bg").unwrap();
        let pairs: Vec<_> = p3.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2)]);
        assert_eq!(to_graph6(&k4).unwrap(), "C~");
        assert_eq!(to_graph6(&p3).unwrap(), "Bg");
    }

    #[test]
    fn graph6_petersen() {
        let g = parse_graph6("IheA@GUAo").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 15));
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert_eq!(to_graph6(&g).unwrap(), "IheA@GUAo");
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("C\x01").is_err());
        let multi = build_graph(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(to_graph6(&multi).is_err());
    }

    #[test]
    fn json_keeps_multiplicity_and_labels() {
        let g = MultiGraph::with_labels(["a", "b", "c"], [(0, 1), (0, 1), (1, 2)]).unwrap();
        let text = to_json(&g);
        let back = parse_json(&text).unwrap();
        assert_eq!(back.multiplicity(0, 1), 2);
        assert_eq!(back.label(2), "c");
        assert!(parse_json(r#"{"n": 2, "edges": [[0, 0]]}"#).is_err());
        assert!(parse_json(r#"{"n": 2, "edges": [[0, 1]], "labels": {"7": "x"}}"#).is_err());
    }
}

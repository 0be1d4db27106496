//! Example families, named fixtures, edge splicing and small-graph corpora.

use std::collections::{BTreeMap, HashSet};
use std::io::BufRead;

use canonical_form::Canonize;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexInfo, VertexSet};
use crate::matching::is_matching_covered;

/// Largest order produced by the built-in enumeration.
pub const BUILTIN_MAX_VERTICES: usize = 8;

/// `H_n`: paths `v1…v(2n+1)` and `u1…u(2n+1)` plus, for odd `i < 2n+1`, the
/// edges `v_i v_{i+2}`, `v_i u_i`, `v_i u_{i+2}`, `u_i u_{i+2}`; the rungs
/// `v_i u_{i+1}` for `i ≤ 2n`; and `v_{2n+1} u_{2n+1}`.
///
/// Positions: `v1..v(2n+1)` are `0..=2n`, `u1..u(2n+1)` follow.
pub fn gen_h_n(n: usize) -> Result<MultiGraph> {
    if n < 1 {
        return Err(Error::BadParameter("H_n needs n >= 1".into()));
    }
    let m = 2 * n + 1;
    let v = |i: usize| i - 1;
    let u = |i: usize| m + i - 1;
    let mut edges = Vec::new();
    for i in 1..m {
        edges.push((v(i), v(i + 1)));
        edges.push((u(i), u(i + 1)));
    }
    for i in (1..m).step_by(2) {
        edges.extend([
            (v(i), v(i + 2)),
            (v(i), u(i)),
            (v(i), u(i + 2)),
            (u(i), u(i + 2)),
        ]);
    }
    for i in 1..m {
        edges.push((v(i), u(i + 1)));
    }
    edges.push((v(m), u(m)));
    let labels = (1..=m)
        .map(|i| format!("v{i}"))
        .chain((1..=m).map(|i| format!("u{i}")));
    MultiGraph::with_labels(labels, edges)
}

/// `H'_n` for even `n ≥ 4`: path `v1…v(2n+1)`, path `u1 u0 u2`, edges
/// `v_i v_{i+2}` (odd `i`), `u1 v_{2i}` (`i = 2, 4, …, n`), `u2 v_{2i}`
/// (`i = 1, 3, …, n-1`), `u1 v1` and `u2 v(2n+1)`.
///
/// Positions: `v1..v(2n+1)` are `0..=2n`, then `u0`, `u1`, `u2`.
pub fn gen_h_n_prime(n: usize) -> Result<MultiGraph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::BadParameter("H'_n needs an even n >= 4".into()));
    }
    let m = 2 * n + 1;
    let v = |i: usize| i - 1;
    let (u0, u1, u2) = (m, m + 1, m + 2);
    let mut edges = Vec::new();
    for i in 1..m {
        edges.push((v(i), v(i + 1)));
    }
    edges.extend([(u1, u0), (u0, u2)]);
    for i in (1..m).step_by(2) {
        edges.push((v(i), v(i + 2)));
    }
    for i in (2..=n).step_by(2) {
        edges.push((u1, v(2 * i)));
    }
    for i in (1..n).step_by(2) {
        edges.push((u2, v(2 * i)));
    }
    edges.extend([(u1, v(1)), (u2, v(m))]);
    let labels = (1..=m)
        .map(|i| format!("v{i}"))
        .chain(["u0".to_string(), "u1".to_string(), "u2".to_string()]);
    MultiGraph::with_labels(labels, edges)
}

/// Named fixtures: `k2`, `k4`, `c4`, `c6`, `k33`, `prism`, `petersen`, `cube`.
pub fn gen_named(name: &str) -> Result<MultiGraph> {
    let cycle = |n: usize| (0..n).map(move |i| (i, (i + 1) % n)).collect::<Vec<_>>();
    let edges: Vec<(usize, usize)> = match name.to_ascii_lowercase().as_str() {
        "k2" => vec![(0, 1)],
        "k4" => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        "c4" => cycle(4),
        "c6" => cycle(6),
        "k33" | "k3,3" => (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect(),
        "prism" => vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        "petersen" => {
            let mut e: Vec<_> = cycle(5);
            e.extend((0..5).map(|i| (i, i + 5)));
            e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
            e
        }
        "cube" => (0..8usize)
            .flat_map(|a| [1usize, 2, 4].into_iter().map(move |bit| (a, a ^ bit)))
            .filter(|&(a, b)| a < b)
            .collect(),
        _ => return Err(Error::UnknownGraph(name.to_string())),
    };
    let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    MultiGraph::new(n, edges)
}

pub const NAMED_GRAPHS: [&str; 8] = ["k2", "k4", "c4", "c6", "k33", "prism", "petersen", "cube"];

/// An edge splice with the position maps of both sides.
#[derive(Clone, Debug)]
pub struct Splice {
    pub graph: MultiGraph,
    /// Position in `graph` of each vertex of the first input.
    pub left: Vec<usize>,
    /// Position in `graph` of each vertex of the second input.
    pub right: Vec<usize>,
}

impl Splice {
    pub fn left_image(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.left[v]).collect()
    }

    pub fn right_image(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.right[v]).collect()
    }
}

/// Glues `g1` and `g2` along their edges `x1y1` and `x2y2`, identifying
/// `x1 = x2` and `y1 = y2`. The `xy` edges of `g1` are kept, those of `g2`
/// dropped. The first input keeps its positions.
pub fn edge_splice(
    g1: &MultiGraph,
    (x1, y1): (usize, usize),
    g2: &MultiGraph,
    (x2, y2): (usize, usize),
) -> Result<Splice> {
    for (g, a, b) in [(g1, x1, y1), (g2, x2, y2)] {
        if a >= g.vertex_count() || b >= g.vertex_count() || a == b || !g.adjacent(a, b) {
            return Err(Error::BadSplice(format!("{a}{b} is not an edge")));
        }
    }
    let n1 = g1.vertex_count();
    let mut right = vec![0; g2.vertex_count()];
    let mut vertices: Vec<VertexInfo> = g1.vertices().to_vec();
    let offset = g1.next_id();
    for v in 0..g2.vertex_count() {
        right[v] = if v == x2 {
            x1
        } else if v == y2 {
            y1
        } else {
            let mut info = g2.vertex(v).clone();
            info.id += offset;
            info.replaces.iter_mut().for_each(|r| *r += offset);
            if g1.position_of_label(&info.label).is_some() {
                info.label = format!("{}'", info.label);
            }
            vertices.push(info);
            vertices.len() - 1
        };
    }
    let shared = VertexSet::from([x2, y2]);
    let edges = g1
        .edges()
        .iter()
        .map(|e| (e.u, e.v))
        .chain(
            g2.edges()
                .iter()
                .filter(|e| e.ends() != shared)
                .map(|e| (right[e.u], right[e.v])),
        );
    let graph = MultiGraph::with_vertices(vertices.len(), edges, vertices)?;
    Ok(Splice {
        graph,
        left: (0..n1).collect(),
        right,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusSource {
    BuiltinEnumeration,
    Graph6File,
}

/// A deterministic sequence of graphs with its filter settings and statistics.
#[derive(Clone, Debug)]
pub struct CorpusStream {
    pub source: CorpusSource,
    pub matching_covered_only: bool,
    pub max_vertices: usize,
    graphs: Vec<MultiGraph>,
    manifest: CorpusManifest,
}

/// Counts per vertex class before and after filtering.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub source: Option<CorpusSource>,
    pub max_vertices: usize,
    /// Vertex count -> graphs seen.
    pub seen: BTreeMap<usize, usize>,
    /// Vertex count -> graphs emitted.
    pub emitted: BTreeMap<usize, usize>,
    pub rejected_by_filter: usize,
}

impl CorpusStream {
    pub fn graphs(&self) -> &[MultiGraph] {
        &self.graphs
    }

    pub fn into_graphs(self) -> Vec<MultiGraph> {
        self.graphs
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn manifest(&self) -> &CorpusManifest {
        &self.manifest
    }

    fn build(
        source: CorpusSource,
        max_vertices: usize,
        filter: bool,
        candidates: impl IntoIterator<Item = MultiGraph>,
    ) -> CorpusStream {
        let mut manifest = CorpusManifest {
            source: Some(source),
            max_vertices,
            ..CorpusManifest::default()
        };
        let mut graphs = Vec::new();
        for g in candidates {
            let n = g.vertex_count();
            if n > max_vertices {
                continue;
            }
            *manifest.seen.entry(n).or_default() += 1;
            if filter && !is_matching_covered(&g) {
                manifest.rejected_by_filter += 1;
                continue;
            }
            *manifest.emitted.entry(n).or_default() += 1;
            graphs.push(g);
        }
        CorpusStream {
            source,
            matching_covered_only: filter,
            max_vertices,
            graphs,
            manifest,
        }
    }

    /// Reads graphs from a graph6 stream, keeping those within `max_vertices`.
    pub fn from_graph6<R: BufRead>(
        reader: R,
        max_vertices: usize,
        matching_covered_only: bool,
    ) -> Result<CorpusStream> {
        let graphs = crate::graph::read_graph6(reader)?;
        Ok(Self::build(
            CorpusSource::Graph6File,
            max_vertices,
            matching_covered_only,
            graphs,
        ))
    }
}

impl IntoIterator for CorpusStream {
    type Item = MultiGraph;
    type IntoIter = std::vec::IntoIter<MultiGraph>;

    fn into_iter(self) -> Self::IntoIter {
        self.graphs.into_iter()
    }
}

/// Canonical-labelling wrapper around sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Adjacency(Vec<Vec<usize>>);

impl Canonize for Adjacency {
    fn size(&self) -> usize {
        self.0.len()
    }

    fn apply_morphism(&self, p: &[usize]) -> Self {
        let mut adj = vec![Vec::new(); self.0.len()];
        for (i, nbrs) in self.0.iter().enumerate() {
            adj[p[i]] = nbrs.iter().map(|&u| p[u]).collect();
            adj[p[i]].sort_unstable();
        }
        Adjacency(adj)
    }

    fn invariant_neighborhood(&self, u: usize) -> impl Iterator<Item = (usize, u64)> {
        self.0[u].iter().map(|&v| (v, 0))
    }
}

fn adjacency(g: &MultiGraph) -> Adjacency {
    let adj = (0..g.vertex_count())
        .map(|v| g.neighbors(v).to_vec())
        .collect();
    Adjacency(adj)
}

/// Canonical form of the underlying simple graph, as sorted adjacency lists.
pub fn canonical_form(g: &MultiGraph) -> Vec<Vec<usize>> {
    adjacency(g).canonical().0
}

/// Isomorphism of the underlying simple graphs (multiplicities ignored).
pub fn isomorphic_simple(a: &MultiGraph, b: &MultiGraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

/// All simple graphs on exactly `n` vertices up to isomorphism, for every
/// `n ≤ max`, built by vertex addition with canonical-form rejection.
/// Each level is sorted by canonical adjacency.
pub fn all_graphs_by_order(max: usize) -> Vec<Vec<MultiGraph>> {
    let mut levels: Vec<Vec<Adjacency>> = vec![vec![Adjacency(Vec::new())]];
    for n in 1..=max {
        let mut next: HashSet<Adjacency> = HashSet::new();
        for g in &levels[n - 1] {
            for mask in 0u64..(1u64 << (n - 1)) {
                let mut adj = g.0.clone();
                adj.push(Vec::new());
                for v in 0..n - 1 {
                    if mask >> v & 1 == 1 {
                        adj[v].push(n - 1);
                        adj[n - 1].push(v);
                    }
                }
                next.insert(Adjacency(adj).canonical());
            }
        }
        let mut level: Vec<Adjacency> = next.into_iter().collect();
        level.sort();
        levels.push(level);
    }
    levels
        .into_iter()
        .map(|level| {
            level
                .into_iter()
                .map(|a| {
                    let edges = a
                        .0
                        .iter()
                        .enumerate()
                        .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
                        .collect::<Vec<_>>();
                    MultiGraph::new(a.0.len(), edges).expect("valid simple graph")
                })
                .collect()
        })
        .collect()
}

/// Every matching covered simple graph on at most `max_vertices` vertices,
/// one per isomorphism class, in increasing order.
pub fn enumerate_matching_covered(max_vertices: usize) -> Result<CorpusStream> {
    if max_vertices < 4 || max_vertices % 2 == 1 {
        return Err(Error::BadParameter(
            "max_vertices must be even and at least 4".into(),
        ));
    }
    if max_vertices > BUILTIN_MAX_VERTICES {
        return Err(Error::NeedExternalCorpus {
            requested: max_vertices,
            max: BUILTIN_MAX_VERTICES,
        });
    }
    let candidates = all_graphs_by_order(max_vertices)
        .into_iter()
        .flatten()
        .filter(|g| g.vertex_count() >= 2 && g.is_connected());
    Ok(CorpusStream::build(
        CorpusSource::BuiltinEnumeration,
        max_vertices,
        true,
        candidates,
    ))
}

/// Built-in graphs up to `BUILTIN_MAX_VERTICES` plus any graph6 lines from
/// `external` (for larger orders).
pub fn corpus_with_external<R: BufRead>(
    max_vertices: usize,
    external: Option<R>,
) -> Result<Vec<MultiGraph>> {
    let builtin_max = max_vertices.min(BUILTIN_MAX_VERTICES) & !1;
    let mut out = if builtin_max >= 4 {
        enumerate_matching_covered(builtin_max)?.into_graphs()
    } else {
        Vec::new()
    };
    match external {
        Some(r) => {
            let ext = CorpusStream::from_graph6(r, max_vertices, true)?;
            out.extend(
                ext.into_graphs()
                    .into_iter()
                    .filter(|g| g.vertex_count() > BUILTIN_MAX_VERTICES),
            );
        }
        None if max_vertices > BUILTIN_MAX_VERTICES => {
            return Err(Error::NeedExternalCorpus {
                requested: max_vertices,
                max: BUILTIN_MAX_VERTICES,
            })
        }
        None => {}
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::is_bicritical;

    #[test]
    fn h_n_counts() {
        for (n, vs, es) in [(1, 6, 11), (2, 10, 21), (3, 14, 31), (4, 18, 41)] {
            let g = gen_h_n(n).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (vs, es), "n = {n}");
            assert!(g.is_simple());
            assert_eq!(g.edge_count(), 10 * n + 1);
        }
        assert!(gen_h_n(0).is_err());
    }

    #[test]
    fn h_n_is_bicritical() {
        for n in 1..=3 {
            assert!(is_bicritical(&gen_h_n(n).unwrap()).unwrap());
        }
    }

    #[test]
    fn h_n_prime_counts() {
        for (n, vs, es) in [(4, 12, 20), (6, 16, 28)] {
            let g = gen_h_n_prime(n).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (vs, es));
            assert_eq!(g.edge_count(), 4 * n + 4);
        }
        assert!(gen_h_n_prime(5).is_err());
        assert!(gen_h_n_prime(2).is_err());
        assert!(is_matching_covered(&gen_h_n_prime(6).unwrap()));
    }

    #[test]
    fn named_fixtures() {
        let k4 = gen_named("k4").unwrap();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
        let p = gen_named("petersen").unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        let c6 = gen_named("c6").unwrap();
        assert!((0..6).all(|v| c6.degree(v) == 2) && c6.is_connected());
        assert_eq!(gen_named("dodecahedron"), Err(Error::UnknownGraph("dodecahedron".into())));
        assert_eq!(gen_named("cube").unwrap().edge_count(), 12);
    }

    #[test]
    fn splice_two_k4() {
        let k4 = gen_named("k4").unwrap();
        let s = edge_splice(&k4, (0, 1), &k4, (0, 1)).unwrap();
        assert_eq!((s.graph.vertex_count(), s.graph.edge_count()), (6, 11));
        assert!(is_bicritical(&s.graph).unwrap());
        assert!(isomorphic_simple(&s.graph, &gen_h_n(1).unwrap()));
        let c4 = gen_named("c4").unwrap();
        assert!(matches!(
            edge_splice(&c4, (0, 2), &k4, (0, 1)),
            Err(Error::BadSplice(_))
        ));
    }

    #[test]
    fn graph_counts_match_known_sequence() {
        // simple graphs on n vertices: 1, 1, 2, 4, 11, 34, 156, 1044
        let levels = all_graphs_by_order(7);
        let counts: Vec<_> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn matching_covered_corpus_small() {
        let c = enumerate_matching_covered(4).unwrap();
        // K2, C4 and K4
        assert_eq!(c.len(), 3);
        assert!(c.graphs().iter().all(is_matching_covered));
        let c6 = enumerate_matching_covered(6).unwrap();
        for name in ["c6", "k33", "prism"] {
            let g = gen_named(name).unwrap();
            assert!(c6.graphs().iter().any(|h| isomorphic_simple(h, &g)), "{name}");
        }
        assert!(matches!(
            enumerate_matching_covered(10),
            Err(Error::NeedExternalCorpus { .. })
        ));
        assert!(enumerate_matching_covered(5).is_err());
    }
}

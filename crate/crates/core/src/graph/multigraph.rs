use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::vertex_set::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Session-unique vertex identity. Positions inside a graph are dense
/// `0..n`; identities survive contraction.
pub type VertexId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn other(self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn ends(self) -> VertexSet {
        VertexSet::singleton(self.u).with(self.v)
    }
}

/// Provenance of a vertex: its identity, display label, and for contracted
/// vertices the identities of the vertices it replaced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexInfo {
    pub id: VertexId,
    pub label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub replaces: Vec<VertexId>,
}

/// Loopless multigraph on at most 64 vertices.
///
/// Edges are kept sorted by `(min end, max end)`; parallel edges keep their
/// insertion order, so an edge index is a stable name for a parallel copy.
#[derive(Clone, Debug)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<VertexSet>,
    vertices: Vec<VertexInfo>,
    next_id: VertexId,
    key: u64,
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.vertices == other.vertices
    }
}

impl Eq for MultiGraph {}

/// Builds a multigraph on `0..vertex_count` from an edge list.
pub fn build_graph(vertex_count: usize, edge_list: &[(usize, usize)]) -> Result<MultiGraph> {
    MultiGraph::new(vertex_count, edge_list.iter().copied())
}

impl MultiGraph {
    pub fn new(n: usize, edge_list: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let vertices = (0..n)
            .map(|i| VertexInfo {
                id: i as VertexId,
                label: i.to_string(),
                replaces: Vec::new(),
            })
            .collect();
        Self::with_vertices(n, edge_list, vertices)
    }

    /// Like [`MultiGraph::new`] but with display labels.
    pub fn with_labels<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        edge_list: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let vertices: Vec<VertexInfo> = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| VertexInfo {
                id: i as VertexId,
                label: l.into(),
                replaces: Vec::new(),
            })
            .collect();
        Self::with_vertices(vertices.len(), edge_list, vertices)
    }

    pub(crate) fn with_vertices(
        n: usize,
        edge_list: impl IntoIterator<Item = (usize, usize)>,
        vertices: Vec<VertexInfo>,
    ) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        debug_assert_eq!(vertices.len(), n);
        let mut edges = Vec::new();
        for (a, b) in edge_list {
            if a == b {
                return Err(Error::LoopRejected(a));
            }
            for x in [a, b] {
                if x >= n {
                    return Err(Error::BadVertex { vertex: x, n });
                }
            }
            edges.push(Edge {
                u: a.min(b),
                v: a.max(b),
            });
        }
        // stable: parallel copies keep their relative order
        edges.sort_by_key(|e| (e.u, e.v));
        let mut adj = vec![VertexSet::EMPTY; n];
        for e in &edges {
            adj[e.u].insert(e.v);
            adj[e.v].insert(e.u);
        }
        let next_id = vertices.iter().map(|v| v.id + 1).max().unwrap_or(0);
        let mut h = DefaultHasher::new();
        n.hash(&mut h);
        edges.hash(&mut h);
        for v in &vertices {
            v.id.hash(&mut h);
        }
        Ok(MultiGraph {
            n,
            edges,
            adj,
            vertices,
            next_id,
            key: h.finish(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let (a, b) = (u.min(v), u.max(v));
        self.edge_range(a, b).len()
    }

    /// Indices of the parallel copies joining `u` and `v`.
    pub fn edge_range(&self, u: usize, v: usize) -> std::ops::Range<usize> {
        let key = (u.min(v), u.max(v));
        let lo = self.edges.partition_point(|e| (e.u, e.v) < key);
        let hi = self.edges.partition_point(|e| (e.u, e.v) <= key);
        lo..hi
    }

    pub fn vertex(&self, v: usize) -> &VertexInfo {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[VertexInfo] {
        &self.vertices
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v].label
    }

    /// Position of the vertex with the given display label.
    pub fn position_of_label(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    pub fn position_of_id(&self, id: VertexId) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Vertex set from display labels; panics on unknown labels.
    pub fn set_of(&self, labels: &[&str]) -> VertexSet {
        labels
            .iter()
            .map(|l| {
                self.position_of_label(l)
                    .unwrap_or_else(|| panic!("no vertex labelled {l}"))
            })
            .collect()
    }

    pub fn labels_of(&self, s: VertexSet) -> Vec<String> {
        s.iter().map(|v| self.vertices[v].label.clone()).collect()
    }

    /// Identity of the host graph, used to reject mixing cuts of different graphs.
    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn next_id(&self) -> VertexId {
        self.next_id
    }

    /// Vertices outside `s` adjacent to some vertex of `s`.
    pub fn neighborhood(&self, s: VertexSet) -> VertexSet {
        s.iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(self.adj[v]))
            .difference(s)
    }

    /// Vertex set of the component of `G[mask]` containing `start`.
    pub fn component_of(&self, mask: VertexSet, start: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.intersection(mask).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Components of `G[mask]`, ordered by smallest vertex.
    pub fn components_within(&self, mask: VertexSet) -> Vec<VertexSet> {
        let mut rest = mask;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.component_of(mask, v);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    pub fn is_connected_within(&self, mask: VertexSet) -> bool {
        match mask.first() {
            None => true,
            Some(v) => self.component_of(mask, v) == mask,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertex_set())
    }

    /// True when `s` spans no edge.
    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    /// Two-colouring of the graph if it is bipartite.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let mut side = VertexSet::EMPTY;
        let mut seen = VertexSet::EMPTY;
        for root in 0..self.n {
            if seen.contains(root) {
                continue;
            }
            seen.insert(root);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for w in self.adj[v] {
                    if !seen.contains(w) {
                        seen.insert(w);
                        if !side.contains(v) {
                            side.insert(w);
                        }
                        stack.push(w);
                    } else if side.contains(w) == side.contains(v) {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Indices of edges with one end in `a` and the other in `b` (`a`, `b` disjoint).
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                (a.contains(e.u) && b.contains(e.v)) || (a.contains(e.v) && b.contains(e.u))
            })
            .map(|(i, _)| i)
            .collect()
    }

    fn check_shore(&self, x: VertexSet) -> Result<()> {
        if x.is_empty() || !x.is_subset(self.vertex_set()) || x == self.vertex_set() {
            return Err(Error::BadShore(x));
        }
        Ok(())
    }

    /// Indices of the edges of `∂(X)`.
    pub fn cut_edges(&self, x: VertexSet) -> Result<Vec<usize>> {
        self.check_shore(x)?;
        Ok(self.edges_between(x, x.complement(self.n)))
    }

    /// The components of `G - S` with parity counts.
    pub fn removed_components(&self, s: VertexSet) -> ComponentReport {
        let components = self.components_within(self.vertex_set().difference(s));
        let odd_count = components.iter().filter(|c| c.len() % 2 == 1).count();
        ComponentReport {
            even_count: components.len() - odd_count,
            odd_count,
            components,
        }
    }

    /// Number of odd components of `G - S`.
    pub fn odd_components(&self, s: VertexSet) -> usize {
        let mut rest = self.vertex_set().difference(s);
        let mask = rest;
        let mut odd = 0;
        while let Some(v) = rest.first() {
            let c = self.component_of(mask, v);
            rest = rest.difference(c);
            odd += c.len() % 2;
        }
        odd
    }

    /// Contracts `X` to a fresh vertex appended at the end.
    pub fn contract(&self, x: VertexSet, tag: Option<&str>) -> Result<MultiGraph> {
        Ok(self.contract_with_map(x, tag)?.graph)
    }

    pub fn contract_with_map(&self, x: VertexSet, tag: Option<&str>) -> Result<Contraction> {
        self.contract_with_id(x, tag, self.next_id)
    }

    pub(crate) fn contract_with_id(
        &self,
        x: VertexSet,
        tag: Option<&str>,
        fresh: VertexId,
    ) -> Result<Contraction> {
        if x.is_empty() || !x.is_subset(self.vertex_set()) {
            return Err(Error::BadShore(x));
        }
        let mut map = vec![0usize; self.n];
        let mut vertices = Vec::with_capacity(self.n - x.len() + 1);
        for v in 0..self.n {
            if !x.contains(v) {
                map[v] = vertices.len();
                vertices.push(self.vertices[v].clone());
            }
        }
        let new_vertex = vertices.len();
        for v in x {
            map[v] = new_vertex;
        }
        let label = match tag {
            Some(t) => t.to_string(),
            None => format!("{{{}}}", self.labels_of(x).join(",")),
        };
        vertices.push(VertexInfo {
            id: fresh,
            label,
            replaces: x.iter().map(|v| self.vertices[v].id).collect(),
        });
        let edges = self
            .edges
            .iter()
            .filter(|e| !(x.contains(e.u) && x.contains(e.v)))
            .map(|e| (map[e.u], map[e.v]));
        let mut graph = MultiGraph::with_vertices(vertices.len(), edges, vertices)?;
        graph.next_id = graph.next_id.max(self.next_id).max(fresh + 1);
        Ok(Contraction {
            graph,
            map,
            vertex: new_vertex,
        })
    }

    /// Both `∂(X)`-contractions, `G/(X→x)` and `G/(X̄→x̄)`, with distinct fresh ids.
    pub fn cut_contractions(&self, x: VertexSet) -> Result<(Contraction, Contraction)> {
        self.check_shore(x)?;
        let id = self.next_id;
        let mut a = self.contract_with_id(x, None, id)?;
        let mut b = self.contract_with_id(x.complement(self.n), None, id + 1)?;
        a.graph.next_id = id + 2;
        b.graph.next_id = id + 2;
        Ok((a, b))
    }

    /// Graph on the positions of `keep`, renumbered in increasing order.
    pub fn induced(&self, keep: VertexSet) -> MultiGraph {
        let mut map = vec![usize::MAX; self.n];
        let mut vertices = Vec::new();
        for v in keep {
            map[v] = vertices.len();
            vertices.push(self.vertices[v].clone());
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|e| keep.contains(e.u) && keep.contains(e.v))
            .map(|e| (map[e.u], map[e.v]))
            .collect();
        let mut g = MultiGraph::with_vertices(vertices.len(), edges, vertices)
            .expect("induced subgraph of a valid graph");
        g.next_id = g.next_id.max(self.next_id);
        g
    }

    pub fn cut(&self, shore: VertexSet) -> Result<Cut> {
        Cut::new(self, shore)
    }

    /// True when every pair of vertices is joined by at most one edge.
    pub fn is_simple(&self) -> bool {
        self.edges.windows(2).all(|w| (w[0].u, w[0].v) != (w[1].u, w[1].v))
    }
}

/// Result of contracting a vertex set.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: MultiGraph,
    /// Old position to new position; contracted vertices map to `vertex`.
    pub map: Vec<usize>,
    pub vertex: usize,
}

impl Contraction {
    pub fn image(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.map[v]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub components: Vec<VertexSet>,
    pub odd_count: usize,
    pub even_count: usize,
}

/// An edge cut `∂(X)`, identified by the unordered pair `{X, X̄}`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Cut {
    shore: VertexSet,
    n: usize,
    #[serde(skip)]
    graph: u64,
}

impl Cut {
    pub fn new(g: &MultiGraph, shore: VertexSet) -> Result<Cut> {
        g.check_shore(shore)?;
        Ok(Cut {
            shore,
            n: g.vertex_count(),
            graph: g.key(),
        })
    }

    pub fn shore(&self) -> VertexSet {
        self.shore
    }

    pub fn other_shore(&self) -> VertexSet {
        self.shore.complement(self.n)
    }

    /// The shore not containing vertex 0.
    pub fn canonical_shore(&self) -> VertexSet {
        if self.shore.contains(0) {
            self.other_shore()
        } else {
            self.shore
        }
    }

    /// The smaller shore, ties broken by the shore not containing vertex 0.
    pub fn small_shore(&self) -> VertexSet {
        let (a, b) = (self.shore, self.other_shore());
        match a.len().cmp(&b.len()) {
            std::cmp::Ordering::Less => a,
            std::cmp::Ordering::Greater => b,
            std::cmp::Ordering::Equal => self.canonical_shore(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.shore.len() == 1 || self.shore.len() + 1 == self.n
    }

    pub fn edges(&self, g: &MultiGraph) -> Result<Vec<usize>> {
        if g.key() != self.graph {
            return Err(Error::GraphMismatch);
        }
        g.cut_edges(self.shore)
    }

    /// True when all four corners of the two shore partitions are nonempty.
    pub fn crosses(&self, other: &Cut) -> Result<bool> {
        if self.graph != other.graph || self.n != other.n {
            return Err(Error::GraphMismatch);
        }
        Ok(shores_cross(self.shore, other.shore, self.n))
    }

    pub fn is_laminar_with(&self, other: &Cut) -> Result<bool> {
        self.crosses(other).map(|c| !c)
    }

    /// The same cut re-bound to `g` (used after deserialization).
    pub fn rebind(&self, g: &MultiGraph) -> Result<Cut> {
        Cut::new(g, self.shore)
    }

    /// Whether this cut was built on `g`.
    pub fn belongs_to(&self, g: &MultiGraph) -> bool {
        self.graph == g.key() && self.n == g.vertex_count()
    }
}

impl PartialEq for Cut {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.n == other.n
            && self.canonical_shore() == other.canonical_shore()
    }
}

impl Eq for Cut {}

impl Hash for Cut {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.graph.hash(h);
        self.canonical_shore().hash(h);
    }
}

/// Crossing test on raw shores of a graph with `n` vertices.
pub fn shores_cross(x: VertexSet, y: VertexSet, n: usize) -> bool {
    let (xc, yc) = (x.complement(n), y.complement(n));
    !x.intersection(y).is_empty()
        && !x.intersection(yc).is_empty()
        && !xc.intersection(y).is_empty()
        && !xc.intersection(yc).is_empty()
}

/// `cuts_cross` with the host-graph check.
pub fn cuts_cross(a: &Cut, b: &Cut) -> Result<bool> {
    a.crosses(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> MultiGraph {
        build_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn c6() -> MultiGraph {
        build_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap()
    }

    #[test]
    fn build_rejects_loops_and_bad_ids() {
        assert_eq!(k4().edge_count(), 6);
        let g = build_graph(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.multiplicity(0, 1), 2);
        assert_eq!(build_graph(3, &[(0, 0)]), Err(Error::LoopRejected(0)));
        assert!(matches!(
            build_graph(3, &[(0, 3)]),
            Err(Error::BadVertex { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn contract_k4_pair() {
        let g = k4().contract(VertexSet::from([0, 1]), None).unwrap();
        assert_eq!(g.vertex_count(), 3);
        let x = 2;
        assert_eq!(g.multiplicity(x, 0), 2);
        assert_eq!(g.multiplicity(x, 1), 2);
        assert_eq!(g.multiplicity(0, 1), 1);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.vertex(x).replaces, vec![0, 1]);
        assert_eq!(g.vertex(x).id, 4);
    }

    #[test]
    fn contract_c6_half() {
        let g = c6().contract(VertexSet::from([0, 1, 2]), Some("x")).unwrap();
        // remaining v4, v5, v6 -> 0, 1, 2; x -> 3
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(g.label(3), "x");
    }

    #[test]
    fn contract_singleton_relabels_only() {
        let g = k4();
        let h = g.contract(VertexSet::singleton(2), None).unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 6);
        assert!(h.contract(VertexSet::EMPTY, None).is_err());
    }

    #[test]
    fn cut_edges_examples() {
        let g = c6();
        let x = VertexSet::from([0, 1, 2]);
        let cut: Vec<_> = g.cut_edges(x).unwrap().into_iter().map(|i| g.edge(i)).collect();
        assert_eq!(cut, vec![Edge { u: 0, v: 5 }, Edge { u: 2, v: 3 }]);
        assert_eq!(k4().cut_edges(VertexSet::from([0])).unwrap().len(), 3);
        assert_eq!(k4().cut_edges(VertexSet::from([0, 1])).unwrap().len(), 4);
        assert!(k4().cut_edges(VertexSet::full(4)).is_err());
        assert!(k4().cut_edges(VertexSet::EMPTY).is_err());
    }

    #[test]
    fn removed_components_examples() {
        let k33 = build_graph(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        let r = k33.removed_components(VertexSet::from([0, 1, 2]));
        assert_eq!((r.components.len(), r.odd_count), (3, 3));
        let r = k4().removed_components(VertexSet::EMPTY);
        assert_eq!((r.components.len(), r.odd_count, r.even_count), (1, 0, 1));
        let r = k4().removed_components(VertexSet::full(4));
        assert!(r.components.is_empty());
    }

    #[test]
    fn crossing_examples() {
        let g = c6();
        let a = g.cut(VertexSet::from([0, 1, 2])).unwrap();
        let b = g.cut(VertexSet::from([1, 2, 3])).unwrap();
        let nested = g.cut(VertexSet::from([1])).unwrap();
        assert!(cuts_cross(&a, &b).unwrap());
        assert!(!cuts_cross(&a, &nested).unwrap());
        assert!(!cuts_cross(&a, &a).unwrap());
        let other = k4().cut(VertexSet::from([0])).unwrap();
        assert_eq!(cuts_cross(&a, &other), Err(Error::GraphMismatch));
        assert_eq!(a, g.cut(VertexSet::from([3, 4, 5])).unwrap());
    }

    #[test]
    fn bipartition_detects_odd_cycles() {
        assert!(c6().is_bipartite());
        assert!(!k4().is_bipartite());
    }

    #[test]
    fn cut_contractions_mint_distinct_ids() {
        let g = c6();
        let (a, b) = g.cut_contractions(VertexSet::from([0, 1, 2])).unwrap();
        assert_ne!(a.graph.vertex(a.vertex).id, b.graph.vertex(b.vertex).id);
        assert!(a.graph.next_id() > 7 && b.graph.next_id() > 7);
    }
}

//! Perfect matchings: existence (Edmonds' blossom algorithm), enumeration,
//! matching-covered and bicritical predicates, and tightness of cuts.
//!
//! Tightness has two independent routes. [`tight_pairwise`] uses only
//! existence queries: `|X|` odd forces `|M ∩ ∂(X)|` odd, so a cut fails to be
//! tight exactly when two disjoint cut edges extend to a perfect matching.
//! [`tight_by_enumeration`] walks every perfect matching and counts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{subsets, Cut, MultiGraph, VertexSet};

const NONE: usize = usize::MAX;

/// Maximum matching of `G[mask]` as a mate array (`usize::MAX` = unmatched).
pub fn maximum_matching_on(g: &MultiGraph, mask: VertexSet) -> Vec<usize> {
    Blossom::new(g, mask).run()
}

struct Blossom<'a> {
    g: &'a MultiGraph,
    mask: VertexSet,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a MultiGraph, mask: VertexSet) -> Self {
        let n = g.vertex_count();
        Blossom {
            g,
            mask,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn run(mut self) -> Vec<usize> {
        // greedy start
        for v in self.mask {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(w) = self
                .g
                .neighbors(v)
                .intersection(self.mask)
                .iter()
                .find(|&w| self.mate[w] == NONE)
            {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
        for root in self.mask {
            if self.mate[root] != NONE {
                continue;
            }
            let mut v = self.find_path(root);
            while v != NONE {
                let pv = self.parent[v];
                let ppv = self.mate[pv];
                self.mate[v] = pv;
                self.mate[pv] = v;
                v = ppv;
            }
        }
        self.mate
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = VertexSet::EMPTY;
        loop {
            a = self.base[a];
            seen.insert(a);
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen.contains(b) {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> usize {
        let n = self.g.vertex_count();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for to in self.g.neighbors(v).intersection(self.mask) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in self.mask {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        NONE
    }
}

/// Whether `G[mask]` has a perfect matching.
pub fn has_perfect_matching_on(g: &MultiGraph, mask: VertexSet) -> bool {
    if mask.len() % 2 == 1 {
        return false;
    }
    let mate = maximum_matching_on(g, mask);
    mask.iter().all(|v| mate[v] != NONE)
}

pub fn has_perfect_matching(g: &MultiGraph) -> bool {
    has_perfect_matching_on(g, g.vertex_set())
}

/// A perfect matching of `G[mask]` as sorted edge indices (lowest parallel copy).
pub fn perfect_matching_on(g: &MultiGraph, mask: VertexSet) -> Option<Matching> {
    if mask.len() % 2 == 1 {
        return None;
    }
    let mate = maximum_matching_on(g, mask);
    let mut edges = Vec::with_capacity(mask.len() / 2);
    for v in mask {
        let w = mate[v];
        if w == NONE {
            return None;
        }
        if v < w {
            edges.push(g.edge_range(v, w).start);
        }
    }
    Some(Matching::new(edges))
}

/// Tutte's condition `o(G - S) ≤ |S|` over every `S ⊆ V(G)`. Exponential; for
/// graphs of at most 14 vertices.
pub fn tutte_condition(g: &MultiGraph) -> Result<bool> {
    if g.vertex_count() > 14 {
        return Err(Error::TooManyVertices {
            n: g.vertex_count(),
            max: 14,
        });
    }
    Ok(subsets(g.vertex_set()).all(|s| g.odd_components(s) <= s.len()))
}

/// A set of edge indices with pairwise disjoint ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<usize>,
}

impl Matching {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covered(&self, g: &MultiGraph) -> VertexSet {
        self.edges
            .iter()
            .fold(VertexSet::EMPTY, |acc, &i| acc.union(g.edge(i).ends()))
    }

    pub fn is_valid(&self, g: &MultiGraph) -> bool {
        let mut seen = VertexSet::EMPTY;
        for &i in &self.edges {
            if i >= g.edge_count() {
                return false;
            }
            let ends = g.edge(i).ends();
            if !seen.is_disjoint(ends) {
                return false;
            }
            seen = seen.union(ends);
        }
        true
    }

    pub fn is_perfect(&self, g: &MultiGraph) -> bool {
        self.is_valid(g) && self.covered(g) == g.vertex_set()
    }

    /// `|M ∩ ∂(X)|`.
    pub fn crossing_count(&self, g: &MultiGraph, x: VertexSet) -> usize {
        self.edges
            .iter()
            .filter(|&&i| {
                let e = g.edge(i);
                x.contains(e.u) != x.contains(e.v)
            })
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectMatchings {
    pub matchings: Vec<Matching>,
    pub truncated: bool,
}

/// All perfect matchings (parallel edges distinguished), at most `limit`.
///
/// Branches on the lowest uncovered vertex, trying its edges in index order.
pub fn enumerate_perfect_matchings(g: &MultiGraph, limit: usize) -> Result<PerfectMatchings> {
    if limit == 0 {
        return Err(Error::BadParameter("limit must be at least 1".into()));
    }
    let mut out = PerfectMatchings {
        matchings: Vec::new(),
        truncated: false,
    };
    if g.vertex_count() % 2 == 0 {
        let incident = incidence(g);
        let mut stack = Vec::new();
        enumerate_rec(g, &incident, g.vertex_set(), &mut stack, limit, &mut out);
    }
    Ok(out)
}

fn incidence(g: &MultiGraph) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); g.vertex_count()];
    for (i, e) in g.edges().iter().enumerate() {
        inc[e.u].push(i);
        inc[e.v].push(i);
    }
    inc
}

fn enumerate_rec(
    g: &MultiGraph,
    incident: &[Vec<usize>],
    uncovered: VertexSet,
    stack: &mut Vec<usize>,
    limit: usize,
    out: &mut PerfectMatchings,
) {
    let Some(v) = uncovered.first() else {
        if out.matchings.len() == limit {
            out.truncated = true;
        } else {
            out.matchings.push(Matching::new(stack.clone()));
        }
        return;
    };
    for &i in &incident[v] {
        if out.truncated {
            return;
        }
        let w = g.edge(i).other(v);
        if !uncovered.contains(w) {
            continue;
        }
        stack.push(i);
        enumerate_rec(g, incident, uncovered.without(v).without(w), stack, limit, out);
        stack.pop();
    }
}

/// Connected, at least two vertices, every edge in some perfect matching.
pub fn is_matching_covered(g: &MultiGraph) -> bool {
    let n = g.vertex_count();
    if n < 2 || n % 2 == 1 || !g.is_connected() {
        return false;
    }
    let all = g.vertex_set();
    let mut last = None;
    for e in g.edges() {
        if last == Some((e.u, e.v)) {
            continue;
        }
        last = Some((e.u, e.v));
        if !has_perfect_matching_on(g, all.difference(e.ends())) {
            return false;
        }
    }
    true
}

pub fn is_bicritical(g: &MultiGraph) -> Result<bool> {
    let n = g.vertex_count();
    if n < 4 {
        return Err(Error::TooSmall(n));
    }
    let all = g.vertex_set();
    for u in 0..n {
        for v in u + 1..n {
            if !has_perfect_matching_on(g, all.without(u).without(v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessVerdict {
    pub tight: bool,
    /// A perfect matching meeting the cut in more than one edge.
    pub witness: Option<Matching>,
}

impl TightnessVerdict {
    fn tight() -> Self {
        TightnessVerdict {
            tight: true,
            witness: None,
        }
    }

    fn broken(witness: Matching) -> Self {
        TightnessVerdict {
            tight: false,
            witness: Some(witness),
        }
    }
}

fn check_odd_shore(g: &MultiGraph, x: VertexSet) -> Result<()> {
    if x.is_empty() || !x.is_subset(g.vertex_set()) || x == g.vertex_set() {
        return Err(Error::BadShore(x));
    }
    if x.len() % 2 == 0 {
        return Err(Error::EvenShore(x));
    }
    Ok(())
}

/// Tightness of `∂(X)` in a matching covered graph, by the pairwise test.
pub fn is_tight(g: &MultiGraph, x: VertexSet) -> Result<TightnessVerdict> {
    check_odd_shore(g, x)?;
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered);
    }
    Ok(tight_pairwise(g, x))
}

/// Pairwise test: no two disjoint cut edges extend to a perfect matching.
/// Assumes `X` is a valid odd shore.
pub fn tight_pairwise(g: &MultiGraph, x: VertexSet) -> TightnessVerdict {
    let all = g.vertex_set();
    let cut = g.edges_between(x, x.complement(g.vertex_count()));
    for (a, &e) in cut.iter().enumerate() {
        let ee = g.edge(e).ends();
        for &f in &cut[a + 1..] {
            let fe = g.edge(f).ends();
            if !ee.is_disjoint(fe) {
                continue;
            }
            let rest = all.difference(ee).difference(fe);
            if let Some(m) = perfect_matching_on(g, rest) {
                let mut edges = m.edges().to_vec();
                edges.extend([e, f]);
                return TightnessVerdict::broken(Matching::new(edges));
            }
        }
    }
    TightnessVerdict::tight()
}

/// Enumeration route: inspects every perfect matching.
pub fn tight_by_enumeration(g: &MultiGraph, x: VertexSet) -> TightnessVerdict {
    let incident = incidence(g);
    let mut stack = Vec::new();
    let mut found = None;
    walk_matchings(g, &incident, g.vertex_set(), &mut stack, &mut |m| {
        let crossing = m
            .iter()
            .filter(|&&i| {
                let e = g.edge(i);
                x.contains(e.u) != x.contains(e.v)
            })
            .count();
        if crossing != 1 {
            found = Some(Matching::new(m.to_vec()));
            false
        } else {
            true
        }
    });
    match found {
        Some(m) => TightnessVerdict::broken(m),
        None => TightnessVerdict::tight(),
    }
}

/// Calls `visit` on each perfect matching until it returns false.
fn walk_matchings(
    g: &MultiGraph,
    incident: &[Vec<usize>],
    uncovered: VertexSet,
    stack: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let Some(v) = uncovered.first() else {
        return visit(stack);
    };
    for &i in &incident[v] {
        let w = g.edge(i).other(v);
        if !uncovered.contains(w) {
            continue;
        }
        stack.push(i);
        let go_on = walk_matchings(g, incident, uncovered.without(v).without(w), stack, visit);
        stack.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Odd shores up to complement: those avoiding vertex 0.
pub fn odd_shores(n: usize, nontrivial_only: bool) -> impl Iterator<Item = VertexSet> {
    let rest = VertexSet::full(n).without(0);
    subsets(rest).filter(move |x| {
        let k = x.len();
        k % 2 == 1 && (n - k) % 2 == 1 && (!nontrivial_only || (k >= 3 && n - k >= 3))
    })
}

/// Every tight cut of a matching covered graph, up to complement.
pub fn enumerate_tight_cuts(g: &MultiGraph, nontrivial_only: bool) -> Result<Vec<Cut>> {
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered);
    }
    Ok(tight_cuts_unchecked(g, nontrivial_only))
}

pub(crate) fn tight_cuts_unchecked(g: &MultiGraph, nontrivial_only: bool) -> Vec<Cut> {
    let mut shores: Vec<VertexSet> = odd_shores(g.vertex_count(), nontrivial_only)
        .filter(|&x| tight_pairwise(g, x).tight)
        .collect();
    shores.sort_by(VertexSet::cmp_size_lex);
    shores
        .into_iter()
        .map(|x| Cut::new(g, x).expect("odd proper shore"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::gen_named;
    use crate::graph::build_graph;

    fn path4() -> MultiGraph {
        build_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn existence_examples() {
        assert!(has_perfect_matching(&gen_named("k4").unwrap()));
        assert!(!has_perfect_matching(&build_graph(3, &[(0, 1), (1, 2)]).unwrap()));
        let c6 = gen_named("c6").unwrap();
        assert!(!has_perfect_matching_on(&c6, c6.vertex_set().without(0)));
        // blossom needed: triangle with pendant paths
        let g = build_graph(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(has_perfect_matching(&g));
        let star = build_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!has_perfect_matching(&star));
    }

    #[test]
    fn enumeration_counts() {
        let k4 = gen_named("k4").unwrap();
        assert_eq!(enumerate_perfect_matchings(&k4, 100).unwrap().matchings.len(), 3);
        let c6 = gen_named("c6").unwrap();
        assert_eq!(enumerate_perfect_matchings(&c6, 100).unwrap().matchings.len(), 2);
        let dbl = build_graph(2, &[(0, 1), (0, 1)]).unwrap();
        let pm = enumerate_perfect_matchings(&dbl, 100).unwrap();
        assert_eq!(pm.matchings.len(), 2);
        assert_ne!(pm.matchings[0], pm.matchings[1]);
        let t = enumerate_perfect_matchings(&k4, 2).unwrap();
        assert!(t.truncated);
        assert_eq!(t.matchings.len(), 2);
        assert!(enumerate_perfect_matchings(&k4, 0).is_err());
        let petersen = gen_named("petersen").unwrap();
        let all = enumerate_perfect_matchings(&petersen, 1000).unwrap();
        assert_eq!(all.matchings.len(), 6);
        assert!(all.matchings.iter().all(|m| m.is_perfect(&petersen)));
    }

    #[test]
    fn matching_covered_examples() {
        for name in ["k4", "c6", "k33", "petersen"] {
            assert!(is_matching_covered(&gen_named(name).unwrap()), "{name}");
        }
        assert!(!is_matching_covered(&path4()));
        let two_k4 = build_graph(
            8,
            &[
                (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
                (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7),
            ],
        )
        .unwrap();
        assert!(!is_matching_covered(&two_k4));
    }

    #[test]
    fn bicritical_examples() {
        assert!(is_bicritical(&gen_named("k4").unwrap()).unwrap());
        assert!(!is_bicritical(&gen_named("k33").unwrap()).unwrap());
        assert_eq!(
            is_bicritical(&build_graph(2, &[(0, 1)]).unwrap()),
            Err(Error::TooSmall(2))
        );
    }

    #[test]
    fn tightness_examples() {
        let c6 = gen_named("c6").unwrap();
        let v = is_tight(&c6, VertexSet::from([0, 1, 2])).unwrap();
        assert!(v.tight && v.witness.is_none());
        assert!(is_tight(&c6, VertexSet::from([3])).unwrap().tight);
        assert_eq!(
            is_tight(&c6, VertexSet::from([0, 1])),
            Err(Error::EvenShore(VertexSet::from([0, 1])))
        );
        assert_eq!(is_tight(&path4(), VertexSet::from([0])), Err(Error::NotMatchingCovered));

        // K3,3 with sides {0,1,2} and {3,4,5}; X = {0, 1, 3}
        let k33 = gen_named("k33").unwrap();
        let x = VertexSet::from([0, 1, 3]);
        let v = is_tight(&k33, x).unwrap();
        assert!(!v.tight);
        let w = v.witness.unwrap();
        assert!(w.is_perfect(&k33));
        assert!(w.crossing_count(&k33, x) >= 3);
        assert!(!tight_by_enumeration(&k33, x).tight);
    }

    #[test]
    fn tight_cut_enumeration_examples() {
        let k4 = gen_named("k4").unwrap();
        assert!(enumerate_tight_cuts(&k4, true).unwrap().is_empty());
        assert_eq!(enumerate_tight_cuts(&k4, false).unwrap().len(), 4);
        let c6 = gen_named("c6").unwrap();
        let cuts = enumerate_tight_cuts(&c6, true).unwrap();
        let mut shores: Vec<_> = cuts.iter().map(|c| c.canonical_shore()).collect();
        shores.sort();
        let mut expected = vec![
            VertexSet::from([3, 4, 5]),
            VertexSet::from([1, 2, 3]),
            VertexSet::from([2, 3, 4]),
        ];
        expected.sort();
        assert_eq!(shores, expected);
        assert!(enumerate_tight_cuts(&gen_named("petersen").unwrap(), true)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn tutte_oracle_agrees_on_fixtures() {
        for name in ["k4", "c6", "k33", "petersen", "c4"] {
            let g = gen_named(name).unwrap();
            assert_eq!(tutte_condition(&g).unwrap(), has_perfect_matching(&g));
        }
        assert!(!tutte_condition(&build_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()).unwrap());
    }
}

//! Generalized 2-separation cuts (GS-cuts), their essential variant obtained
//! by shrinking sheltered barriers, and the classification of non-trivial
//! tight cuts into barrier-cuts and essential GS-cuts.
//!
//! For a cut `∂(X)` the associated family `𝓕` is the set of 2-separations
//! meeting `X` in exactly one vertex. `∂(X)` is a GS-cut when
//!
//! * (a) `𝓕` is nonempty and every cut edge has an end in some member of `𝓕`;
//! * (b) members of `𝓕` are chained: the graph joining `F, F'` when
//!   `|F ∩ F'| = 1` is connected;
//! * (c) for `F, F'` meeting in a single vertex `w`, and components `Y` of
//!   `G - F`, `Y'` of `G - F'` with `Y ⊊ Y'`, every odd component of
//!   `G[Y' ∖ (Y ∪ F)]` lies in the shore not containing `w` and every even
//!   one lies inside a single shore;
//! * (d) if `Y ∪ F` contains no other member of `𝓕`, then `Y` lies inside a
//!   single shore.
//!
//! Shrinking a barrier `B ⊆ X̄` means contracting everything outside the
//! component of `G - B` that contains `X` (a barrier-cut contraction), and
//! symmetrically for `B ⊆ X`.

use serde::{Deserialize, Serialize};

use crate::corpus::edge_splice;
use crate::elp::{
    enumerate_nontrivial_barriers, is_barrier_cut, two_separations, Barrier, BarrierCutWitness,
    TwoSeparation,
};
use crate::error::{Error, Result};
use crate::graph::{Cut, MultiGraph, VertexSet};
use crate::matching::{is_matching_covered, tight_pairwise};

/// 2-separations meeting `X` in exactly one vertex.
pub fn associated_family(g: &MultiGraph, x: VertexSet) -> Vec<TwoSeparation> {
    two_separations(g)
        .into_iter()
        .filter(|f| f.pair.intersection(x).len() == 1)
        .collect()
}

/// A sequence of family indices, consecutive members sharing exactly one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub from: usize,
    pub to: usize,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndSeparation {
    pub separation: TwoSeparation,
    /// The vertex `w` with `F ∩ F' ⊆ {w}` for all other members, when some
    /// other member meets `F` at all.
    pub pivot: Option<usize>,
    /// A component `G1` of `G - F` with `V(G1) ∪ F` containing no other member.
    pub free_component: Option<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsCertificate {
    pub shore: VertexSet,
    pub family: Vec<TwoSeparation>,
    pub chains: Vec<Chain>,
    pub end_separations: Vec<EndSeparation>,
}

/// Per-condition outcome of the GS-cut test.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsConditions {
    pub family_size: usize,
    pub edges_covered: bool,
    pub chained: bool,
    pub parity: bool,
    pub free_components: bool,
    /// First violated condition, if any.
    pub failure: Option<String>,
}

impl GsConditions {
    /// All conditions, including nonempty family and edge coverage.
    pub fn holds(&self) -> bool {
        self.family_size > 0 && self.edges_covered && self.chained && self.parity && self.free_components
    }

    /// The reading in which only the chain and shore conditions are required,
    /// so an empty family passes vacuously.
    pub fn holds_vacuously(&self) -> bool {
        self.chained && self.parity && self.free_components
    }
}

fn meet_one(a: &TwoSeparation, b: &TwoSeparation) -> Option<usize> {
    let m = a.pair.intersection(b.pair);
    (m.len() == 1).then(|| m.first().unwrap())
}

fn inside_one_shore(s: VertexSet, x: VertexSet) -> bool {
    s.is_subset(x) || s.is_disjoint(x)
}

fn chain_paths(family: &[TwoSeparation]) -> Option<Vec<Chain>> {
    let k = family.len();
    let mut chains = Vec::new();
    for from in 0..k {
        // BFS from `from`
        let mut prev = vec![usize::MAX; k];
        prev[from] = from;
        let mut queue = vec![from];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for b in 0..k {
                if prev[b] == usize::MAX && meet_one(&family[a], &family[b]).is_some() {
                    prev[b] = a;
                    queue.push(b);
                }
            }
        }
        for to in from + 1..k {
            if prev[to] == usize::MAX {
                return None;
            }
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            chains.push(Chain { from, to, path });
        }
    }
    Some(chains)
}

fn parity_violation(g: &MultiGraph, x: VertexSet, family: &[TwoSeparation]) -> Option<String> {
    for f in family {
        for f2 in family {
            let Some(w) = meet_one(f, f2) else { continue };
            let w_in_x = x.contains(w);
            for &y in &f.components {
                for &y2 in &f2.components {
                    if !(y.is_subset(y2) && y != y2) {
                        continue;
                    }
                    let rest = y2.difference(y.union(f.pair));
                    for comp in g.components_within(rest) {
                        let ok = if comp.len() % 2 == 1 {
                            if w_in_x {
                                comp.is_disjoint(x)
                            } else {
                                comp.is_subset(x)
                            }
                        } else {
                            inside_one_shore(comp, x)
                        };
                        if !ok {
                            return Some(format!(
                                "component {:?} between {:?} and {:?} violates the shore condition",
                                g.labels_of(comp),
                                g.labels_of(f.pair),
                                g.labels_of(f2.pair)
                            ));
                        }
                    }
                }
            }
        }
    }
    None
}

fn free_component_violation(
    g: &MultiGraph,
    x: VertexSet,
    family: &[TwoSeparation],
) -> Option<String> {
    for (i, f) in family.iter().enumerate() {
        for &y in &f.components {
            let closed = y.union(f.pair);
            let holds_other = family
                .iter()
                .enumerate()
                .any(|(j, f2)| j != i && f2.pair.is_subset(closed));
            if !holds_other && !inside_one_shore(y, x) {
                return Some(format!(
                    "component {:?} of G - {:?} is split by the cut",
                    g.labels_of(y),
                    g.labels_of(f.pair)
                ));
            }
        }
    }
    None
}

fn conditions_for(g: &MultiGraph, x: VertexSet, family: &[TwoSeparation]) -> GsConditions {
    let mut c = GsConditions {
        family_size: family.len(),
        ..GsConditions::default()
    };
    let covered = family
        .iter()
        .fold(VertexSet::EMPTY, |a, f| a.union(f.pair));
    let cut = g.edges_between(x, x.complement(g.vertex_count()));
    c.edges_covered = cut
        .iter()
        .all(|&i| !g.edge(i).ends().is_disjoint(covered));
    c.chained = chain_paths(family).is_some();
    let parity = parity_violation(g, x, family);
    c.parity = parity.is_none();
    let free = free_component_violation(g, x, family);
    c.free_components = free.is_none();
    c.failure = if family.is_empty() {
        Some("no 2-separation meets the shore in exactly one vertex".into())
    } else if !c.edges_covered {
        Some("a cut edge avoids every associated 2-separation".into())
    } else if !c.chained {
        Some("associated 2-separations are not chained".into())
    } else {
        parity.or(free)
    };
    c
}

/// Evaluates each GS-cut condition for `∂(X)`.
pub fn gs_conditions(g: &MultiGraph, x: VertexSet) -> Result<GsConditions> {
    Cut::new(g, x)?;
    Ok(conditions_for(g, x, &associated_family(g, x)))
}

/// End-2-separations of a family, each with a component of `G - F` whose
/// closure holds no other member.
pub fn end_2_separations(family: &[TwoSeparation]) -> Vec<EndSeparation> {
    let mut out = Vec::new();
    for (i, f) in family.iter().enumerate() {
        let touched = family
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(VertexSet::EMPTY, |a, (_, f2)| a.union(f.pair.intersection(f2.pair)));
        if touched.len() > 1 {
            continue;
        }
        let free_component = f.components.iter().copied().find(|&y| {
            let closed = y.union(f.pair);
            !family
                .iter()
                .enumerate()
                .any(|(j, f2)| j != i && f2.pair.is_subset(closed))
        });
        out.push(EndSeparation {
            separation: f.clone(),
            pivot: touched.first(),
            free_component,
        });
    }
    out
}

/// A GS-cut certificate for `∂(X)`, if it is one.
pub fn is_gs_cut(g: &MultiGraph, x: VertexSet) -> Result<Option<GsCertificate>> {
    Cut::new(g, x)?;
    let family = associated_family(g, x);
    let c = conditions_for(g, x, &family);
    if !c.holds() {
        return Ok(None);
    }
    Ok(Some(GsCertificate {
        shore: x,
        chains: chain_paths(&family).expect("chained"),
        end_separations: end_2_separations(&family),
        family,
    }))
}

impl GsCertificate {
    /// Re-checks the certificate on `g` without reusing the search.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let x = self.shore;
        Cut::new(g, x)?;
        let mut expected = associated_family(g, x);
        let mut claimed = self.family.clone();
        for s in &claimed {
            s.validate(g)?;
            if s.pair.intersection(x).len() != 1 {
                return Err(Error::BadCertificate(format!(
                    "{:?} does not meet the shore once",
                    s.pair
                )));
            }
        }
        expected.sort();
        claimed.sort();
        if expected != claimed {
            return Err(Error::BadCertificate(
                "family is not the full set of associated 2-separations".into(),
            ));
        }
        let k = self.family.len();
        if k == 0 {
            return Err(Error::BadCertificate("empty family".into()));
        }
        let mut seen = vec![vec![false; k]; k];
        for ch in &self.chains {
            let ok = ch.path.first() == Some(&ch.from)
                && ch.path.last() == Some(&ch.to)
                && ch.path.iter().all(|&i| i < k)
                && ch
                    .path
                    .windows(2)
                    .all(|w| meet_one(&self.family[w[0]], &self.family[w[1]]).is_some());
            if !ok || ch.from >= k || ch.to >= k {
                return Err(Error::BadCertificate(format!(
                    "chain {} -> {} is broken",
                    ch.from, ch.to
                )));
            }
            seen[ch.from][ch.to] = true;
            seen[ch.to][ch.from] = true;
        }
        for a in 0..k {
            for b in a + 1..k {
                if !seen[a][b] {
                    return Err(Error::BadCertificate(format!("no chain for {a} and {b}")));
                }
            }
        }
        let covered = self
            .family
            .iter()
            .fold(VertexSet::EMPTY, |a, f| a.union(f.pair));
        if g.cut_edges(x)?
            .iter()
            .any(|&i| g.edge(i).ends().is_disjoint(covered))
        {
            return Err(Error::BadCertificate("uncovered cut edge".into()));
        }
        if let Some(msg) = parity_violation(g, x, &self.family)
            .or_else(|| free_component_violation(g, x, &self.family))
        {
            return Err(Error::BadCertificate(msg));
        }
        for e in &self.end_separations {
            if !end_2_separations(&self.family).contains(e) {
                return Err(Error::BadCertificate("bogus end-2-separation".into()));
            }
        }
        Ok(())
    }
}

/// A sheltered non-trivial barrier together with the vertex set that is
/// shrunk for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShrunkBarrier {
    pub barrier: Barrier,
    /// Positions of `G` contracted into one vertex: everything outside the
    /// component of `G - B` holding the opposite shore.
    pub contracted: VertexSet,
    /// Whether `B ⊆ X`.
    pub in_shore: bool,
}

impl ShrunkBarrier {
    /// `None` unless `B` is sheltered and the opposite shore sits inside one
    /// component of `G - B`.
    pub fn new(g: &MultiGraph, x: VertexSet, barrier: &Barrier) -> Option<ShrunkBarrier> {
        let n = g.vertex_count();
        let b = barrier.vertices;
        let (in_shore, opposite) = if b.is_subset(x) {
            (true, x.complement(n))
        } else if b.is_disjoint(x) {
            (false, x)
        } else {
            return None;
        };
        let start = opposite.first()?;
        let keep = g.component_of(g.vertex_set().difference(b), start);
        if !opposite.is_subset(keep) {
            return None;
        }
        Some(ShrunkBarrier {
            barrier: barrier.clone(),
            contracted: keep.complement(n),
            in_shore,
        })
    }
}

/// `G'` after shrinking every barrier of a family, with the image of `X`.
#[derive(Clone, Debug)]
pub struct ShrunkGraph {
    pub graph: MultiGraph,
    pub shore: VertexSet,
    /// Position of `b_i` in `G'`, one per shrunk barrier.
    pub vertices: Vec<usize>,
}

/// Contracts each `contracted` set in turn (the sets must be pairwise disjoint).
pub fn shrink_barriers(g: &MultiGraph, x: VertexSet, family: &[ShrunkBarrier]) -> Result<ShrunkGraph> {
    let mut graph = g.clone();
    let mut pos: Vec<usize> = (0..g.vertex_count()).collect();
    let mut shore = x;
    let mut made: Vec<usize> = Vec::new();
    let mut used = VertexSet::EMPTY;
    for (i, sb) in family.iter().enumerate() {
        if !used.is_disjoint(sb.contracted) {
            return Err(Error::BadCertificate("shrunk vertex sets overlap".into()));
        }
        used = used.union(sb.contracted);
        let image: VertexSet = sb.contracted.iter().map(|v| pos[v]).collect();
        let tag = format!("b{}", i + 1);
        let c = graph.contract_with_map(image, Some(&tag))?;
        for p in pos.iter_mut() {
            *p = c.map[*p];
        }
        for m in made.iter_mut() {
            *m = c.map[*m];
        }
        let mut s = c.image(shore.difference(image));
        if sb.in_shore {
            s.insert(c.vertex);
        }
        shore = s;
        made.push(c.vertex);
        graph = c.graph;
    }
    Ok(ShrunkGraph {
        graph,
        shore,
        vertices: made,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    /// Position of `b_i` in the shrunk graph.
    pub vertex: usize,
    pub separation: TwoSeparation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialGsCertificate {
    pub shore: VertexSet,
    pub barriers: Vec<ShrunkBarrier>,
    pub contracted_graph: MultiGraph,
    pub shore_image: VertexSet,
    pub inner: GsCertificate,
    pub assignments: Vec<Assignment>,
}

impl EssentialGsCertificate {
    pub fn barrier_sets(&self) -> Vec<VertexSet> {
        self.barriers.iter().map(|b| b.barrier.vertices).collect()
    }

    /// Re-derives the shrunk graph from `g` and re-checks every part.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let x = self.shore;
        Cut::new(g, x)?;
        for (i, sb) in self.barriers.iter().enumerate() {
            sb.barrier.validate(g)?;
            if sb.barrier.is_trivial() {
                return Err(Error::BadCertificate("trivial barrier".into()));
            }
            if ShrunkBarrier::new(g, x, &sb.barrier).as_ref() != Some(sb) {
                return Err(Error::BadCertificate(format!(
                    "barrier {:?} is not sheltered or its shrink set is wrong",
                    sb.barrier.vertices
                )));
            }
            for other in &self.barriers[i + 1..] {
                if !sb.barrier.vertices.is_disjoint(other.barrier.vertices) {
                    return Err(Error::BadCertificate("barriers overlap".into()));
                }
            }
        }
        let shrunk = shrink_barriers(g, x, &self.barriers)?;
        if shrunk.graph.vertex_count() != self.contracted_graph.vertex_count()
            || shrunk.graph.edges() != self.contracted_graph.edges()
        {
            return Err(Error::BadCertificate("contracted graph does not match".into()));
        }
        if shrunk.shore != self.shore_image || self.inner.shore != self.shore_image {
            return Err(Error::BadCertificate("shore image does not match".into()));
        }
        self.inner.validate(&shrunk.graph)?;
        if self.assignments.len() != shrunk.vertices.len() {
            return Err(Error::BadCertificate("one assignment per barrier expected".into()));
        }
        for (a, &b) in self.assignments.iter().zip(&shrunk.vertices) {
            if a.vertex != b
                || !a.separation.pair.contains(b)
                || !self.inner.family.contains(&a.separation)
            {
                return Err(Error::BadCertificate(format!(
                    "shrunk vertex {b} lacks an associated 2-separation"
                )));
            }
        }
        Ok(())
    }
}

/// Limits for the essential GS-cut search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    /// Largest barrier family tried.
    pub max_barriers: usize,
    /// Families evaluated before giving up.
    pub budget: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_barriers: 4,
            budget: 100_000,
        }
    }
}

/// Record of a failed search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTranscript {
    pub sheltered_barriers: Vec<VertexSet>,
    pub families_tried: usize,
    pub gs_conditions: GsConditions,
    pub barrier_cut_searched: bool,
    pub notes: Vec<String>,
}

/// Searches for barrier families whose shrinking turns `∂(X)` into a GS-cut
/// with every shrunk vertex in an associated 2-separation. Families are tried
/// by size, then lexicographically; the empty family is the plain GS test.
pub fn is_essential_gs_cut(
    g: &MultiGraph,
    x: VertexSet,
    limits: SearchLimits,
) -> Result<Option<EssentialGsCertificate>> {
    let mut transcript = SearchTranscript::default();
    search_essential(g, x, limits, &mut transcript)
}

fn search_essential(
    g: &MultiGraph,
    x: VertexSet,
    limits: SearchLimits,
    transcript: &mut SearchTranscript,
) -> Result<Option<EssentialGsCertificate>> {
    Cut::new(g, x)?;
    transcript.gs_conditions = gs_conditions(g, x)?;
    let candidates: Vec<ShrunkBarrier> = enumerate_nontrivial_barriers(g)?
        .iter()
        .filter_map(|b| ShrunkBarrier::new(g, x, b))
        .collect();
    transcript.sheltered_barriers = candidates.iter().map(|c| c.barrier.vertices).collect();
    let mut chosen: Vec<usize> = Vec::new();
    for size in 0..=limits.max_barriers.min(candidates.len()) {
        if let Some(cert) =
            try_families(g, x, &candidates, size, 0, &mut chosen, limits, transcript)?
        {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn try_families(
    g: &MultiGraph,
    x: VertexSet,
    candidates: &[ShrunkBarrier],
    size: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    limits: SearchLimits,
    transcript: &mut SearchTranscript,
) -> Result<Option<EssentialGsCertificate>> {
    if chosen.len() == size {
        transcript.families_tried += 1;
        if transcript.families_tried > limits.budget {
            return Err(Error::SearchBudgetExceeded(format!(
                "{} barrier families tried; transcript: {}",
                limits.budget,
                serde_json::to_string(transcript).unwrap_or_default()
            )));
        }
        let family: Vec<ShrunkBarrier> = chosen.iter().map(|&i| candidates[i].clone()).collect();
        return evaluate_family(g, x, family);
    }
    for i in from..candidates.len() {
        let c = &candidates[i];
        if chosen.iter().any(|&j| {
            !candidates[j].barrier.vertices.is_disjoint(c.barrier.vertices)
                || !candidates[j].contracted.is_disjoint(c.contracted)
        }) {
            continue;
        }
        chosen.push(i);
        let found = try_families(g, x, candidates, size, i + 1, chosen, limits, transcript)?;
        chosen.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn evaluate_family(
    g: &MultiGraph,
    x: VertexSet,
    family: Vec<ShrunkBarrier>,
) -> Result<Option<EssentialGsCertificate>> {
    let shrunk = shrink_barriers(g, x, &family)?;
    let Some(inner) = is_gs_cut(&shrunk.graph, shrunk.shore)? else {
        return Ok(None);
    };
    let mut assignments = Vec::new();
    for &b in &shrunk.vertices {
        match inner.family.iter().find(|f| f.pair.contains(b)) {
            Some(f) => assignments.push(Assignment {
                vertex: b,
                separation: f.clone(),
            }),
            None => return Ok(None),
        }
    }
    Ok(Some(EssentialGsCertificate {
        shore: x,
        barriers: family,
        contracted_graph: shrunk.graph,
        shore_image: shrunk.shore,
        inner,
        assignments,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    BarrierCut,
    EssentialGsCut,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "kebab-case")]
pub enum TightCutClassification {
    BarrierCut(BarrierCutWitness),
    EssentialGsCut(EssentialGsCertificate),
    Unclassified(SearchTranscript),
}

impl TightCutClassification {
    pub fn verdict(&self) -> Verdict {
        match self {
            TightCutClassification::BarrierCut(_) => Verdict::BarrierCut,
            TightCutClassification::EssentialGsCut(_) => Verdict::EssentialGsCut,
            TightCutClassification::Unclassified(_) => Verdict::Unclassified,
        }
    }

    pub fn validate(&self, g: &MultiGraph, x: VertexSet) -> Result<()> {
        match self {
            TightCutClassification::BarrierCut(w) => w.validate(g, x),
            TightCutClassification::EssentialGsCut(c) if c.shore == x => c.validate(g),
            TightCutClassification::EssentialGsCut(_) => {
                Err(Error::BadCertificate("certificate is for another shore".into()))
            }
            TightCutClassification::Unclassified(_) => Ok(()),
        }
    }
}

/// Classifies a non-trivial tight cut: barrier-cut first, then essential GS-cut.
pub fn classify_tight_cut(g: &MultiGraph, x: VertexSet) -> Result<TightCutClassification> {
    classify_with(g, x, SearchLimits::default())
}

pub fn classify_with(
    g: &MultiGraph,
    x: VertexSet,
    limits: SearchLimits,
) -> Result<TightCutClassification> {
    let cut = Cut::new(g, x)?;
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered);
    }
    if cut.is_trivial() {
        return Err(Error::TrivialCut);
    }
    if x.len() % 2 == 0 || !tight_pairwise(g, x).tight {
        return Err(Error::NotTight);
    }
    classify_unchecked(g, x, limits)
}

/// Classification without re-checking the preconditions.
pub fn classify_unchecked(
    g: &MultiGraph,
    x: VertexSet,
    limits: SearchLimits,
) -> Result<TightCutClassification> {
    if let Some(w) = is_barrier_cut(g, x)? {
        return Ok(TightCutClassification::BarrierCut(w));
    }
    let mut transcript = SearchTranscript {
        barrier_cut_searched: true,
        ..SearchTranscript::default()
    };
    match search_essential(g, x, limits, &mut transcript)? {
        Some(c) => Ok(TightCutClassification::EssentialGsCut(c)),
        None => Ok(TightCutClassification::Unclassified(transcript)),
    }
}

/// Tightness of `∂(X1)` in `G1`, `∂(X2)` in `G2`, and `∂(X1 ∪ X2)` in their
/// edge splice at `x`–`y`.
///
/// `x` and `y` give the positions of the splice vertices in `(G1, G2)`.
pub fn check_splice_tightness(
    g1: &MultiGraph,
    g2: &MultiGraph,
    x: (usize, usize),
    y: (usize, usize),
    x1: VertexSet,
    x2: VertexSet,
) -> Result<(bool, bool, bool)> {
    let splice = edge_splice(g1, (x.0, y.0), g2, (x.1, y.1))?;
    for (g, s, xv, yv) in [(g1, x1, x.0, y.0), (g2, x2, x.1, y.1)] {
        if s.len() % 2 == 0 || !s.contains(xv) || s.contains(yv) || !s.is_subset(g.vertex_set()) {
            return Err(Error::BadSplice(format!(
                "shore {s:?} must be odd, contain x and avoid y"
            )));
        }
    }
    if !crate::elp::is_two_separation(&splice.graph, VertexSet::from([x.0, y.0])) {
        return Err(Error::BadSplice("{x, y} is not a 2-separation of the splice".into()));
    }
    let combined = splice.left_image(x1).union(splice.right_image(x2));
    Ok((
        tight_pairwise(g1, x1).tight,
        tight_pairwise(g2, x2).tight,
        tight_pairwise(&splice.graph, combined).tight,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{gen_h_n, gen_h_n_prime, gen_named};
    use crate::elp::{is_two_separation, two_separation_cuts};

    fn v_side(g: &MultiGraph, n: usize) -> VertexSet {
        (1..=2 * n + 1)
            .map(|i| g.position_of_label(&format!("v{i}")).unwrap())
            .collect()
    }

    #[test]
    fn family_examples() {
        let h = gen_h_n(3).unwrap();
        let fam = associated_family(&h, v_side(&h, 3));
        assert_eq!(fam.len(), 5);
        assert_eq!(fam, two_separations(&h));
        let k4 = gen_named("k4").unwrap();
        assert!(associated_family(&k4, VertexSet::from([0])).is_empty());
        let c6 = gen_named("c6").unwrap();
        let sep = VertexSet::from([0, 3]);
        assert!(associated_family(&c6, VertexSet::from([0, 1, 2]))
            .iter()
            .any(|f| f.pair == sep));
    }

    #[test]
    fn h_n_v_side_is_gs() {
        for n in 1..=4 {
            let h = gen_h_n(n).unwrap();
            let x = v_side(&h, n);
            let cert = is_gs_cut(&h, x).unwrap().expect("GS-cut");
            cert.validate(&h).unwrap();
            assert_eq!(cert.family.len(), 2 * n - 1);
        }
    }

    #[test]
    fn two_separation_cuts_are_gs() {
        for n in 1..=3 {
            let g = gen_h_n(n).unwrap();
            for s in two_separations(&g) {
                for c in two_separation_cuts(&g, &s) {
                    let cert = is_gs_cut(&g, c.cut.shore()).unwrap();
                    assert!(cert.is_some(), "{:?}", g.labels_of(c.cut.shore()));
                }
            }
        }
    }

    #[test]
    fn disjoint_separations_break_the_chain() {
        // C6 has three pairwise disjoint 2-separations, each meeting every
        // 2-separation shore once, so no chain joins them.
        let c6 = gen_named("c6").unwrap();
        let c = gs_conditions(&c6, VertexSet::from([0, 1, 2])).unwrap();
        assert_eq!(c.family_size, 3);
        assert!(!c.chained && !c.holds());
        assert!(is_barrier_cut(&c6, VertexSet::from([0, 1, 2])).unwrap().is_some());
    }

    #[test]
    fn h_prime_cut_is_essential_not_gs() {
        let h = gen_h_n_prime(4).unwrap();
        let x = h.set_of(&["v1", "v2", "v3"]);
        assert!(is_gs_cut(&h, x).unwrap().is_none());
        let cert = is_essential_gs_cut(&h, x, SearchLimits::default())
            .unwrap()
            .expect("essential GS-cut");
        assert_eq!(cert.barrier_sets(), vec![h.set_of(&["u1", "u2"])]);
        cert.validate(&h).unwrap();
        let shrunk = &cert.contracted_graph;
        assert_eq!(shrunk.vertex_count(), 10);
        assert!(crate::matching::is_bicritical(shrunk).unwrap());
    }

    #[test]
    fn gs_cut_is_essential_with_no_barriers() {
        let h = gen_h_n(2).unwrap();
        let cert = is_essential_gs_cut(&h, v_side(&h, 2), SearchLimits::default())
            .unwrap()
            .unwrap();
        assert!(cert.barriers.is_empty());
        assert!(is_essential_gs_cut(&gen_named("k4").unwrap(), VertexSet::from([0]), SearchLimits::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn end_separation_examples() {
        let h = gen_h_n(3).unwrap();
        let fam = associated_family(&h, v_side(&h, 3));
        let ends: Vec<_> = end_2_separations(&fam)
            .into_iter()
            .map(|e| h.labels_of(e.separation.pair))
            .collect();
        assert_eq!(ends, vec![vec!["v1", "u3"], vec!["v5", "u7"]]);
        let single = &fam[..1];
        let e = end_2_separations(single);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].pivot, None);
        assert!(e[0].free_component.is_some());
    }

    #[test]
    fn classification_examples() {
        let c6 = gen_named("c6").unwrap();
        let x = VertexSet::from([0, 1, 2]);
        match classify_tight_cut(&c6, x).unwrap() {
            TightCutClassification::BarrierCut(w) => {
                assert_eq!(w.barrier.vertices, VertexSet::from([3, 5]))
            }
            other => panic!("{other:?}"),
        }
        let h = gen_h_n(2).unwrap();
        let c = classify_tight_cut(&h, v_side(&h, 2)).unwrap();
        assert_eq!(c.verdict(), Verdict::EssentialGsCut);
        let hp = gen_h_n_prime(4).unwrap();
        let x = hp.set_of(&["v1", "v2", "v3"]);
        let c = classify_tight_cut(&hp, x).unwrap();
        assert_eq!(c.verdict(), Verdict::EssentialGsCut);
        c.validate(&hp, x).unwrap();
        assert_eq!(
            classify_tight_cut(&c6, VertexSet::from([0])),
            Err(Error::TrivialCut)
        );
        assert_eq!(
            classify_tight_cut(&c6, VertexSet::from([0, 1, 3])),
            Err(Error::NotTight)
        );
    }

    #[test]
    fn splice_of_two_k4() {
        let k4 = gen_named("k4").unwrap();
        // X_i = {x} on each side
        let r = check_splice_tightness(&k4, &k4, (0, 0), (1, 1), VertexSet::from([0]), VertexSet::from([0]))
            .unwrap();
        assert_eq!(r, (true, true, true));
        // X_i = {x, a, b}: a trivial complement on each side
        let r = check_splice_tightness(
            &k4,
            &k4,
            (0, 0),
            (1, 1),
            VertexSet::from([0, 2, 3]),
            VertexSet::from([0, 2, 3]),
        )
        .unwrap();
        assert_eq!(r, (true, true, true));
        assert!(check_splice_tightness(&k4, &k4, (0, 0), (1, 1), VertexSet::from([1]), VertexSet::from([0])).is_err());
        let s = edge_splice(&k4, (0, 1), &k4, (0, 1)).unwrap();
        assert!(is_two_separation(&s.graph, VertexSet::from([0, 1])));
    }
}

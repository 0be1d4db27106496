//! Barriers, 2-separations and the ELP-cuts they induce.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{subsets, Cut, MultiGraph, VertexSet};

/// Default vertex cap for exponential barrier enumeration.
pub const BARRIER_VERTEX_CAP: usize = 20;

/// A vertex set `B` with `o(G - B) = |B|`, together with the components of `G - B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Barrier {
    pub vertices: VertexSet,
    pub odd_components: Vec<VertexSet>,
    #[serde(default)]
    pub maximal: bool,
}

impl Barrier {
    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Re-checks the barrier condition and the recorded components on `g`.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let b = self.vertices;
        if b.is_empty() || !b.is_subset(g.vertex_set()) {
            return Err(Error::BadCertificate(format!("{b:?} is not a vertex subset")));
        }
        let report = g.removed_components(b);
        if report.odd_count != b.len() {
            return Err(Error::BadCertificate(format!(
                "o(G - {b:?}) = {} but |B| = {}",
                report.odd_count,
                b.len()
            )));
        }
        let mut odd: Vec<_> = report
            .components
            .into_iter()
            .filter(|c| c.len() % 2 == 1)
            .collect();
        let mut claimed = self.odd_components.clone();
        odd.sort();
        claimed.sort();
        if odd != claimed {
            return Err(Error::BadCertificate(
                "recorded odd components do not match G - B".into(),
            ));
        }
        Ok(())
    }
}

/// A 2-vertex set whose removal leaves at least two components, all even.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoSeparation {
    pub pair: VertexSet,
    pub components: Vec<VertexSet>,
}

impl TwoSeparation {
    pub fn ends(&self) -> (usize, usize) {
        let v = self.pair.to_vec();
        (v[0], v[1])
    }

    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        match two_separation_at(g, self.pair) {
            Some(s) if s == *self => Ok(()),
            Some(_) => Err(Error::BadCertificate(format!(
                "components recorded for {:?} do not match",
                self.pair
            ))),
            None => Err(Error::BadCertificate(format!(
                "{:?} is not a 2-separation",
                self.pair
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElpKind {
    BarrierCut,
    TwoSeparationCut,
}

/// Why a cut is an ELP-cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ElpCertificate {
    /// `shore` is an odd component of `G - barrier`.
    Barrier { barrier: Barrier, component: VertexSet },
    /// `shore = group + vertex` where `group` is a union of components of
    /// `G - separation` and `vertex` one of the separation's two vertices.
    TwoSeparation {
        separation: TwoSeparation,
        group: VertexSet,
        vertex: usize,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElpCut {
    pub cut: Cut,
    pub kind: ElpKind,
    pub certificate: ElpCertificate,
}

impl PartialEq for ElpCut {
    fn eq(&self, other: &Self) -> bool {
        self.cut == other.cut
    }
}

impl ElpCut {
    /// The certified shore (the odd component, or group plus vertex).
    pub fn certified_shore(&self) -> VertexSet {
        match &self.certificate {
            ElpCertificate::Barrier { component, .. } => *component,
            ElpCertificate::TwoSeparation { group, vertex, .. } => group.with(*vertex),
        }
    }

    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let shore = self.certified_shore();
        if Cut::new(g, shore)? != self.cut.rebind(g)? {
            return Err(Error::BadCertificate(
                "certified shore does not match the cut".into(),
            ));
        }
        match (&self.certificate, self.kind) {
            (ElpCertificate::Barrier { barrier, component }, ElpKind::BarrierCut) => {
                barrier.validate(g)?;
                if !barrier.odd_components.contains(component) {
                    return Err(Error::BadCertificate(
                        "shore is not an odd component of G - B".into(),
                    ));
                }
                Ok(())
            }
            (
                ElpCertificate::TwoSeparation {
                    separation,
                    group,
                    vertex,
                },
                ElpKind::TwoSeparationCut,
            ) => {
                separation.validate(g)?;
                if !separation.pair.contains(*vertex) {
                    return Err(Error::BadCertificate("vertex not in the separation".into()));
                }
                let parts: Vec<_> = separation
                    .components
                    .iter()
                    .filter(|c| c.is_subset(*group))
                    .collect();
                let covered = parts.iter().fold(VertexSet::EMPTY, |a, c| a.union(**c));
                if covered != *group || parts.is_empty() || parts.len() == separation.components.len()
                {
                    return Err(Error::BadCertificate(
                        "group is not a proper nonempty union of components".into(),
                    ));
                }
                Ok(())
            }
            _ => Err(Error::BadCertificate("kind does not match certificate".into())),
        }
    }
}

/// `o(G - B) = |B|`.
pub fn is_barrier(g: &MultiGraph, b: VertexSet) -> Result<bool> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    if !b.is_subset(g.vertex_set()) {
        return Err(Error::BadShore(b));
    }
    Ok(g.odd_components(b) == b.len())
}

fn barrier_at(g: &MultiGraph, b: VertexSet) -> Option<Barrier> {
    let report = g.removed_components(b);
    (report.odd_count == b.len()).then(|| Barrier {
        vertices: b,
        odd_components: report
            .components
            .into_iter()
            .filter(|c| c.len() % 2 == 1)
            .collect(),
        maximal: false,
    })
}

fn check_cap(g: &MultiGraph, cap: usize) -> Result<()> {
    if g.vertex_count() > cap {
        return Err(Error::SearchBudgetExceeded(format!(
            "barrier enumeration is capped at {cap} vertices, graph has {}",
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Every barrier with at least two vertices, in size-then-lexicographic order.
///
/// Candidates are restricted to independent sets; in a matching covered graph
/// a non-trivial barrier spans no edge and leaves no even component.
pub fn enumerate_nontrivial_barriers(g: &MultiGraph) -> Result<Vec<Barrier>> {
    check_cap(g, BARRIER_VERTEX_CAP)?;
    let mut found = Vec::new();
    let mut current = VertexSet::EMPTY;
    independent_sets(g, 0, &mut current, &mut |b| {
        if b.len() >= 2 {
            let report = g.removed_components(b);
            if report.even_count == 0 && report.odd_count == b.len() {
                found.push(Barrier {
                    vertices: b,
                    odd_components: report.components,
                    maximal: false,
                });
            }
        }
    });
    let sets: Vec<VertexSet> = found.iter().map(|b| b.vertices).collect();
    for b in &mut found {
        b.maximal = !sets
            .iter()
            .any(|&s| s != b.vertices && b.vertices.is_subset(s));
    }
    found.sort_by(|a, b| a.vertices.cmp_size_lex(&b.vertices));
    Ok(found)
}

fn independent_sets(
    g: &MultiGraph,
    from: usize,
    current: &mut VertexSet,
    visit: &mut dyn FnMut(VertexSet),
) {
    visit(*current);
    for v in from..g.vertex_count() {
        if g.neighbors(v).is_disjoint(*current) && !current.contains(v) {
            current.insert(v);
            independent_sets(g, v + 1, current, visit);
            current.remove(v);
        }
    }
}

/// Non-trivial barrier-cuts `∂(V(Q))` over all non-trivial barriers.
pub fn barrier_cuts(g: &MultiGraph) -> Result<Vec<ElpCut>> {
    barrier_cuts_with(g, false)
}

/// As [`barrier_cuts`]; `include_trivial` also keeps cuts with a singleton shore.
pub fn barrier_cuts_with(g: &MultiGraph, include_trivial: bool) -> Result<Vec<ElpCut>> {
    let barriers = enumerate_nontrivial_barriers(g)?;
    let mut out: Vec<ElpCut> = Vec::new();
    for b in &barriers {
        push_barrier_cuts(g, b, include_trivial, &mut out);
    }
    Ok(out)
}

fn push_barrier_cuts(g: &MultiGraph, b: &Barrier, include_trivial: bool, out: &mut Vec<ElpCut>) {
    for &q in &b.odd_components {
        let Ok(cut) = Cut::new(g, q) else { continue };
        if (!include_trivial && cut.is_trivial()) || out.iter().any(|e| e.cut == cut) {
            continue;
        }
        out.push(ElpCut {
            cut,
            kind: ElpKind::BarrierCut,
            certificate: ElpCertificate::Barrier {
                barrier: b.clone(),
                component: q,
            },
        });
    }
}

/// Which shore of the cut is a component of `G - B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutSide {
    Shore,
    Complement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarrierCutWitness {
    pub barrier: Barrier,
    /// The odd component of `G - B` equal to one shore.
    pub component: VertexSet,
    pub side: CutSide,
    /// Set when the cut itself is trivial.
    pub trivial: bool,
}

impl BarrierCutWitness {
    pub fn validate(&self, g: &MultiGraph, x: VertexSet) -> Result<()> {
        self.barrier.validate(g)?;
        let expect = match self.side {
            CutSide::Shore => x,
            CutSide::Complement => x.complement(g.vertex_count()),
        };
        if expect != self.component || !self.barrier.odd_components.contains(&self.component) {
            return Err(Error::BadCertificate(
                "shore is not an odd component of G - B".into(),
            ));
        }
        Ok(())
    }
}

/// A barrier certifying `∂(X)` as a barrier-cut, if one exists.
///
/// `G[X]` is a component of `G - B` iff `G[X]` is connected and
/// `N(X) ⊆ B ⊆ X̄`, so only those `B` are tried (smallest first).
pub fn is_barrier_cut(g: &MultiGraph, x: VertexSet) -> Result<Option<BarrierCutWitness>> {
    let cut = Cut::new(g, x)?;
    let n = g.vertex_count();
    if cut.is_trivial() {
        // only B = N(v) for the singleton shore
        let (side, q) = if x.len() == 1 {
            (CutSide::Shore, x)
        } else {
            (CutSide::Complement, x.complement(n))
        };
        return Ok(barrier_at(g, g.neighborhood(q)).map(|barrier| BarrierCutWitness {
            barrier,
            component: q,
            side,
            trivial: true,
        }));
    }
    for (side, q) in [(CutSide::Shore, x), (CutSide::Complement, x.complement(n))] {
        if q.len() % 2 == 0 || !g.is_connected_within(q) {
            continue;
        }
        let forced = g.neighborhood(q);
        let free = q.complement(n).difference(forced);
        let mut extras: Vec<VertexSet> = subsets(free).collect();
        extras.sort_by(VertexSet::cmp_size_lex);
        for t in extras {
            let b = forced.union(t);
            if b.is_empty() {
                continue;
            }
            if let Some(barrier) = barrier_at(g, b) {
                return Ok(Some(BarrierCutWitness {
                    barrier,
                    component: q,
                    side,
                    trivial: false,
                }));
            }
        }
    }
    Ok(None)
}

fn two_separation_at(g: &MultiGraph, pair: VertexSet) -> Option<TwoSeparation> {
    if pair.len() != 2 || !pair.is_subset(g.vertex_set()) {
        return None;
    }
    let comps = g.components_within(g.vertex_set().difference(pair));
    (comps.len() >= 2 && comps.iter().all(|c| c.len() % 2 == 0)).then(|| TwoSeparation {
        pair,
        components: comps,
    })
}

pub fn is_two_separation(g: &MultiGraph, s: VertexSet) -> bool {
    two_separation_at(g, s).is_some()
}

/// All 2-separations, ordered lexicographically by pair.
pub fn two_separations(g: &MultiGraph) -> Vec<TwoSeparation> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if let Some(s) = two_separation_at(g, VertexSet::from([u, v])) {
                out.push(s);
            }
        }
    }
    out
}

/// The 2-separation cuts associated with `s`, one per distinct shore pair.
pub fn two_separation_cuts(g: &MultiGraph, s: &TwoSeparation) -> Vec<ElpCut> {
    let (u, v) = s.ends();
    let k = s.components.len();
    let mut out: Vec<ElpCut> = Vec::new();
    // ordered groupings: every nonempty proper subset of the components
    for mask in 1u64..(1 << k) - 1 {
        let group = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .fold(VertexSet::EMPTY, |a, i| a.union(s.components[i]));
        for w in [u, v] {
            let cut = Cut::new(g, group.with(w)).expect("proper shore");
            if out.iter().any(|e| e.cut == cut) {
                continue;
            }
            out.push(ElpCut {
                cut,
                kind: ElpKind::TwoSeparationCut,
                certificate: ElpCertificate::TwoSeparation {
                    separation: s.clone(),
                    group,
                    vertex: w,
                },
            });
        }
    }
    out
}

/// Every non-trivial ELP-cut of `g`: barrier-cuts first, then 2-separation cuts.
pub fn all_nontrivial_elp_cuts(g: &MultiGraph) -> Result<Vec<ElpCut>> {
    let mut out = barrier_cuts(g)?;
    for s in two_separations(g) {
        for c in two_separation_cuts(g, &s) {
            if !out.iter().any(|e| e.cut == c.cut) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// `C`-sheltered: contained in one shore of `C`.
pub fn is_sheltered(b: VertexSet, cut: &Cut) -> bool {
    b.is_subset(cut.shore()) || b.is_subset(cut.other_shore())
}

/// `ELP_G(C)`: non-trivial barrier-cuts certified by a `C`-sheltered non-trivial
/// barrier, plus 2-separation cuts laminar with `C`, deduplicated by shore pair.
pub fn elp_set(g: &MultiGraph, c: &Cut) -> Result<Vec<ElpCut>> {
    let c = c.rebind(g)?;
    if c.is_trivial() {
        return Err(Error::TrivialCut);
    }
    let mut out: Vec<ElpCut> = Vec::new();
    for b in enumerate_nontrivial_barriers(g)? {
        if is_sheltered(b.vertices, &c) {
            push_barrier_cuts(g, &b, false, &mut out);
        }
    }
    debug_assert!(out.iter().all(|e| !e.cut.crosses(&c).unwrap()));
    for s in two_separations(g) {
        for e in two_separation_cuts(g, &s) {
            if !e.cut.crosses(&c)? && !out.iter().any(|o| o.cut == e.cut) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// Transfers a barrier or 2-separation of `H = G/(X̄→x̄)` back to `G`, where
/// `∂(X)` is a 2-separation cut for `{u1, u2}` with `u2 ∈ X̄`.
///
/// `s_h` is given in positions of `h`; the result is in positions of `g`.
/// Vertices other than `x̄` are matched through their identities.
pub fn lift_from_contraction(
    g: &MultiGraph,
    h: &MultiGraph,
    x_bar: usize,
    u2: usize,
    s_h: VertexSet,
) -> Result<VertexSet> {
    if s_h.is_empty() || !s_h.is_subset(h.vertex_set()) {
        return Err(Error::BadCertificate(format!("{s_h:?} is not a vertex set of H")));
    }
    let barrier = g_barrier_kind(h, s_h);
    let separation = is_two_separation(h, s_h);
    if !barrier && !separation {
        return Err(Error::BadCertificate(format!(
            "{s_h:?} is neither a barrier nor a 2-separation of H"
        )));
    }
    let mut lifted = VertexSet::EMPTY;
    for w in s_h {
        let target = if w == x_bar {
            u2
        } else {
            g.position_of_id(h.vertex(w).id).ok_or_else(|| {
                Error::BadCertificate(format!("vertex {} of H has no counterpart in G", h.label(w)))
            })?
        };
        lifted.insert(target);
    }
    Ok(lifted)
}

fn g_barrier_kind(h: &MultiGraph, s: VertexSet) -> bool {
    h.odd_components(s) == s.len()
}

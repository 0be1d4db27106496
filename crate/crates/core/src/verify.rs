//! Corpus sweeps that check the structural theorems on every graph and
//! report counterexample candidates.

use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::corpus::edge_splice;
use crate::decomp::{brick_number, decompose, Strategy};
use crate::elp::{
    all_nontrivial_elp_cuts, elp_set, enumerate_nontrivial_barriers, is_barrier_cut,
    is_two_separation, lift_from_contraction, two_separation_cuts, two_separations, ElpCut,
    TwoSeparation,
};
use crate::error::{Error, Result};
use crate::graph::{subsets, Cut, MultiGraph, VertexSet};
use crate::gscut::{
    classify_unchecked, is_essential_gs_cut, is_gs_cut, SearchLimits, TightCutClassification,
};
use crate::matching::{
    is_bicritical, is_matching_covered, odd_shores, tight_by_enumeration, tight_cuts_unchecked,
    tight_pairwise,
};

/// A family of statements checked graph by graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// A graph with a non-trivial tight cut has a non-trivial barrier or a
    /// 2-separation.
    ElpExistence,
    /// Every non-trivial tight cut `C` has `|ELP_G(C)| ≥ 1`.
    LaminarElp,
    /// Every non-trivial tight cut is a barrier-cut or an essential GS-cut.
    Classification,
    /// Every non-trivial GS-cut `C` has `|ELP_G(C)| ≥ 2`.
    GsLaminarPair,
    /// The same bound, restricted to GS-cuts that are not themselves ELP-cuts.
    GsLaminarPairNonElp,
    /// Barrier structure, tight cut uncrossing, contraction, connectivity,
    /// lifting, splice tightness and GS tightness.
    Properties,
    /// Every certificate survives a JSON round trip and re-validates.
    Certificates,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::ElpExistence,
        Check::LaminarElp,
        Check::Classification,
        Check::GsLaminarPair,
        Check::GsLaminarPairNonElp,
        Check::Properties,
        Check::Certificates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::ElpExistence => "elp-existence",
            Check::LaminarElp => "laminar-elp",
            Check::Classification => "classification",
            Check::GsLaminarPair => "gs-laminar-pair",
            Check::GsLaminarPairNonElp => "gs-laminar-pair-non-elp",
            Check::Properties => "props",
            Check::Certificates => "certificates",
        }
    }
}

impl std::str::FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "1.1" | "elp-existence" => Check::ElpExistence,
            "1.2" | "laminar-elp" => Check::LaminarElp,
            "1.3" | "classification" => Check::Classification,
            "3.3" | "gs-laminar-pair" => Check::GsLaminarPair,
            "gs-laminar-pair-non-elp" => Check::GsLaminarPairNonElp,
            "props" | "properties" => Check::Properties,
            "certs" | "certificates" => Check::Certificates,
            other => return Err(Error::BadParameter(format!("unknown check {other:?}"))),
        })
    }
}

/// Parses a comma separated selector; `all` selects every check.
pub fn parse_checks(selector: &str) -> Result<Vec<Check>> {
    if selector.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut out: Vec<Check> = selector
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::BadParameter("empty check selector".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: Check,
    pub graph: MultiGraph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shore: Option<Vec<String>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub graphs: usize,
    /// Statements evaluated (cuts, pairs, certificates, depending on the check).
    pub instances: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub graphs: usize,
    /// Vertex count -> graphs.
    pub orders: BTreeMap<usize, usize>,
    pub outcomes: Vec<CheckOutcome>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }

    pub fn outcome(&self, check: Check) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.check == check)
    }
}

/// Running tally for one check on one graph.
struct Tally<'a> {
    check: Check,
    g: &'a MultiGraph,
    instances: usize,
    failures: Vec<Counterexample>,
}

impl<'a> Tally<'a> {
    fn new(check: Check, g: &'a MultiGraph) -> Self {
        Tally {
            check,
            g,
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, shore: Option<VertexSet>, detail: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(Counterexample {
                check: self.check,
                graph: self.g.clone(),
                shore: shore.map(|x| self.g.labels_of(x)),
                detail: detail(),
            });
        }
    }

    fn fail(&mut self, shore: Option<VertexSet>, detail: String) {
        self.record(false, shore, || detail);
    }
}

/// Runs `checks` over `graphs` on the current rayon pool. Graphs that are not
/// matching covered are skipped. Counterexamples are kept up to
/// `max_counterexamples` per check, in corpus order.
pub fn sweep(graphs: &[MultiGraph], checks: &[Check], max_counterexamples: usize) -> SweepReport {
    let graphs: Vec<&MultiGraph> = graphs.iter().filter(|g| is_matching_covered(g)).collect();
    let per_graph: Vec<Vec<(usize, Vec<Counterexample>)>> = graphs
        .par_iter()
        .map(|g| checks.iter().map(|&c| check_graph(g, c)).collect())
        .collect();
    let mut orders = BTreeMap::new();
    for g in &graphs {
        *orders.entry(g.vertex_count()).or_insert(0) += 1;
    }
    let outcomes = checks
        .iter()
        .enumerate()
        .map(|(i, &check)| {
            let mut outcome = CheckOutcome {
                check,
                graphs: graphs.len(),
                instances: 0,
                failures: 0,
                counterexamples: Vec::new(),
            };
            for results in &per_graph {
                let (count, fails) = &results[i];
                outcome.instances += count;
                outcome.failures += fails.len();
                let room = max_counterexamples.saturating_sub(outcome.counterexamples.len());
                outcome.counterexamples.extend(fails.iter().take(room).cloned());
            }
            outcome
        })
        .collect();
    SweepReport {
        graphs: graphs.len(),
        orders,
        outcomes,
    }
}

/// One check on one matching covered graph: instances examined and failures.
pub fn check_graph(g: &MultiGraph, check: Check) -> (usize, Vec<Counterexample>) {
    let mut t = Tally::new(check, g);
    let outcome = match check {
        Check::ElpExistence => elp_existence(&mut t),
        Check::LaminarElp => laminar_elp(&mut t),
        Check::Classification => classification(&mut t),
        Check::GsLaminarPair => gs_laminar_pair(&mut t, false),
        Check::GsLaminarPairNonElp => gs_laminar_pair(&mut t, true),
        Check::Properties => properties(&mut t),
        Check::Certificates => certificates(&mut t),
    };
    if let Err(e) = outcome {
        t.fail(None, format!("error: {e}"));
    }
    (t.instances, t.failures)
}

fn elp_existence(t: &mut Tally) -> Result<()> {
    let g = t.g;
    if tight_cuts_unchecked(g, true).is_empty() {
        return Ok(());
    }
    let barriers = enumerate_nontrivial_barriers(g)?.len();
    let separations = two_separations(g).len();
    t.record(barriers + separations > 0, None, || {
        "non-trivial tight cut but no non-trivial barrier or 2-separation".into()
    });
    Ok(())
}

fn laminar_elp(t: &mut Tally) -> Result<()> {
    let g = t.g;
    for c in tight_cuts_unchecked(g, true) {
        let size = elp_set(g, &c)?.len();
        t.record(size >= 1, Some(c.shore()), || "ELP set is empty".into());
    }
    Ok(())
}

fn classification(t: &mut Tally) -> Result<()> {
    let g = t.g;
    for c in tight_cuts_unchecked(g, true) {
        let verdict = classify_unchecked(g, c.shore(), SearchLimits::default())?;
        match &verdict {
            TightCutClassification::Unclassified(transcript) => {
                let detail = serde_json::to_string(transcript).unwrap_or_default();
                t.fail(Some(c.shore()), format!("unclassified: {detail}"));
            }
            v => {
                let checked = v.validate(g, c.shore());
                t.record(checked.is_ok(), Some(c.shore()), || format!("{checked:?}"));
            }
        }
    }
    Ok(())
}

fn gs_laminar_pair(t: &mut Tally, skip_elp_cuts: bool) -> Result<()> {
    let g = t.g;
    let elp_cuts: Vec<Cut> = if skip_elp_cuts {
        all_nontrivial_elp_cuts(g)?.into_iter().map(|e| e.cut).collect()
    } else {
        Vec::new()
    };
    for x in odd_shores(g.vertex_count(), true) {
        if is_gs_cut(g, x)?.is_none() {
            continue;
        }
        let cut = Cut::new(g, x)?;
        if elp_cuts.contains(&cut) {
            continue;
        }
        let size = elp_set(g, &cut)?.len();
        t.record(size >= 2, Some(x), || format!("ELP set has {size} member(s)"));
    }
    Ok(())
}

fn properties(t: &mut Tally) -> Result<()> {
    let g = t.g;
    let n = g.vertex_count();
    // barrier structure
    for b in enumerate_nontrivial_barriers(g)? {
        let even = g
            .removed_components(b.vertices)
            .components
            .iter()
            .any(|c| c.len() % 2 == 0);
        t.record(g.is_independent(b.vertices) && !even, Some(b.vertices), || {
            "non-trivial barrier spans an edge or leaves an even component".into()
        });
    }
    let tight = tight_cuts_unchecked(g, false);
    // uncrossing of tight cuts
    for (i, a) in tight.iter().enumerate() {
        for b in &tight[i + 1..] {
            for y in [b.shore(), b.other_shore()] {
                let x = a.shore();
                if x.intersection(y).len() % 2 == 0 {
                    continue;
                }
                let meet = x.intersection(y);
                let join = x.union(y);
                let stray = g.edges_between(x.difference(y), y.difference(x));
                let ok = tight_pairwise(g, meet).tight
                    && tight_pairwise(g, join).tight
                    && stray.is_empty();
                t.record(ok, Some(x), || {
                    format!("uncrossing fails with {:?}", g.labels_of(y))
                });
            }
        }
    }
    for c in tight.iter().filter(|c| !c.is_trivial()) {
        let x = c.shore();
        // both shores induce connected subgraphs
        t.record(
            g.is_connected_within(x) && g.is_connected_within(c.other_shore()),
            Some(x),
            || "a tight cut shore is disconnected".into(),
        );
        // contractions are matching covered and carry tightness both ways
        let (a, b) = g.cut_contractions(x)?;
        for side in [a, b] {
            let h = &side.graph;
            t.record(is_matching_covered(h), Some(x), || {
                "a tight cut contraction is not matching covered".into()
            });
            let mut preimage = vec![VertexSet::EMPTY; h.vertex_count()];
            for (v, &w) in side.map.iter().enumerate() {
                preimage[w].insert(v);
            }
            for s in odd_shores(h.vertex_count(), false) {
                let back = s.iter().fold(VertexSet::EMPTY, |acc, w| acc.union(preimage[w]));
                let here = tight_pairwise(h, s).tight;
                let there = tight_pairwise(g, back).tight;
                t.record(here == there, Some(x), || {
                    format!(
                        "shore {:?} of a contraction is tight there: {here}, in G: {there}",
                        h.labels_of(s)
                    )
                });
            }
        }
    }
    // ELP-cuts are tight
    for e in all_nontrivial_elp_cuts(g)? {
        t.record(tight_pairwise(g, e.cut.shore()).tight, Some(e.cut.shore()), || {
            "an ELP-cut is not tight".into()
        });
    }
    // lifting barriers and 2-separations out of a 2-separation cut contraction
    for s in two_separations(g) {
        for e in two_separation_cuts(g, &s) {
            lifting(t, &s, &e)?;
        }
    }
    splice_tightness(t)?;
    // GS-cuts and essential GS-cuts are tight
    for x in odd_shores(n, true) {
        let gs = is_gs_cut(g, x)?.is_some();
        let essential = gs || is_essential_gs_cut(g, x, SearchLimits::default())?.is_some();
        if essential {
            t.record(tight_pairwise(g, x).tight, Some(x), || {
                format!("accepted (GS: {gs}) but not tight")
            });
        }
    }
    Ok(())
}

fn lifting(t: &mut Tally, s: &TwoSeparation, e: &ElpCut) -> Result<()> {
    let g = t.g;
    let x = e.cut.shore();
    let (u1, u2) = match s.pair.intersection(x).first() {
        Some(u) if u == s.ends().0 => (s.ends().0, s.ends().1),
        _ => (s.ends().1, s.ends().0),
    };
    debug_assert!(x.contains(u1));
    let h = g.contract_with_map(x.complement(g.vertex_count()), None)?;
    let x_bar = h.vertex;
    let h = h.graph;
    let mut candidates: Vec<(VertexSet, bool)> = enumerate_nontrivial_barriers(&h)?
        .into_iter()
        .map(|b| (b.vertices, true))
        .collect();
    candidates.extend(two_separations(&h).into_iter().map(|f| (f.pair, false)));
    for (s_h, barrier) in candidates {
        let lifted = lift_from_contraction(g, &h, x_bar, u2, s_h)?;
        let ok = if barrier {
            g.odd_components(lifted) == lifted.len()
        } else {
            is_two_separation(g, lifted)
        };
        t.record(ok, Some(x), || {
            format!(
                "{} {:?} of the contraction lifts to {:?}, which is not one in G",
                if barrier { "barrier" } else { "2-separation" },
                h.labels_of(s_h),
                g.labels_of(lifted)
            )
        });
    }
    Ok(())
}

/// For each 2-separation `{x, y}` with `xy` an edge, split `G` into the two
/// sides and compare tightness of every admissible pair of shores.
fn splice_tightness(t: &mut Tally) -> Result<()> {
    let g = t.g;
    for s in two_separations(g) {
        let (x, y) = s.ends();
        if !g.adjacent(x, y) {
            continue;
        }
        let k = s.components.len();
        // unordered split of the components: the first one always goes left
        for mask in (1u64..(1 << k) - 1).filter(|m| m & 1 == 1) {
            let left = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .fold(VertexSet::EMPTY, |a, i| a.union(s.components[i]));
            let right = g.vertex_set().difference(left.union(s.pair));
            let sides = [left.union(s.pair), right.union(s.pair)];
            let tight_sides: Vec<Vec<(VertexSet, bool)>> = sides
                .iter()
                .map(|&side| {
                    let h = g.induced(side);
                    let members: Vec<usize> = side.iter().collect();
                    subsets(side.difference(s.pair))
                        .map(|r| r.with(x))
                        .filter(|r| r.len() % 2 == 1)
                        .map(|r| {
                            let local: VertexSet = members
                                .iter()
                                .enumerate()
                                .filter(|(_, v)| r.contains(**v))
                                .map(|(i, _)| i)
                                .collect();
                            (r, tight_pairwise(&h, local).tight)
                        })
                        .collect()
                })
                .collect();
            for &(x1, t1) in &tight_sides[0] {
                for &(x2, t2) in &tight_sides[1] {
                    let combined = tight_pairwise(g, x1.union(x2)).tight;
                    t.record(combined == (t1 && t2), Some(x1.union(x2)), || {
                        format!("sides tight: {t1}, {t2}; combined tight: {combined}")
                    });
                }
            }
        }
    }
    Ok(())
}

fn round_trip<T: Serialize + DeserializeOwned>(value: &T) -> Result<T> {
    let text = serde_json::to_string(value).map_err(|e| Error::Parse(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

fn certificates(t: &mut Tally) -> Result<()> {
    let g = t.g;
    for b in enumerate_nontrivial_barriers(g)? {
        let back = round_trip(&b)?;
        let checked = back.validate(g);
        t.record(checked.is_ok(), Some(b.vertices), || format!("barrier: {checked:?}"));
    }
    for s in two_separations(g) {
        let back = round_trip(&s)?;
        let checked = back.validate(g);
        t.record(checked.is_ok(), Some(s.pair), || format!("2-separation: {checked:?}"));
    }
    for e in all_nontrivial_elp_cuts(g)? {
        let back = round_trip(&e)?;
        let checked = back.validate(g);
        t.record(checked.is_ok(), Some(e.cut.shore()), || format!("ELP-cut: {checked:?}"));
    }
    for x in odd_shores(g.vertex_count(), false) {
        if let Some(w) = is_barrier_cut(g, x)? {
            let checked = round_trip(&w)?.validate(g, x);
            t.record(checked.is_ok(), Some(x), || format!("barrier-cut: {checked:?}"));
        }
    }
    for x in odd_shores(g.vertex_count(), true) {
        if let Some(c) = is_gs_cut(g, x)? {
            let checked = round_trip(&c)?.validate(g);
            t.record(checked.is_ok(), Some(x), || format!("GS-cut: {checked:?}"));
        }
        if let Some(c) = is_essential_gs_cut(g, x, SearchLimits::default())? {
            let checked = round_trip(&c)?.validate(g);
            t.record(checked.is_ok(), Some(x), || format!("essential GS-cut: {checked:?}"));
            t.record(tight_by_enumeration(g, x).tight, Some(x), || {
                "essential GS-cut is not tight".into()
            });
        }
    }
    for c in tight_cuts_unchecked(g, true) {
        let v = classify_unchecked(g, c.shore(), SearchLimits::default())?;
        let checked = round_trip(&v)?.validate(g, c.shore());
        t.record(checked.is_ok(), Some(c.shore()), || format!("classification: {checked:?}"));
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleAgreement {
    pub compared: usize,
    pub disagreements: Vec<(MultiGraph, VertexSet)>,
}

/// Compares the pairwise tightness test with full enumeration on every odd
/// shore of every graph.
pub fn oracle_exhaustive(graphs: &[MultiGraph]) -> OracleAgreement {
    graphs
        .par_iter()
        .map(|g| {
            let mut out = OracleAgreement::default();
            for x in odd_shores(g.vertex_count(), false) {
                out.compared += 1;
                if tight_pairwise(g, x).tight != tight_by_enumeration(g, x).tight {
                    out.disagreements.push((g.clone(), x));
                }
            }
            out
        })
        .reduce(OracleAgreement::default, merge_agreement)
}

/// The same comparison on `samples` seeded random (graph, odd shore) pairs.
pub fn oracle_sampled(graphs: &[MultiGraph], samples: usize, seed: u64) -> OracleAgreement {
    if graphs.is_empty() {
        return OracleAgreement::default();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<(usize, VertexSet)> = (0..samples)
        .map(|_| {
            let i = rng.random_range(0..graphs.len());
            let n = graphs[i].vertex_count();
            (i, random_odd_shore(&mut rng, n))
        })
        .collect();
    picks
        .par_iter()
        .map(|&(i, x)| {
            let g = &graphs[i];
            let agree = tight_pairwise(g, x).tight == tight_by_enumeration(g, x).tight;
            OracleAgreement {
                compared: 1,
                disagreements: if agree { Vec::new() } else { vec![(g.clone(), x)] },
            }
        })
        .reduce(OracleAgreement::default, merge_agreement)
}

fn merge_agreement(mut a: OracleAgreement, b: OracleAgreement) -> OracleAgreement {
    a.compared += b.compared;
    a.disagreements.extend(b.disagreements);
    a
}

/// Each vertex kept with probability 1/2, redrawn until the set is odd and proper.
fn random_odd_shore(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    loop {
        let bits = rng.random::<u64>() & VertexSet::full(n).bits();
        let x = VertexSet::from_bits(bits);
        if x.len() % 2 == 1 && x.len() < n {
            return x;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceOutcome {
    pub brick_numbers: Vec<usize>,
    pub runs: usize,
}

impl InvarianceOutcome {
    pub fn agrees(&self) -> bool {
        self.brick_numbers.len() == 1
    }
}

/// Decomposes `g` with `seeds` seeds under each strategy and collects the
/// distinct brick numbers.
pub fn brick_number_invariance(
    g: &MultiGraph,
    seeds: impl IntoIterator<Item = u64> + Clone,
    strategies: &[Strategy],
) -> Result<InvarianceOutcome> {
    let mut found = Vec::new();
    let mut runs = 0;
    for &strategy in strategies {
        for seed in seeds.clone() {
            let b = brick_number(&decompose(g, strategy, seed)?);
            runs += 1;
            if !found.contains(&b) {
                found.push(b);
            }
        }
    }
    found.sort_unstable();
    Ok(InvarianceOutcome {
        brick_numbers: found,
        runs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpliceTrial {
    pub left: MultiGraph,
    pub right: MultiGraph,
    pub tight: (bool, bool, bool),
    pub bicritical: bool,
}

impl SpliceTrial {
    pub fn consistent(&self) -> bool {
        let (a, b, c) = self.tight;
        c == (a && b) && self.bicritical
    }
}

/// Seeded random edge splices of bicritical pairs drawn from `pool`, each
/// with a random admissible pair of shores. Shores are drawn so that about
/// half of the trials use tight cuts on both sides.
pub fn random_splices(pool: &[MultiGraph], count: usize, seed: u64) -> Result<Vec<SpliceTrial>> {
    let bicritical: Vec<&MultiGraph> = pool
        .iter()
        .filter(|g| g.vertex_count() >= 4 && is_bicritical(g).unwrap_or(false))
        .collect();
    if bicritical.is_empty() {
        return Err(Error::BadParameter("no bicritical graph in the pool".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut plan = Vec::with_capacity(count);
    for _ in 0..count {
        let g1 = *bicritical.choose(&mut rng).expect("nonempty");
        let g2 = *bicritical.choose(&mut rng).expect("nonempty");
        let e1 = g1.edge(rng.random_range(0..g1.edge_count()));
        let e2 = g2.edge(rng.random_range(0..g2.edge_count()));
        let (x1, y1) = if rng.random() { (e1.u, e1.v) } else { (e1.v, e1.u) };
        let (x2, y2) = if rng.random() { (e2.u, e2.v) } else { (e2.v, e2.u) };
        let prefer_tight = rng.random::<bool>();
        let s1 = pick_side_shore(&mut rng, g1, x1, y1, prefer_tight);
        let s2 = pick_side_shore(&mut rng, g2, x2, y2, prefer_tight);
        plan.push((g1, g2, (x1, x2), (y1, y2), s1, s2));
    }
    plan.into_par_iter()
        .map(|(g1, g2, x, y, s1, s2)| {
            let tight = crate::gscut::check_splice_tightness(g1, g2, x, y, s1, s2)?;
            let spliced = edge_splice(g1, (x.0, y.0), g2, (x.1, y.1))?.graph;
            Ok(SpliceTrial {
                left: g1.clone(),
                right: g2.clone(),
                tight,
                bicritical: is_bicritical(&spliced)?,
            })
        })
        .collect()
}

/// An odd shore containing `x` and avoiding `y`; tight ones are preferred
/// when asked (in a bicritical graph these are mostly the trivial `{x}`).
fn pick_side_shore(
    rng: &mut ChaCha8Rng,
    g: &MultiGraph,
    x: usize,
    y: usize,
    prefer_tight: bool,
) -> VertexSet {
    let rest = g.vertex_set().without(x).without(y);
    let shores: Vec<VertexSet> = subsets(rest)
        .map(|r| r.with(x))
        .filter(|s| s.len() % 2 == 1)
        .collect();
    if prefer_tight {
        let tight: Vec<VertexSet> = shores
            .iter()
            .copied()
            .filter(|&s| tight_pairwise(g, s).tight)
            .collect();
        if let Some(&s) = tight.choose(rng) {
            return s;
        }
    }
    *shores.choose(rng).expect("{x} is always a candidate")
}

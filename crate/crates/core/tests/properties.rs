use proptest::prelude::*;
use proptest::test_runner::Config;

use tightcut::graph::{cuts_cross, parse_graph6, subsets, to_graph6, Cut, MultiGraph, VertexSet};
use tightcut::matching::{
    has_perfect_matching, is_matching_covered, maximum_matching_on, tight_by_enumeration,
    tight_pairwise, tutte_condition,
};

fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            MultiGraph::new(n, edges).unwrap()
        })
    })
}

fn simple_graph(max_n: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |keep| {
            let all = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges: Vec<(usize, usize)> =
                all.zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
            MultiGraph::new(n, edges).unwrap()
        })
    })
}

fn proper_shore(g: &MultiGraph, bits: u64) -> Option<VertexSet> {
    let x = VertexSet::from_bits(bits & g.vertex_set().bits());
    (!x.is_empty() && x != g.vertex_set()).then_some(x)
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

proptest! {
    #![proptest_config(Config::with_cases(256))]

    #[test]
    fn cut_edges_agree_for_both_shores(g in multigraph(10, 24), bits in any::<u64>()) {
        if let Some(x) = proper_shore(&g, bits) {
            let a = sorted(g.cut_edges(x).unwrap());
            let b = sorted(g.cut_edges(x.complement(g.vertex_count())).unwrap());
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn crossing_is_symmetric_and_irreflexive(g in multigraph(10, 0), a in any::<u64>(), b in any::<u64>()) {
        if let (Some(x), Some(y)) = (proper_shore(&g, a), proper_shore(&g, b)) {
            let cx = Cut::new(&g, x).unwrap();
            let cy = Cut::new(&g, y).unwrap();
            prop_assert_eq!(cuts_cross(&cx, &cy).unwrap(), cuts_cross(&cy, &cx).unwrap());
            prop_assert!(!cuts_cross(&cx, &cx).unwrap());
            let cxb = Cut::new(&g, x.complement(g.vertex_count())).unwrap();
            prop_assert_eq!(&cx, &cxb);
            prop_assert!(!cuts_cross(&cx, &cxb).unwrap());
        }
    }

    #[test]
    fn contraction_bookkeeping(g in multigraph(10, 24), bits in any::<u64>()) {
        let Some(x) = proper_shore(&g, bits) else { return Ok(()) };
        let c = g.contract_with_map(x, None).unwrap();
        let h = &c.graph;
        prop_assert_eq!(h.vertex_count(), g.vertex_count() - x.len() + 1);
        let inside = g.edges().iter().filter(|e| e.ends().is_subset(x)).count();
        prop_assert_eq!(h.edge_count(), g.edge_count() - inside);
        for w in x.complement(g.vertex_count()) {
            let into_x = g.edges_between(x, VertexSet::singleton(w)).len();
            prop_assert_eq!(h.multiplicity(c.vertex, c.map[w]), into_x);
        }
        prop_assert_eq!(&h.vertex(c.vertex).replaces.len(), &x.len());
    }

    #[test]
    fn removing_nothing_gives_components(g in multigraph(10, 16)) {
        let report = g.removed_components(VertexSet::EMPTY);
        prop_assert_eq!(report.components, g.components_within(g.vertex_set()));
    }

    #[test]
    fn tutte_and_blossom_agree(g in multigraph(10, 20)) {
        let mate = maximum_matching_on(&g, g.vertex_set());
        let covers = mate.iter().all(|&m| m != usize::MAX);
        prop_assert_eq!(has_perfect_matching(&g), covers);
        prop_assert_eq!(tutte_condition(&g).unwrap(), covers);
    }

    #[test]
    fn tightness_oracles_agree(g in multigraph(10, 24), bits in any::<u64>()) {
        let Some(x) = proper_shore(&g, bits) else { return Ok(()) };
        if x.len() % 2 == 1 {
            let fast = tight_pairwise(&g, x);
            let slow = tight_by_enumeration(&g, x);
            prop_assert_eq!(fast.tight, slow.tight);
            if let Some(m) = fast.witness {
                prop_assert!(m.is_perfect(&g));
                prop_assert!(m.crossing_count(&g, x) != 1);
            }
        }
    }

    #[test]
    fn graph6_round_trip(g in simple_graph(12)) {
        let text = to_graph6(&g).unwrap();
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn json_round_trip(g in multigraph(10, 20)) {
        let text = serde_json::to_string(&g).unwrap();
        let back: MultiGraph = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn tight_cut_shores_are_connected(g in simple_graph(8), bits in any::<u64>()) {
        if !is_matching_covered(&g) {
            return Ok(());
        }
        let Some(x) = proper_shore(&g, bits) else { return Ok(()) };
        if x.len() % 2 == 1 && tight_pairwise(&g, x).tight {
            prop_assert!(g.is_connected_within(x));
            prop_assert!(g.is_connected_within(x.complement(g.vertex_count())));
            let (a, b) = g.cut_contractions(x).unwrap();
            prop_assert!(is_matching_covered(&a.graph) && is_matching_covered(&b.graph));
        }
    }
}

#[test]
fn subsets_cover_the_power_set() {
    let u = VertexSet::from([1, 4, 6]);
    let all: Vec<VertexSet> = subsets(u).collect();
    assert_eq!(all.len(), 8);
    assert!(all.iter().all(|s| s.is_subset(u)));
}

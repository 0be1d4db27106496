//! Tight cut decomposition into bricks and braces.

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::elp::all_nontrivial_elp_cuts;
use crate::error::{Error, Result};
use crate::graph::{Cut, MultiGraph, VertexSet};
use crate::matching::{is_matching_covered, odd_shores, tight_pairwise};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Scan odd shores in a seeded random order.
    Exhaustive,
    /// Pick a seeded non-trivial barrier-cut or 2-separation cut.
    ElpFirst,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "elp-first" => Ok(Strategy::ElpFirst),
            _ => Err(Error::BadParameter(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeafKind {
    Brick,
    Brace,
}

/// Finds a non-trivial tight cut, or `None` when `g` is a brick or a brace.
pub fn find_nontrivial_tight_cut(
    g: &MultiGraph,
    strategy: Strategy,
    seed: u64,
) -> Result<Option<Cut>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match strategy {
        Strategy::Exhaustive => {
            let mut shores: Vec<VertexSet> = odd_shores(g.vertex_count(), true).collect();
            shores.shuffle(&mut rng);
            Ok(shores
                .into_iter()
                .find(|&x| tight_pairwise(g, x).tight)
                .map(|x| Cut::new(g, x).expect("proper shore")))
        }
        Strategy::ElpFirst => {
            let cuts = all_nontrivial_elp_cuts(g)?;
            if cuts.is_empty() {
                return Ok(None);
            }
            let pick = rng.random_range(0..cuts.len());
            Ok(Some(cuts[pick].cut))
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionTree {
    pub graph: MultiGraph,
    /// Shore of the splitting cut; `children[0]` contracts it, `children[1]`
    /// contracts its complement.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shore: Option<VertexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shore_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<DecompositionTree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<LeafKind>,
}

impl DecompositionTree {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn cut(&self) -> Option<Cut> {
        self.shore.map(|x| Cut::new(&self.graph, x).expect("stored shore"))
    }

    pub fn leaves(&self) -> Vec<&DecompositionTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if t.is_leaf() {
                out.push(t);
            } else {
                stack.extend(t.children.iter().rev());
            }
        }
        out
    }

    pub fn internal_nodes(&self) -> Vec<&DecompositionTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if !t.is_leaf() {
                out.push(t);
                stack.extend(t.children.iter().rev());
            }
        }
        out
    }
}

pub fn brick_number(tree: &DecompositionTree) -> usize {
    tree.leaves()
        .iter()
        .filter(|l| l.kind == Some(LeafKind::Brick))
        .count()
}

fn child_seed(seed: u64, side: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ side.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.random()
}

/// Splits `g` along non-trivial tight cuts until every piece is a brick or brace.
pub fn decompose(g: &MultiGraph, strategy: Strategy, seed: u64) -> Result<DecompositionTree> {
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered);
    }
    decompose_rec(g.clone(), strategy, seed)
}

fn decompose_rec(g: MultiGraph, strategy: Strategy, seed: u64) -> Result<DecompositionTree> {
    let Some(cut) = find_nontrivial_tight_cut(&g, strategy, seed)? else {
        let kind = if g.is_bipartite() {
            LeafKind::Brace
        } else {
            LeafKind::Brick
        };
        return Ok(DecompositionTree {
            graph: g,
            shore: None,
            shore_labels: None,
            children: Vec::new(),
            kind: Some(kind),
        });
    };
    let x = cut.shore();
    let (a, b) = g.cut_contractions(x)?;
    let (left, right) = rayon::join(
        || decompose_rec(a.graph, strategy, child_seed(seed, 1)),
        || decompose_rec(b.graph, strategy, child_seed(seed, 2)),
    );
    Ok(DecompositionTree {
        shore_labels: Some(g.labels_of(x)),
        graph: g,
        shore: Some(x),
        children: vec![left?, right?],
        kind: None,
    })
}

fn has_nontrivial_tight_cut(g: &MultiGraph) -> bool {
    odd_shores(g.vertex_count(), true).any(|x| tight_pairwise(g, x).tight)
}

/// Matching covered, non-bipartite, no non-trivial tight cut.
pub fn is_brick(g: &MultiGraph) -> bool {
    is_matching_covered(g) && !g.is_bipartite() && !has_nontrivial_tight_cut(g)
}

/// Matching covered, bipartite, no non-trivial tight cut.
pub fn is_brace(g: &MultiGraph) -> bool {
    is_matching_covered(g) && g.is_bipartite() && !has_nontrivial_tight_cut(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{gen_h_n, gen_named};
    use crate::matching::tight_by_enumeration;

    #[test]
    fn find_cut_examples() {
        for s in [Strategy::Exhaustive, Strategy::ElpFirst] {
            assert!(find_nontrivial_tight_cut(&gen_named("k4").unwrap(), s, 1)
                .unwrap()
                .is_none());
            assert!(find_nontrivial_tight_cut(&gen_named("petersen").unwrap(), s, 1)
                .unwrap()
                .is_none());
            let c6 = gen_named("c6").unwrap();
            let cut = find_nontrivial_tight_cut(&c6, s, 7).unwrap().unwrap();
            assert_eq!(cut.shore().len(), 3);
            assert!(tight_by_enumeration(&c6, cut.shore()).tight);
        }
    }

    #[test]
    fn decompose_examples() {
        let t = decompose(&gen_named("k4").unwrap(), Strategy::Exhaustive, 0).unwrap();
        assert!(t.is_leaf());
        assert_eq!(t.kind, Some(LeafKind::Brick));
        assert_eq!(brick_number(&t), 1);
        let t = decompose(&gen_named("c6").unwrap(), Strategy::ElpFirst, 3).unwrap();
        assert!(!t.is_leaf());
        assert!(t.leaves().iter().all(|l| l.kind == Some(LeafKind::Brace)));
        assert_eq!(brick_number(&t), 0);
        let t = decompose(&gen_h_n(1).unwrap(), Strategy::Exhaustive, 11).unwrap();
        assert_eq!(brick_number(&t), 2);
        assert_eq!(t.leaves().len(), 2);
        let path = crate::graph::build_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(
            decompose(&path, Strategy::Exhaustive, 0).unwrap_err(),
            Error::NotMatchingCovered
        );
    }

    #[test]
    fn h_n_brick_number() {
        for n in 1..=3 {
            let g = gen_h_n(n).unwrap();
            for strategy in [Strategy::Exhaustive, Strategy::ElpFirst] {
                let t = decompose(&g, strategy, 5).unwrap();
                assert_eq!(brick_number(&t), 2 * n, "n = {n}, {strategy:?}");
            }
        }
    }

    #[test]
    fn brick_and_brace_predicates() {
        assert!(is_brick(&gen_named("k4").unwrap()));
        assert!(is_brace(&gen_named("k33").unwrap()));
        assert!(is_brick(&gen_named("petersen").unwrap()));
        assert!(is_brace(&gen_named("c4").unwrap()));
        let c6 = gen_named("c6").unwrap();
        assert!(!is_brick(&c6) && !is_brace(&c6));
    }

    #[test]
    fn tree_round_trips_through_json() {
        let t = decompose(&gen_named("c6").unwrap(), Strategy::Exhaustive, 2).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        let back: DecompositionTree = serde_json::from_str(&text).unwrap();
        assert_eq!(brick_number(&back), 0);
        assert_eq!(back.leaves().len(), t.leaves().len());
        assert_eq!(back.shore, t.shore);
    }
}

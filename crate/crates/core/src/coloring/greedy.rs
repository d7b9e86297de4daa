//! Greedy list edge coloring.
//!
//! Edges are processed in a caller-supplied order and each takes the smallest
//! color of its list not already held by an intersecting colored edge. When
//! every list is longer than the number of earlier neighbors of its edge the
//! procedure cannot get stuck; with lists of size `1 + max R(e)` that holds
//! for every order.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Color, EdgeColoring, ListAssignment};
use crate::derived::clique_ranks;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// How to order edges for greedy coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeOrder {
    Input,
    /// Decreasing clique rank, ties by index.
    DecreasingCliqueRank,
    Random { seed: u64 },
}

pub fn edge_order(h: &Hypergraph, order: EdgeOrder) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..h.m()).collect();
    match order {
        EdgeOrder::Input => {}
        EdgeOrder::DecreasingCliqueRank => {
            let r = clique_ranks(h);
            perm.sort_by_key(|&e| std::cmp::Reverse(r[e]));
        }
        EdgeOrder::Random { seed } => {
            perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
    }
    perm
}

/// Where greedy coloring got stuck.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyFailure {
    /// Edge whose list was exhausted.
    pub edge: usize,
    /// Its full list.
    pub list: BTreeSet<Color>,
    /// Colored neighbors and their colors, covering the whole list.
    pub blocking: Vec<(usize, Color)>,
    /// Colors assigned before getting stuck.
    pub partial: EdgeColoring,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GreedyOutcome {
    Colored {
        coloring: EdgeColoring,
        /// Largest number of earlier-colored neighbors met by any edge.
        max_back_degree: usize,
    },
    Stuck(GreedyFailure),
}

impl GreedyOutcome {
    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match self {
            GreedyOutcome::Colored { coloring, .. } => Some(coloring),
            GreedyOutcome::Stuck(_) => None,
        }
    }

    pub fn is_colored(&self) -> bool {
        matches!(self, GreedyOutcome::Colored { .. })
    }
}

/// Greedy list coloring along `order`, which must be a permutation of the
/// edge indices. Every edge needs a list.
pub fn greedy_list_color(h: &Hypergraph, lists: &ListAssignment, order: &[usize]) -> Result<GreedyOutcome> {
    check_permutation(order, h.m())?;
    if let Some(&edge) = lists.lists.keys().find(|&&e| e >= h.m()) {
        return Err(Error::UnknownEdge { edge, m: h.m() });
    }
    if let Some(edge) = (0..h.m()).find(|e| lists.get(*e).is_none()) {
        return Err(Error::MissingList { edge });
    }
    let incidence = h.incidence();
    let mut colors: Vec<Option<Color>> = vec![None; h.m()];
    let mut coloring = EdgeColoring::new();
    let mut max_back_degree = 0;
    for &e in order {
        let mut neighbors: Vec<usize> = h.edges()[e]
            .iter()
            .flat_map(|&x| incidence[x].iter().copied())
            .filter(|&f| f != e && colors[f].is_some())
            .collect();
        neighbors.sort_unstable();
        neighbors.dedup();
        max_back_degree = max_back_degree.max(neighbors.len());
        let used: BTreeSet<Color> = neighbors.iter().filter_map(|&f| colors[f]).collect();
        let list = lists.get(e).expect("checked above");
        match list.iter().find(|c| !used.contains(c)) {
            Some(&c) => {
                colors[e] = Some(c);
                coloring.set(e, c);
            }
            None => {
                return Ok(GreedyOutcome::Stuck(GreedyFailure {
                    edge: e,
                    list: list.clone(),
                    blocking: neighbors
                        .iter()
                        .filter_map(|&f| colors[f].map(|c| (f, c)))
                        .filter(|(_, c)| list.contains(c))
                        .collect(),
                    partial: coloring,
                }));
            }
        }
    }
    Ok(GreedyOutcome::Colored {
        coloring,
        max_back_degree,
    })
}

/// Greedy coloring with every list equal to `{1, .., k}`.
pub fn greedy_color(h: &Hypergraph, k: usize, order: &[usize]) -> Result<GreedyOutcome> {
    if k == 0 {
        return Err(Error::InvalidParameter("palette size must be at least 1".into()));
    }
    greedy_list_color(h, &ListAssignment::uniform(h.m(), k), order)
}

fn check_permutation(order: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    for &e in order {
        if e >= m || std::mem::replace(&mut seen[e], true) {
            return Err(Error::InvalidParameter(format!(
                "edge order is not a permutation of 0..{m}"
            )));
        }
    }
    if order.len() != m {
        return Err(Error::InvalidParameter(format!(
            "edge order is not a permutation of 0..{m}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::derived::max_clique_rank;
    use crate::generators::{complete_graph, projective_plane};

    #[test]
    fn triangle_trace() {
        let k3 = complete_graph(3).unwrap();
        let out = greedy_list_color(&k3, &ListAssignment::uniform(3, 3), &[0, 1, 2]).unwrap();
        assert_eq!(out.coloring().unwrap(), &EdgeColoring::from_slice(&[1, 2, 3]));
    }

    #[test]
    fn fano_with_seven_colors_any_order() {
        let fano = projective_plane(2).unwrap();
        assert_eq!(max_clique_rank(&fano) + 1, 7);
        for seed in 0..20 {
            let order = edge_order(&fano, EdgeOrder::Random { seed });
            let out = greedy_list_color(&fano, &ListAssignment::uniform(7, 7), &order).unwrap();
            assert!(is_proper(&fano, out.coloring().unwrap()).unwrap());
        }
    }

    #[test]
    fn triangle_with_two_colors_is_stuck_at_third_edge() {
        let k3 = complete_graph(3).unwrap();
        match greedy_list_color(&k3, &ListAssignment::uniform(3, 2), &[0, 1, 2]).unwrap() {
            GreedyOutcome::Stuck(f) => {
                assert_eq!(f.edge, 2);
                assert_eq!(f.list, BTreeSet::from([1, 2]));
                assert_eq!(f.blocking, vec![(0, 1), (1, 2)]);
                assert_eq!(f.partial.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k4_orders() {
        let k4 = complete_graph(4).unwrap();
        let by_rank = edge_order(&k4, EdgeOrder::DecreasingCliqueRank);
        let five = greedy_color(&k4, 5, &by_rank).unwrap();
        let used = five.coloring().unwrap().num_colors();
        assert!((3..=5).contains(&used));
        for seed in 0..10 {
            let order = edge_order(&k4, EdgeOrder::Random { seed });
            assert!(greedy_color(&k4, 5, &order).unwrap().is_colored());
        }
    }

    #[test]
    fn single_edge_one_color() {
        let h = Hypergraph::canonical(2, vec![vec![0, 1]]).unwrap();
        let out = greedy_color(&h, 1, &[0]).unwrap();
        assert_eq!(out.coloring().unwrap().get(0), Some(1));
    }

    #[test]
    fn rejects_bad_orders_and_lists() {
        let k3 = complete_graph(3).unwrap();
        assert!(greedy_color(&k3, 3, &[0, 1]).is_err());
        assert!(greedy_color(&k3, 3, &[0, 1, 1]).is_err());
        assert!(greedy_color(&k3, 0, &[0, 1, 2]).is_err());
        let lists = ListAssignment::from_lists(vec![vec![1], vec![2]]);
        assert_eq!(greedy_list_color(&k3, &lists, &[0, 1, 2]), Err(Error::MissingList { edge: 2 }));
    }
}

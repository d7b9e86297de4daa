//! Exact chromatic index by branch and bound on the line graph.
//!
//! The search colors line-graph vertices in saturation order (most distinct
//! neighbor colors first, ties by uncolored degree). A vertex may only reuse
//! an open color class or open the next one, which removes color-renaming
//! symmetry. The vertices of a greedy clique are pre-colored `0..w`.
//!
//! Lower bounds: the greedy clique, and `ceil(m / mu)` where `mu` is the
//! largest number of pairwise disjoint edges the vertex set can hold (each
//! color class is a set of disjoint edges). The initial upper bound is a
//! saturation-order greedy coloring.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{Color, EdgeColoring};
use crate::derived::line_graph;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

const HARD_MAX_EDGES: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactBudget {
    /// Largest edge count accepted (at most 128).
    pub max_edges: usize,
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget {
            max_edges: 40,
            max_nodes: 10_000_000,
            time_limit: None,
        }
    }
}

/// Which argument certified the optimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundSource {
    Clique,
    Matching,
    /// The search itself exhausted all colorings with fewer colors.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExactOutcome {
    Exact {
        q: usize,
        coloring: EdgeColoring,
        clique_bound: usize,
        matching_bound: usize,
        certified_by: LowerBoundSource,
        nodes: u64,
    },
    LimitExceeded {
        lower: usize,
        upper: usize,
        best: EdgeColoring,
        nodes: u64,
    },
}

impl ExactOutcome {
    pub fn q(&self) -> Option<usize> {
        match self {
            ExactOutcome::Exact { q, .. } => Some(*q),
            ExactOutcome::LimitExceeded { .. } => None,
        }
    }

    pub fn lower(&self) -> usize {
        match self {
            ExactOutcome::Exact { q, .. } => *q,
            ExactOutcome::LimitExceeded { lower, .. } => *lower,
        }
    }

    pub fn upper(&self) -> usize {
        match self {
            ExactOutcome::Exact { q, .. } => *q,
            ExactOutcome::LimitExceeded { upper, .. } => *upper,
        }
    }

    pub fn coloring(&self) -> &EdgeColoring {
        match self {
            ExactOutcome::Exact { coloring, .. } => coloring,
            ExactOutcome::LimitExceeded { best, .. } => best,
        }
    }
}

/// Computes `q(H)` exactly, or the best bounds found within the budget.
pub fn chromatic_index_exact(h: &Hypergraph, budget: &ExactBudget) -> Result<ExactOutcome> {
    let max = budget.max_edges.min(HARD_MAX_EDGES);
    if h.m() > max {
        return Err(Error::TooLarge {
            what: "edge count",
            value: h.m(),
            max,
        });
    }
    let m = h.m();
    if m == 0 {
        return Ok(ExactOutcome::Exact {
            q: 0,
            coloring: EdgeColoring::new(),
            clique_bound: 0,
            matching_bound: 0,
            certified_by: LowerBoundSource::Clique,
            nodes: 0,
        });
    }
    let lg = line_graph(h);
    let adj: Vec<u128> = (0..m)
        .map(|v| lg.neighbors(v).iter().fold(0u128, |acc, &u| acc | 1 << u))
        .collect();

    let clique = greedy_clique(&adj);
    let clique_bound = clique.len();
    let matching_bound = m.div_ceil(max_disjoint_edges(h));
    let lower = clique_bound.max(matching_bound);

    let initial = dsatur_greedy(&adj);
    let upper = initial.iter().map(|&c| c as usize + 1).max().unwrap_or(0);

    let mut bb = BranchAndBound {
        adj: &adj,
        color: vec![None; m],
        classes: Vec::with_capacity(upper),
        best: initial,
        upper,
        lower,
        nodes: 0,
        max_nodes: budget.max_nodes,
        deadline: budget.time_limit.map(|d| Instant::now() + d),
        aborted: false,
    };
    if upper > lower {
        for (c, &v) in clique.iter().enumerate() {
            bb.color[v] = Some(c as u8);
            bb.classes.push(1u128 << v);
        }
        bb.search(m - clique.len());
    }

    let to_coloring =
        |colors: &[u8]| EdgeColoring::from_slice(&colors.iter().map(|&c| c as Color + 1).collect::<Vec<_>>());
    if bb.aborted && bb.upper > lower {
        return Ok(ExactOutcome::LimitExceeded {
            lower,
            upper: bb.upper,
            best: to_coloring(&bb.best),
            nodes: bb.nodes,
        });
    }
    let q = bb.upper;
    let certified_by = if q == clique_bound {
        LowerBoundSource::Clique
    } else if q == matching_bound {
        LowerBoundSource::Matching
    } else {
        LowerBoundSource::Search
    };
    debug_assert!(lower <= q && q <= upper);
    Ok(ExactOutcome::Exact {
        q,
        coloring: to_coloring(&bb.best),
        clique_bound,
        matching_bound,
        certified_by,
        nodes: bb.nodes,
    })
}

/// Largest clique found by greedy extension from every start vertex.
fn greedy_clique(adj: &[u128]) -> Vec<usize> {
    let mut best = Vec::new();
    for start in 0..adj.len() {
        let mut clique = vec![start];
        let mut candidates = adj[start];
        while candidates != 0 {
            let v = bits(candidates)
                .max_by_key(|&v| ((adj[v] & candidates).count_ones(), std::cmp::Reverse(v)))
                .expect("nonempty candidates");
            clique.push(v);
            candidates &= adj[v];
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// Upper bound on the size of a set of pairwise disjoint edges: take the
/// smallest ranks while they fit into `n` vertices.
fn max_disjoint_edges(h: &Hypergraph) -> usize {
    let mut ranks = h.ranks();
    ranks.sort_unstable();
    let mut total = 0;
    let mut count = 0;
    for r in ranks {
        total += r;
        if total > h.n() {
            break;
        }
        count += 1;
    }
    count.max(1)
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Saturation-order greedy coloring, smallest feasible color.
fn dsatur_greedy(adj: &[u128]) -> Vec<u8> {
    let m = adj.len();
    let mut color: Vec<Option<u8>> = vec![None; m];
    let mut neighbor_colors = vec![0u128; m];
    let mut uncolored: u128 = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
    while uncolored != 0 {
        let v = bits(uncolored)
            .max_by_key(|&v| {
                (
                    neighbor_colors[v].count_ones(),
                    (adj[v] & uncolored).count_ones(),
                    std::cmp::Reverse(v),
                )
            })
            .expect("uncolored vertex");
        let c = (!neighbor_colors[v]).trailing_zeros() as u8;
        color[v] = Some(c);
        uncolored &= !(1u128 << v);
        for u in bits(adj[v]) {
            neighbor_colors[u] |= 1 << c;
        }
    }
    color.into_iter().map(|c| c.expect("colored")).collect()
}

struct BranchAndBound<'a> {
    adj: &'a [u128],
    color: Vec<Option<u8>>,
    /// Vertex mask of each open color class.
    classes: Vec<u128>,
    best: Vec<u8>,
    upper: usize,
    lower: usize,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    aborted: bool,
}

impl BranchAndBound<'_> {
    /// Looks for colorings with fewer than `self.upper` colors.
    fn search(&mut self, remaining: usize) {
        if self.aborted || self.upper <= self.lower {
            return;
        }
        if remaining == 0 {
            self.upper = self.classes.len();
            self.best = self.color.iter().map(|c| c.expect("complete")).collect();
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes
            || (self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d))
        {
            self.aborted = true;
            return;
        }

        let mut uncolored = 0u128;
        for (v, c) in self.color.iter().enumerate() {
            if c.is_none() {
                uncolored |= 1 << v;
            }
        }
        let mut pick = None;
        let mut pick_key = (0u32, 0u32);
        for v in bits(uncolored) {
            let sat = self.classes.iter().filter(|&&cls| cls & self.adj[v] != 0).count() as u32;
            let key = (sat, (self.adj[v] & uncolored).count_ones());
            if pick.is_none() || key > pick_key {
                pick = Some(v);
                pick_key = key;
            }
        }
        let v = pick.expect("uncolored vertex");
        let open = self.classes.len();
        for c in 0..=open {
            // Colors are 0-based; a useful coloring stays below the incumbent.
            if c + 1 >= self.upper {
                break;
            }
            if c < open && self.classes[c] & self.adj[v] != 0 {
                continue;
            }
            if c == open {
                self.classes.push(0);
            }
            self.classes[c] |= 1 << v;
            self.color[v] = Some(c as u8);
            self.search(remaining - 1);
            self.color[v] = None;
            self.classes[c] &= !(1u128 << v);
            if c == open {
                self.classes.pop();
            }
            if self.aborted || self.upper <= self.lower {
                break;
            }
        }
    }
}

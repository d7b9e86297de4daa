//! Extending a coloring of the rank-3+ edges to the rank-2 edges.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::search::{list_color, DensePalette, SearchResult};
use super::{first_conflict, Color, EdgeColoring, ListAssignment};
use crate::derived::{line_graph, split_by_rank};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Backtracking nodes allowed when list-coloring the rank-2 part.
pub const EXTENSION_NODE_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionFailure {
    pub reason: String,
    /// Remaining colors per rank-2 edge (parent index) when the search gave up.
    pub available: BTreeMap<usize, BTreeSet<Color>>,
    pub limit_hit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub n_colors: usize,
    /// Maximum degree of the rank-3+ part.
    pub delta_h3: usize,
    /// Maximum degree of the rank-2 part.
    pub delta_h2: usize,
    /// `delta_h2 <= n_colors - 2 * delta_h3 - 1`.
    pub hypothesis_holds: bool,
    /// `n_colors - 2 * delta_h3`: guaranteed lower bound on every
    /// `available` count below.
    pub count_bound: i64,
    /// Per rank-2 edge (parent index): list colors not used by rank-3+ edges
    /// at either endpoint.
    pub available: BTreeMap<usize, usize>,
    pub count_bound_respected: bool,
    /// Coloring of every edge of the parent, on success.
    pub coloring: Option<EdgeColoring>,
    pub failure: Option<ExtensionFailure>,
    pub notes: Vec<String>,
}

impl ExtensionReport {
    pub fn succeeded(&self) -> bool {
        self.coloring.is_some()
    }
}

/// Extends `h3_coloring` (keyed by the parent's indices of its rank >= 3
/// edges) to every rank-2 edge, drawing from `lists` (keyed by the parent's
/// indices of its rank-2 edges).
///
/// Each rank-2 edge first loses the colors its endpoints already carry in the
/// rank-3+ part; the rank-2 graph is then list-colored exactly from what is
/// left. A failed hypothesis is recorded, not fatal.
pub fn extend_coloring(
    h: &Hypergraph,
    h3_coloring: &EdgeColoring,
    lists: &ListAssignment,
    n_colors: usize,
) -> Result<ExtensionReport> {
    let split = split_by_rank(h)?;
    let h3_colors: Vec<Color> = split
        .h3_parent
        .iter()
        .map(|&e| h3_coloring.get(e).ok_or(Error::MissingColor { edge: e }))
        .collect::<Result<_>>()?;
    if let Some(&edge) = h3_coloring.colors.keys().find(|e| !split.h3_parent.contains(e)) {
        return Err(Error::Precondition(format!(
            "h3 coloring assigns edge {edge}, which is not an edge of rank >= 3"
        )));
    }
    if let Some((a, b)) = first_conflict(&split.h3, &h3_colors) {
        return Err(Error::Precondition(format!(
            "h3 coloring is not proper: edges {} and {} share a color",
            split.h3_parent[a], split.h3_parent[b]
        )));
    }
    for &e in &split.h2_parent {
        let list = lists.get(e).ok_or(Error::MissingList { edge: e })?;
        if list.len() < n_colors {
            return Err(Error::Precondition(format!(
                "list of edge {e} has {} colors, fewer than {n_colors}",
                list.len()
            )));
        }
    }

    let delta_h3 = split.h3.max_degree();
    let delta_h2 = split.h2.max_degree();
    let count_bound = n_colors as i64 - 2 * delta_h3 as i64;
    let hypothesis_holds = (delta_h2 as i64) < count_bound;
    let mut notes = vec![format!(
        "hypothesis gives n - 2*Delta(H3) = {count_bound} >= Delta(H2) + 1 = {}",
        delta_h2 + 1
    )];
    if !hypothesis_holds {
        notes.push("warning: Delta(H2) > n - 2*Delta(H3) - 1; extension attempted anyway".into());
    }

    let mut at_vertex: Vec<BTreeSet<Color>> = vec![BTreeSet::new(); h.n()];
    for (edge, &c) in split.h3.edges().iter().zip(&h3_colors) {
        for &x in edge {
            at_vertex[x].insert(c);
        }
    }
    let remaining: Vec<BTreeSet<Color>> = split
        .h2_parent
        .iter()
        .zip(split.h2.edges())
        .map(|(&e, edge)| {
            lists.get(e).expect("checked above").iter()
                .filter(|c| !at_vertex[edge[0]].contains(c) && !at_vertex[edge[1]].contains(c))
                .copied()
                .collect()
        })
        .collect();
    let available: BTreeMap<usize, usize> = split
        .h2_parent
        .iter()
        .zip(&remaining)
        .map(|(&e, r)| (e, r.len()))
        .collect();
    let count_bound_respected = available.values().all(|&a| a as i64 >= count_bound);

    let mut report = ExtensionReport {
        n_colors,
        delta_h3,
        delta_h2,
        hypothesis_holds,
        count_bound,
        available,
        count_bound_respected,
        coloring: None,
        failure: None,
        notes,
    };

    let palette = DensePalette::from_lists(&remaining)?;
    let masks: Vec<u128> = remaining.iter().map(|l| palette.mask(l)).collect();
    let lg = line_graph(&split.h2);
    let adj: Vec<Vec<usize>> = (0..split.h2.m()).map(|v| lg.neighbors(v).to_vec()).collect();
    let (result, _) = list_color(&adj, &masks, EXTENSION_NODE_LIMIT);
    let stuck = |reason: &str, limit_hit| ExtensionFailure {
        reason: reason.to_string(),
        available: split.h2_parent.iter().copied().zip(remaining.iter().cloned()).collect(),
        limit_hit,
    };
    match result {
        SearchResult::Colored(bits) => {
            let mut coloring = EdgeColoring::new();
            for (&e, &c) in split.h3_parent.iter().zip(&h3_colors) {
                coloring.set(e, c);
            }
            for (&e, &b) in split.h2_parent.iter().zip(&bits) {
                coloring.set(e, palette.color(b));
            }
            report.coloring = Some(coloring);
        }
        SearchResult::Infeasible => {
            report.failure = Some(stuck("rank-2 edges admit no coloring from their remaining colors", false))
        }
        SearchResult::LimitHit => report.failure = Some(stuck("search node limit reached", true)),
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeficitExcess {
    pub vertex: usize,
    /// `delta - d(x)`.
    pub deficit: usize,
    /// Sum over ranks `k >= 4` of `(k - 3) * d_k(x)`.
    pub excess: usize,
}

pub fn deficit_excess(h3: &Hypergraph, delta: usize) -> Result<Vec<DeficitExcess>> {
    let deg = h3.degrees();
    let max = deg.iter().copied().max().unwrap_or(0);
    if delta < max {
        return Err(Error::InvalidParameter(format!(
            "Delta = {delta} is below the maximum degree {max}"
        )));
    }
    let mut excess = vec![0; h3.n()];
    for edge in h3.edges() {
        if edge.len() >= 4 {
            for &x in edge {
                excess[x] += edge.len() - 3;
            }
        }
    }
    Ok((0..h3.n())
        .map(|x| DeficitExcess {
            vertex: x,
            deficit: delta - deg[x],
            excess: excess[x],
        })
        .collect())
}

//! Edge colorings, list assignments and the coloring procedures built on them.

mod choosability;
mod exact;
mod extend;
mod greedy;
pub(crate) mod search;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::derived::line_graph;
use crate::hypergraph::Hypergraph;

pub use choosability::{is_k_choosable, ChoosabilityBudget, ChoosabilityStatus, ChoosabilityVerdict};
pub use exact::{chromatic_index_exact, ExactBudget, ExactOutcome, LowerBoundSource};
pub use extend::{deficit_excess, extend_coloring, DeficitExcess, ExtensionFailure, ExtensionReport};
pub use greedy::{edge_order, greedy_color, greedy_list_color, EdgeOrder, GreedyFailure, GreedyOutcome};

pub type Color = u32;

/// Edge index to color.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeColoring {
    pub colors: BTreeMap<usize, Color>,
}

impl EdgeColoring {
    pub fn new() -> Self {
        Self::default()
    }

    /// Colors edge `i` with `colors[i]`.
    pub fn from_slice(colors: &[Color]) -> Self {
        EdgeColoring {
            colors: colors.iter().copied().enumerate().collect(),
        }
    }

    pub fn get(&self, e: usize) -> Option<Color> {
        self.colors.get(&e).copied()
    }

    pub fn set(&mut self, e: usize, c: Color) {
        self.colors.insert(e, c);
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors used.
    pub fn num_colors(&self) -> usize {
        self.colors.values().collect::<BTreeSet<_>>().len()
    }

    /// Dense vector over `0..m`; fails on a missing or foreign edge.
    pub fn to_vec(&self, m: usize) -> Result<Vec<Color>> {
        if let Some(&edge) = self.colors.keys().find(|&&e| e >= m) {
            return Err(Error::UnknownEdge { edge, m });
        }
        (0..m)
            .map(|e| self.get(e).ok_or(Error::MissingColor { edge: e }))
            .collect()
    }
}

/// Edge index to admissible colors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ListAssignment {
    pub lists: BTreeMap<usize, BTreeSet<Color>>,
}

impl ListAssignment {
    /// Every edge in `0..m` gets `{1, .., k}`.
    pub fn uniform(m: usize, k: usize) -> Self {
        let palette: BTreeSet<Color> = (1..=k as Color).collect();
        ListAssignment {
            lists: (0..m).map(|e| (e, palette.clone())).collect(),
        }
    }

    pub fn from_lists(lists: Vec<Vec<Color>>) -> Self {
        ListAssignment {
            lists: lists
                .into_iter()
                .enumerate()
                .map(|(e, l)| (e, l.into_iter().collect()))
                .collect(),
        }
    }

    pub fn get(&self, e: usize) -> Option<&BTreeSet<Color>> {
        self.lists.get(&e)
    }

    pub fn list_sizes(&self) -> BTreeMap<usize, usize> {
        self.lists.iter().map(|(&e, l)| (e, l.len())).collect()
    }

    pub fn min_list_size(&self) -> usize {
        self.lists.values().map(BTreeSet::len).min().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "coloring", rename_all = "snake_case")]
pub enum ListSearchOutcome {
    Colored(EdgeColoring),
    Infeasible,
    LimitHit,
}

/// Exhaustive search for a proper coloring drawing each edge's color from
/// its list. Every edge must have a list.
pub fn list_color_exact(h: &Hypergraph, lists: &ListAssignment, node_limit: u64) -> Result<ListSearchOutcome> {
    let per_edge: Vec<&BTreeSet<Color>> = (0..h.m())
        .map(|e| lists.get(e).ok_or(Error::MissingList { edge: e }))
        .collect::<Result<_>>()?;
    if let Some(&edge) = lists.lists.keys().find(|&&e| e >= h.m()) {
        return Err(Error::UnknownEdge { edge, m: h.m() });
    }
    let palette = search::DensePalette::from_lists(per_edge.iter().copied())?;
    let masks: Vec<u128> = per_edge.iter().map(|l| palette.mask(l)).collect();
    let lg = line_graph(h);
    let adj: Vec<Vec<usize>> = (0..h.m()).map(|v| lg.neighbors(v).to_vec()).collect();
    Ok(match search::list_color(&adj, &masks, node_limit).0 {
        search::SearchResult::Colored(bits) => ListSearchOutcome::Colored(EdgeColoring {
            colors: bits.iter().enumerate().map(|(e, &b)| (e, palette.color(b))).collect(),
        }),
        search::SearchResult::Infeasible => ListSearchOutcome::Infeasible,
        search::SearchResult::LimitHit => ListSearchOutcome::LimitHit,
    })
}

/// True iff every pair of intersecting edges gets distinct colors.
pub fn is_proper(h: &Hypergraph, coloring: &EdgeColoring) -> Result<bool> {
    let colors = coloring.to_vec(h.m())?;
    Ok(first_conflict(h, &colors).is_none())
}

/// First pair of intersecting, equally colored edges.
pub(crate) fn first_conflict(h: &Hypergraph, colors: &[Color]) -> Option<(usize, usize)> {
    for incident in h.incidence() {
        for (i, &e) in incident.iter().enumerate() {
            if let Some(&f) = incident[i + 1..].iter().find(|&&f| colors[f] == colors[e]) {
                return Some((e, f));
            }
        }
    }
    None
}

//! Backtracking list coloring of a graph with bitmask lists.

use std::collections::BTreeSet;

use super::Color;
use crate::error::{Error, Result};

pub(crate) const MAX_DENSE_COLORS: usize = 128;

/// Bijection between the colors appearing in a family of lists and the bit
/// positions `0..len`.
pub(crate) struct DensePalette {
    colors: Vec<Color>,
}

impl DensePalette {
    pub fn from_lists<'a>(lists: impl IntoIterator<Item = &'a BTreeSet<Color>>) -> Result<Self> {
        let all: BTreeSet<Color> = lists.into_iter().flatten().copied().collect();
        if all.len() > MAX_DENSE_COLORS {
            return Err(Error::TooLarge {
                what: "distinct colors",
                value: all.len(),
                max: MAX_DENSE_COLORS,
            });
        }
        Ok(DensePalette {
            colors: all.into_iter().collect(),
        })
    }

    pub fn mask(&self, list: &BTreeSet<Color>) -> u128 {
        list.iter()
            .map(|c| self.colors.binary_search(c).expect("color registered in palette"))
            .fold(0, |m, i| m | 1 << i)
    }

    pub fn color(&self, index: u8) -> Color {
        self.colors[index as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum SearchResult {
    /// Bit index of the chosen color for each vertex.
    Colored(Vec<u8>),
    Infeasible,
    LimitHit,
}

/// Decides whether the graph can be colored so every vertex takes a color
/// from its mask and adjacent vertices differ. Most-constrained vertex first.
pub(crate) fn list_color(adj: &[Vec<usize>], lists: &[u128], node_limit: u64) -> (SearchResult, u64) {
    let n = adj.len();
    let mut search = Search {
        adj,
        lists,
        color: vec![None; n],
        blocked: vec![0; n],
        counts: vec![0; n * MAX_DENSE_COLORS],
        nodes: 0,
        node_limit,
    };
    let result = match search.run(n) {
        Some(true) => SearchResult::Colored(search.color.iter().map(|c| c.expect("all colored")).collect()),
        Some(false) => SearchResult::Infeasible,
        None => SearchResult::LimitHit,
    };
    (result, search.nodes)
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    lists: &'a [u128],
    color: Vec<Option<u8>>,
    /// Colors held by at least one colored neighbor.
    blocked: Vec<u128>,
    counts: Vec<u16>,
    nodes: u64,
    node_limit: u64,
}

impl Search<'_> {
    /// `None` when the node limit is hit.
    fn run(&mut self, remaining: usize) -> Option<bool> {
        if remaining == 0 {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return None;
        }
        let mut best: Option<(usize, u32)> = None;
        for v in 0..self.adj.len() {
            if self.color[v].is_some() {
                continue;
            }
            let options = (self.lists[v] & !self.blocked[v]).count_ones();
            if options == 0 {
                return Some(false);
            }
            if best.is_none_or(|(_, b)| options < b) {
                best = Some((v, options));
            }
        }
        let (v, _) = best.expect("an uncolored vertex remains");
        let mut avail = self.lists[v] & !self.blocked[v];
        while avail != 0 {
            let c = avail.trailing_zeros() as u8;
            avail &= avail - 1;
            self.assign(v, c);
            match self.run(remaining - 1) {
                Some(true) => return Some(true),
                Some(false) => self.unassign(v, c),
                None => {
                    self.unassign(v, c);
                    return None;
                }
            }
        }
        Some(false)
    }

    fn assign(&mut self, v: usize, c: u8) {
        self.color[v] = Some(c);
        for &u in &self.adj[v] {
            let slot = &mut self.counts[u * MAX_DENSE_COLORS + c as usize];
            *slot += 1;
            self.blocked[u] |= 1 << c;
        }
    }

    fn unassign(&mut self, v: usize, c: u8) {
        self.color[v] = None;
        for &u in &self.adj[v] {
            let slot = &mut self.counts[u * MAX_DENSE_COLORS + c as usize];
            *slot -= 1;
            if *slot == 0 {
                self.blocked[u] &= !(1 << c);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Vec<Vec<usize>> {
        vec![vec![1, 2], vec![0, 2], vec![0, 1]]
    }

    fn check(adj: &[Vec<usize>], lists: &[u128], colors: &[u8]) {
        for (v, &c) in colors.iter().enumerate() {
            assert!(lists[v] & (1 << c) != 0);
            assert!(adj[v].iter().all(|&u| colors[u] != c));
        }
    }

    #[test]
    fn triangle_two_colors_infeasible() {
        let (r, _) = list_color(&triangle(), &[0b11; 3], u64::MAX);
        assert_eq!(r, SearchResult::Infeasible);
    }

    #[test]
    fn triangle_distinct_pairs_feasible() {
        let lists = [0b011, 0b110, 0b101];
        let (r, _) = list_color(&triangle(), &lists, u64::MAX);
        match r {
            SearchResult::Colored(c) => check(&triangle(), &lists, &c),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn node_limit_reported() {
        let (r, nodes) = list_color(&triangle(), &[0b11; 3], 1);
        assert_eq!(r, SearchResult::LimitHit);
        assert_eq!(nodes, 2);
    }

    #[test]
    fn empty_graph() {
        assert_eq!(list_color(&[], &[], 0).0, SearchResult::Colored(vec![]));
    }
}

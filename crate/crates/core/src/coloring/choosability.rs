//! Small-scale k-choosability by exhaustive enumeration of list assignments.
//!
//! Two list assignments that differ by a renaming of colors are equivalent,
//! so a color matters only through the set of edges whose lists contain it.
//! Assignments are generated edge by edge: colors that so far appear in
//! exactly the same lists form a class, and the next list only chooses *how
//! many* colors to take from each class plus how many fresh colors to open.
//! Each equivalence class of assignments is produced exactly once, and never
//! uses more than `k * m` colors.
//!
//! Edges of line-graph degree below `k` are peeled off first (they can always
//! be colored last); the enumeration runs on what remains.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::search::{list_color, SearchResult};
use super::{Color, ListAssignment};
use crate::derived::line_graph;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoosabilityBudget {
    pub max_edges: usize,
    pub max_k: usize,
    /// Complete assignments to test before giving up.
    pub max_assignments: u64,
    /// Backtracking nodes allowed per assignment test.
    pub max_nodes_per_test: u64,
    pub time_limit: Option<Duration>,
}

impl Default for ChoosabilityBudget {
    fn default() -> Self {
        ChoosabilityBudget {
            max_edges: 8,
            max_k: 5,
            max_assignments: 5_000_000,
            max_nodes_per_test: 1_000_000,
            time_limit: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChoosabilityStatus {
    Choosable,
    NotChoosable,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChoosabilityVerdict {
    pub k: usize,
    pub status: ChoosabilityStatus,
    /// An assignment of `k`-lists admitting no proper coloring; present iff
    /// `status` is `NotChoosable`.
    pub witness: Option<ListAssignment>,
    pub assignments_examined: u64,
    pub limit_hit: bool,
    /// Edges left after peeling those of line-graph degree below `k`.
    pub core_edges: usize,
}

/// Decides whether every assignment of `k`-color lists to the edges of `h`
/// admits a proper list edge coloring.
pub fn is_k_choosable(h: &Hypergraph, k: usize, budget: &ChoosabilityBudget) -> Result<ChoosabilityVerdict> {
    if h.m() > budget.max_edges {
        return Err(Error::TooLarge {
            what: "edge count",
            value: h.m(),
            max: budget.max_edges,
        });
    }
    if k == 0 || k > budget.max_k {
        return Err(Error::InvalidParameter(format!(
            "list size must be in 1..={}, got {k}",
            budget.max_k
        )));
    }
    let lg = line_graph(h);
    let full_adj: Vec<Vec<usize>> = (0..h.m()).map(|v| lg.neighbors(v).to_vec()).collect();
    let core = k_core(&full_adj, k);
    let mut verdict = ChoosabilityVerdict {
        k,
        status: ChoosabilityStatus::Choosable,
        witness: None,
        assignments_examined: 0,
        limit_hit: false,
        core_edges: core.len(),
    };
    if core.is_empty() {
        return Ok(verdict);
    }

    let mut position = vec![usize::MAX; h.m()];
    for (i, &e) in core.iter().enumerate() {
        position[e] = i;
    }
    let adj: Vec<Vec<usize>> = core
        .iter()
        .map(|&e| full_adj[e].iter().filter(|&&f| position[f] != usize::MAX).map(|&f| position[f]).collect())
        .collect();

    let mut enumerator = Enumerator {
        adj: &adj,
        k,
        lists: vec![0; core.len()],
        next_color: 0,
        examined: 0,
        budget,
        deadline: budget.time_limit.map(|d| Instant::now() + d),
        limit_hit: false,
        witness: None,
    };
    enumerator.extend(0, vec![]);

    verdict.assignments_examined = enumerator.examined;
    verdict.limit_hit = enumerator.limit_hit;
    if let Some(core_lists) = enumerator.witness {
        verdict.status = ChoosabilityStatus::NotChoosable;
        verdict.witness = Some(lift_witness(h.m(), k, &core, &core_lists));
    } else if enumerator.limit_hit {
        verdict.status = ChoosabilityStatus::Inconclusive;
    }
    Ok(verdict)
}

/// Vertices surviving repeated removal of vertices of degree below `k`, in
/// ascending order.
fn k_core(adj: &[Vec<usize>], k: usize) -> Vec<usize> {
    let mut alive = vec![true; adj.len()];
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut stack: Vec<usize> = (0..adj.len()).filter(|&v| degree[v] < k).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in &adj[v] {
            if alive[u] {
                degree[u] -= 1;
                if degree[u] + 1 == k {
                    stack.push(u);
                }
            }
        }
    }
    (0..adj.len()).filter(|&v| alive[v]).collect()
}

/// Extends a core witness to all edges: peeled edges get fresh colors.
fn lift_witness(m: usize, k: usize, core: &[usize], core_lists: &[u128]) -> ListAssignment {
    let mut next: Color = core_lists.iter().fold(0u128, |a, &b| a | b).count_ones() as Color + 1;
    let mut lists = vec![BTreeSet::new(); m];
    for (i, &e) in core.iter().enumerate() {
        lists[e] = mask_colors(core_lists[i]);
    }
    for list in lists.iter_mut().filter(|l| l.is_empty()) {
        for _ in 0..k {
            list.insert(next);
            next += 1;
        }
    }
    ListAssignment {
        lists: lists.into_iter().enumerate().collect(),
    }
}

fn mask_colors(mask: u128) -> BTreeSet<Color> {
    (0..128).filter(|&b| mask & (1u128 << b) != 0).map(|b| b as Color + 1).collect()
}

struct Enumerator<'a> {
    adj: &'a [Vec<usize>],
    k: usize,
    lists: Vec<u128>,
    next_color: u32,
    examined: u64,
    budget: &'a ChoosabilityBudget,
    deadline: Option<Instant>,
    limit_hit: bool,
    witness: Option<Vec<u128>>,
}

impl Enumerator<'_> {
    fn done(&self) -> bool {
        self.limit_hit || self.witness.is_some()
    }

    /// `classes` are color masks whose members lie in the same lists so far.
    fn extend(&mut self, edge: usize, classes: Vec<u128>) {
        if self.done() {
            return;
        }
        if edge == self.adj.len() {
            self.test();
            return;
        }
        let mut take = vec![0usize; classes.len()];
        self.choose(edge, &classes, 0, self.k, &mut take);
    }

    /// Chooses how many colors each class contributes to `edge`'s list.
    fn choose(&mut self, edge: usize, classes: &[u128], class: usize, left: usize, take: &mut Vec<usize>) {
        if self.done() {
            return;
        }
        if class == classes.len() {
            let fresh = left;
            let mut list = 0u128;
            let mut next = Vec::with_capacity(classes.len() * 2 + 1);
            for (cls, &t) in classes.iter().zip(take.iter()) {
                let chosen = lowest_bits(*cls, t);
                list |= chosen;
                next.extend([chosen, cls & !chosen].into_iter().filter(|&c| c != 0));
            }
            let fresh_mask = range_mask(self.next_color, fresh as u32);
            list |= fresh_mask;
            if fresh_mask != 0 {
                next.push(fresh_mask);
            }
            self.next_color += fresh as u32;
            self.lists[edge] = list;
            self.extend(edge + 1, next);
            self.next_color -= fresh as u32;
            return;
        }
        let size = classes[class].count_ones() as usize;
        // Most sharing first: conflicting assignments surface early.
        for t in (0..=size.min(left)).rev() {
            take[class] = t;
            self.choose(edge, classes, class + 1, left - t, take);
            if self.done() {
                return;
            }
        }
        take[class] = 0;
    }

    fn test(&mut self) {
        if self.examined >= self.budget.max_assignments
            || (self.examined.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d))
        {
            self.limit_hit = true;
            return;
        }
        self.examined += 1;
        match list_color(self.adj, &self.lists, self.budget.max_nodes_per_test).0 {
            SearchResult::Colored(_) => {}
            SearchResult::Infeasible => self.witness = Some(self.lists.clone()),
            SearchResult::LimitHit => self.limit_hit = true,
        }
    }
}

fn lowest_bits(mut mask: u128, count: usize) -> u128 {
    let mut out = 0;
    for _ in 0..count {
        let bit = mask & mask.wrapping_neg();
        out |= bit;
        mask &= !bit;
    }
    out
}

fn range_mask(start: u32, len: u32) -> u128 {
    (start..start + len).fold(0, |m, b| m | 1u128 << b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_graph;

    #[test]
    fn triangle_not_two_choosable() {
        let v = is_k_choosable(&complete_graph(3).unwrap(), 2, &ChoosabilityBudget::default()).unwrap();
        assert_eq!(v.status, ChoosabilityStatus::NotChoosable);
        let w = v.witness.unwrap();
        // The first failing assignment in canonical order is the constant one.
        let first = w.get(0).unwrap();
        assert!(w.lists.values().all(|l| l == first && l.len() == 2));
    }

    #[test]
    fn triangle_three_choosable_by_peeling() {
        let v = is_k_choosable(&complete_graph(3).unwrap(), 3, &ChoosabilityBudget::default()).unwrap();
        assert_eq!(v.status, ChoosabilityStatus::Choosable);
        assert_eq!((v.core_edges, v.assignments_examined), (0, 0));
    }

    #[test]
    fn four_cycle_two_choosable() {
        let c4 = Hypergraph::canonical(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let v = is_k_choosable(&c4, 2, &ChoosabilityBudget::default()).unwrap();
        assert_eq!(v.status, ChoosabilityStatus::Choosable);
        assert!(v.assignments_examined > 0);
        assert!(!v.limit_hit);
    }

    #[test]
    fn k_core_peels_trees() {
        let path = vec![vec![1], vec![0, 2], vec![1]];
        assert!(k_core(&path, 2).is_empty());
        let tri = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        assert_eq!(k_core(&tri, 2), vec![0, 1, 2]);
    }

    #[test]
    fn enumeration_counts_match_set_partitions() {
        // Triangle with k = 1 has one list each; assignments up to renaming
        // correspond to set partitions of the 3 edges: Bell(3) = 5. All but
        // the all-distinct one fail, and the first generated is all-equal.
        let tri = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        let budget = ChoosabilityBudget::default();
        let mut e = Enumerator {
            adj: &tri,
            k: 1,
            lists: vec![0; 3],
            next_color: 0,
            examined: 0,
            budget: &budget,
            deadline: None,
            limit_hit: false,
            witness: None,
        };
        e.extend(0, vec![]);
        assert_eq!(e.examined, 1);
        assert_eq!(e.witness, Some(vec![1, 1, 1]));

        // Count every assignment on three isolated vertices (no failures).
        let isolated = vec![vec![], vec![], vec![]];
        let mut e = Enumerator {
            adj: &isolated,
            k: 1,
            lists: vec![0; 3],
            next_color: 0,
            examined: 0,
            budget: &budget,
            deadline: None,
            limit_hit: false,
            witness: None,
        };
        e.extend(0, vec![]);
        assert_eq!(e.examined, 5);
    }

    #[test]
    fn assignment_budget_gives_inconclusive() {
        let c4 = Hypergraph::canonical(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let budget = ChoosabilityBudget {
            max_assignments: 1,
            ..Default::default()
        };
        let v = is_k_choosable(&c4, 2, &budget).unwrap();
        assert_eq!(v.status, ChoosabilityStatus::Inconclusive);
        assert!(v.limit_hit && v.witness.is_none());
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        let k3 = complete_graph(3).unwrap();
        assert!(is_k_choosable(&k3, 6, &ChoosabilityBudget::default()).is_err());
        assert!(is_k_choosable(&k3, 0, &ChoosabilityBudget::default()).is_err());
        assert!(is_k_choosable(&complete_graph(5).unwrap(), 2, &ChoosabilityBudget::default()).is_err());
    }
}

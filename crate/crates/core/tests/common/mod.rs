//! Brute-force oracles shared by the integration tests. They use only
//! plain set operations, none of the library's derived structures.

#![allow(dead_code)]

use std::collections::BTreeSet;

use linhyper::Hypergraph;

fn meets(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|x| b.contains(x))
}

/// Every pair of intersecting edges has distinct colors.
pub fn proper(h: &Hypergraph, colors: &[u32]) -> bool {
    let edges = h.edges();
    colors.len() == edges.len()
        && (0..edges.len()).all(|i| {
            (i + 1..edges.len()).all(|j| !meets(&edges[i], &edges[j]) || colors[i] != colors[j])
        })
}

/// `(t1, t2)` per edge by enumerating all unordered pairs of other edges.
pub fn triangles(h: &Hypergraph) -> Vec<(u64, u64)> {
    let edges = h.edges();
    let m = edges.len();
    (0..m)
        .map(|e| {
            let (mut t1, mut t2) = (0, 0);
            for f in 0..m {
                for g in f + 1..m {
                    if f == e || g == e {
                        continue;
                    }
                    let (a, b, c) = (&edges[e], &edges[f], &edges[g]);
                    if !(meets(a, b) && meets(a, c) && meets(b, c)) {
                        continue;
                    }
                    if a.iter().any(|x| b.contains(x) && c.contains(x)) {
                        t1 += 1;
                    } else {
                        t2 += 1;
                    }
                }
            }
            (t1, t2)
        })
        .collect()
}

/// Whether some choice of one color per list is a proper coloring.
pub fn lists_colorable(h: &Hypergraph, lists: &[BTreeSet<u32>]) -> bool {
    fn go(h: &Hypergraph, lists: &[BTreeSet<u32>], chosen: &mut Vec<u32>) -> bool {
        let e = chosen.len();
        if e == lists.len() {
            return true;
        }
        let edges = h.edges();
        for &c in &lists[e] {
            if (0..e).all(|f| chosen[f] != c || !meets(&edges[e], &edges[f])) {
                chosen.push(c);
                if go(h, lists, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(h, lists, &mut Vec::new())
}

/// `sum over edges through x of (rank - 1)`, by direct scan.
pub fn clique_degree(h: &Hypergraph, x: usize) -> usize {
    h.edges().iter().filter(|e| e.contains(&x)).map(|e| e.len() - 1).sum()
}

/// Number of other edges meeting `e`, by direct scan.
pub fn clique_rank_linear(h: &Hypergraph, e: usize) -> usize {
    let edges = h.edges();
    (0..edges.len()).filter(|&f| f != e && meets(&edges[e], &edges[f])).count()
}

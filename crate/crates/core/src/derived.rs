//! Clique graphs, line graphs, clique degrees and clique ranks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{intersection_size, Hypergraph};

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in pairs {
            assert!(u < n && v < n, "graph edge ({u}, {v}) out of range");
            if u != v {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adjacency }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adjacency.iter().all(|l| l.len() + 1 == n)
    }
}

/// Graph on the vertices of `h`; two vertices are adjacent iff some edge
/// contains both.
pub fn clique_graph(h: &Hypergraph) -> Graph {
    let pairs = h.edges().iter().flat_map(|edge| {
        edge.iter()
            .enumerate()
            .flat_map(move |(i, &x)| edge[i + 1..].iter().map(move |&y| (x, y)))
    });
    Graph::from_edges(h.n(), pairs)
}

/// Graph on the edges of `h`; two edges are adjacent iff they intersect.
pub fn line_graph(h: &Hypergraph) -> Graph {
    let edges = h.edges();
    let m = edges.len();
    let mut adjacency = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if intersection_size(&edges[i], &edges[j]) > 0 {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    Graph { adjacency }
}

/// `D(x)`: the sum of `r(e) - 1` over edges containing `x`.
pub fn clique_degree(h: &Hypergraph, x: usize) -> Result<usize> {
    if x >= h.n() {
        return Err(Error::VertexIndexOutOfRange { vertex: x, n: h.n() });
    }
    Ok(h.edges()
        .iter()
        .filter(|e| e.binary_search(&x).is_ok())
        .map(|e| e.len() - 1)
        .sum())
}

/// `R(e)`: the sum of `d(x) - 1` over vertices of `e`.
pub fn clique_rank(h: &Hypergraph, e: usize) -> Result<usize> {
    let edge = h.edge(e)?;
    let deg = h.degrees();
    Ok(edge.iter().map(|&x| deg[x] - 1).sum())
}

/// `D(x)` for every vertex.
pub fn clique_degrees(h: &Hypergraph) -> Vec<usize> {
    let mut d = vec![0; h.n()];
    for edge in h.edges() {
        for &x in edge {
            d[x] += edge.len() - 1;
        }
    }
    d
}

/// `R(e)` for every edge.
pub fn clique_ranks(h: &Hypergraph) -> Vec<usize> {
    let deg = h.degrees();
    h.edges()
        .iter()
        .map(|edge| edge.iter().map(|&x| deg[x] - 1).sum())
        .collect()
}

pub fn max_clique_degree(h: &Hypergraph) -> usize {
    clique_degrees(h).into_iter().max().unwrap_or(0)
}

pub fn max_clique_rank(h: &Hypergraph) -> usize {
    clique_ranks(h).into_iter().max().unwrap_or(0)
}

/// Edges of rank at least 3 and edges of rank exactly 2, each over the full
/// vertex set, with maps back to the parent's edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankSplit {
    pub h3: Hypergraph,
    pub h2: Hypergraph,
    pub h3_parent: Vec<usize>,
    pub h2_parent: Vec<usize>,
}

pub fn split_by_rank(h: &Hypergraph) -> Result<RankSplit> {
    h.require_no_rank_one()?;
    let (h3, h3_parent) = h.filter_edges(|e| e.len() >= 3);
    let (h2, h2_parent) = h.filter_edges(|e| e.len() == 2);
    Ok(RankSplit {
        h3,
        h2,
        h3_parent,
        h2_parent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, near_pencil, projective_plane};

    fn h(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::canonical(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn clique_graph_examples() {
        let g = clique_graph(&h(3, &[&[0, 1, 2]]));
        assert!(g.is_complete() && g.edge_count() == 3);
        let fano = clique_graph(&projective_plane(2).unwrap());
        assert_eq!(fano.edge_count(), 21);
        assert!((0..7).all(|x| (0..7).all(|y| x == y || fano.has_edge(x, y))));
        assert_eq!(clique_graph(&Hypergraph::edgeless(4)).edge_count(), 0);
    }

    #[test]
    fn line_graph_examples() {
        let l = line_graph(&projective_plane(2).unwrap());
        assert_eq!((l.n(), l.edge_count()), (7, 21));
        let disjoint = line_graph(&h(4, &[&[0, 1], &[2, 3]]));
        assert_eq!((disjoint.n(), disjoint.edge_count()), (2, 0));
        let np = line_graph(&near_pencil(5).unwrap());
        assert!(np.is_complete() && np.n() == 5);
    }

    #[test]
    fn clique_degree_examples() {
        let fano = projective_plane(2).unwrap();
        assert!((0..7).all(|x| clique_degree(&fano, x).unwrap() == 6));
        let np = near_pencil(5).unwrap();
        assert_eq!(clique_degree(&np, 0).unwrap(), 4);
        assert_eq!(clique_degree(&h(3, &[&[0, 1]]), 2).unwrap(), 0);
        assert!(clique_degree(&fano, 7).is_err());
    }

    #[test]
    fn clique_rank_examples() {
        let fano = projective_plane(2).unwrap();
        assert!((0..7).all(|e| clique_rank(&fano, e).unwrap() == 6));
        let k4 = complete_graph(4).unwrap();
        assert!((0..6).all(|e| clique_rank(&k4, e).unwrap() == 4));
        assert_eq!(clique_rank(&h(3, &[&[0, 1, 2]]), 0).unwrap(), 0);
        assert!(clique_rank(&fano, 7).is_err());
    }

    #[test]
    fn raw_sum_on_nonlinear_input() {
        // Two edges sharing {0,1}: D(0) = 2 + 2 = 4 while the clique graph
        // degree of 0 is 3.
        let g = h(4, &[&[0, 1, 2], &[0, 1, 3]]);
        assert_eq!(clique_degree(&g, 0).unwrap(), 4);
        assert_eq!(clique_graph(&g).degree(0), 3);
    }

    #[test]
    fn split_examples() {
        let s = split_by_rank(&near_pencil(5).unwrap()).unwrap();
        assert_eq!(s.h3.edges(), &[vec![0, 1, 2, 3]]);
        assert_eq!(s.h2.m(), 4);
        assert_eq!(s.h3.n(), 5);
        let fano = projective_plane(2).unwrap();
        let s = split_by_rank(&fano).unwrap();
        assert_eq!(s.h3, fano);
        assert_eq!(s.h2.m(), 0);
        let s = split_by_rank(&complete_graph(4).unwrap()).unwrap();
        assert_eq!((s.h3.m(), s.h2.m()), (0, 6));
        assert!(split_by_rank(&h(2, &[&[0], &[0, 1]])).is_err());
    }
}

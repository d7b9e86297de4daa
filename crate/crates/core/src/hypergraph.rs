//! The hypergraph data model.
//!
//! A [`Hypergraph`] is a vertex count `n` plus an ordered list of edges, each
//! edge a strictly ascending list of vertex ids in `[0, n)`. The incidence
//! matrix (rows = vertices, columns = edges) is only ever a derived view.
//!
//! [`Hypergraph::new`] keeps the edge order it is given so that transposition
//! is an exact involution; [`Hypergraph::canonical`], [`parse`] and every
//! generator additionally sort the edge list lexicographically.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::derived;
use crate::error::{Error, Result};

/// A finite hypergraph with integer vertices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::canonical(raw.n, raw.edges)
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Hypergraph {
    /// Builds a hypergraph, sorting vertices inside each edge but keeping the
    /// given edge order.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut edges = edges;
        for (pos, edge) in edges.iter_mut().enumerate() {
            if edge.is_empty() {
                return Err(Error::EmptyEdge { edge: pos });
            }
            edge.sort_unstable();
            if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { edge: pos, vertex, n });
            }
            if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex {
                    edge: pos,
                    vertex: w[0],
                });
            }
        }
        let mut seen: HashMap<&[usize], usize> = HashMap::with_capacity(edges.len());
        for (pos, edge) in edges.iter().enumerate() {
            if let Some(&first) = seen.get(edge.as_slice()) {
                return Err(Error::DuplicateEdge { first, second: pos });
            }
            seen.insert(edge, pos);
        }
        Ok(Hypergraph { n, edges })
    }

    /// Builds a hypergraph in canonical form: ascending vertices inside each
    /// edge and a lexicographically sorted edge list.
    pub fn canonical(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut h = Self::new(n, edges)?;
        h.edges.sort();
        Ok(h)
    }

    /// The hypergraph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Self {
        Hypergraph {
            n,
            edges: Vec::new(),
        }
    }

    /// Returns a copy with the edge list sorted lexicographically.
    pub fn to_canonical(&self) -> Self {
        let mut edges = self.edges.clone();
        edges.sort();
        Hypergraph { n: self.n, edges }
    }

    pub fn is_canonical(&self) -> bool {
        self.edges.windows(2).all(|w| w[0] < w[1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<&[usize]> {
        self.edges
            .get(e)
            .map(Vec::as_slice)
            .ok_or(Error::EdgeIndexOutOfRange { edge: e, m: self.m() })
    }

    pub fn rank(&self, e: usize) -> usize {
        self.edges[e].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.edges.iter().map(Vec::len).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for edge in &self.edges {
            for &v in edge {
                deg[v] += 1;
            }
        }
        deg
    }

    /// For each vertex, the ascending list of edges containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (e, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(e);
            }
        }
        inc
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn min_rank(&self) -> usize {
        self.edges.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_uniform(&self) -> bool {
        self.min_rank() == self.max_rank()
    }

    pub fn is_regular(&self) -> bool {
        let deg = self.degrees();
        deg.iter().min() == deg.iter().max()
    }

    /// True when every edge has rank exactly 2.
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(v, _)| v)
            .collect()
    }

    /// Pairwise-intersection linearity test.
    pub fn is_linear(&self) -> bool {
        self.first_nonlinear_pair().is_none()
    }

    /// The first pair of edges (in index order) sharing two or more vertices.
    pub fn first_nonlinear_pair(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                let shared = intersection_size(&self.edges[i], &self.edges[j]);
                if shared > 1 {
                    return Some((i, j, shared));
                }
            }
        }
        None
    }

    pub fn require_linear(&self) -> Result<()> {
        match self.first_nonlinear_pair() {
            Some((first, second, shared)) => Err(Error::NotLinear {
                first,
                second,
                shared,
            }),
            None => Ok(()),
        }
    }

    pub fn require_no_rank_one(&self) -> Result<()> {
        match self.edges.iter().position(|e| e.len() == 1) {
            Some(edge) => Err(Error::RankOneEdge { edge }),
            None => Ok(()),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate_edges(self.n, &self.edges)
    }

    /// Linearity via the incidence matrix: no 2x2 all-ones minor.
    ///
    /// Rows are vertex bitsets over edges; two rows sharing two set columns
    /// form such a minor. Independent of [`Hypergraph::is_linear`].
    pub fn is_linear_minor(&self) -> bool {
        let words = self.m().div_ceil(64);
        let mut rows = vec![vec![0u64; words]; self.n];
        for (e, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                rows[v][e / 64] |= 1 << (e % 64);
            }
        }
        for x in 0..self.n {
            for y in x + 1..self.n {
                let common: u32 = rows[x]
                    .iter()
                    .zip(&rows[y])
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                if common >= 2 {
                    return false;
                }
            }
        }
        true
    }

    /// The transpose of the incidence matrix.
    ///
    /// Vertex `i` of the dual is edge `i` of `self`, and edge `j` of the dual is
    /// the set of edges containing vertex `j`. Edge order follows vertex order,
    /// so `h.dual()?.dual()? == h` whenever the dual exists. It does not when
    /// a vertex is isolated or two vertices lie in exactly the same edges;
    /// [`Hypergraph::reduced`] removes both.
    pub fn dual(&self) -> Result<Hypergraph> {
        if let Some(vertex) = self.isolated_vertices().first().copied() {
            return Err(Error::IsolatedVertex { vertex });
        }
        Hypergraph::new(self.m(), self.incidence()).map_err(|e| match e {
            Error::DuplicateEdge { first, second } => Error::TwinVertices { first, second },
            other => other,
        })
    }

    /// Strips isolated vertices and merges vertices lying in exactly the
    /// same edges, keeping the smallest of each class. Returns the reduced
    /// hypergraph and, per new vertex, the old vertices it stands for.
    pub fn reduced(&self) -> (Hypergraph, Vec<Vec<usize>>) {
        let incidence = self.incidence();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut first_with: HashMap<&[usize], usize> = HashMap::new();
        let mut label = vec![usize::MAX; self.n];
        for (x, inc) in incidence.iter().enumerate().filter(|(_, inc)| !inc.is_empty()) {
            let class = *first_with.entry(inc.as_slice()).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[class].push(x);
            if classes[class][0] == x {
                label[x] = class;
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().filter(|&&x| label[x] != usize::MAX).map(|&x| label[x]).collect())
            .collect();
        (Hypergraph { n: classes.len(), edges }, classes)
    }

    /// Drops degree-0 vertices and relabels the rest in increasing order.
    /// Returns the old label of each new vertex.
    pub fn without_isolated(&self) -> (Hypergraph, Vec<usize>) {
        let deg = self.degrees();
        let kept: Vec<usize> = (0..self.n).filter(|&x| deg[x] > 0).collect();
        let mut label = vec![usize::MAX; self.n];
        for (new, &old) in kept.iter().enumerate() {
            label[old] = new;
        }
        let edges = self.edges.iter().map(|e| e.iter().map(|&x| label[x]).collect()).collect();
        (Hypergraph { n: kept.len(), edges }, kept)
    }

    /// `(sum of ranks, sum of degrees)`; both count the incidences.
    pub fn handshake(&self) -> (usize, usize) {
        let sum_ranks = self.edges.iter().map(Vec::len).sum();
        let sum_degrees = self.degrees().iter().sum();
        (sum_ranks, sum_degrees)
    }

    /// `H \ e`: same vertex set, edge `e` deleted, remaining order kept.
    pub fn remove_edge(&self, e: usize) -> Result<Hypergraph> {
        self.edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Hypergraph { n: self.n, edges })
    }

    /// Keeps only the edges selected by `keep`, over the full vertex set.
    pub(crate) fn filter_edges(&self, keep: impl Fn(&[usize]) -> bool) -> (Hypergraph, Vec<usize>) {
        let mut parent = Vec::new();
        let mut edges = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if keep(edge) {
                parent.push(e);
                edges.push(edge.clone());
            }
        }
        (Hypergraph { n: self.n, edges }, parent)
    }

    /// Whether every pair of distinct vertices lies in exactly one edge.
    pub fn covers_pairs_exactly_once(&self) -> bool {
        self.pair_coverage_defect().is_none()
    }

    /// First vertex pair not covered exactly once, with its multiplicity.
    pub fn pair_coverage_defect(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let mut count = vec![0usize; n * n];
        for edge in &self.edges {
            for (i, &x) in edge.iter().enumerate() {
                for &y in &edge[i + 1..] {
                    count[x * n + y] += 1;
                }
            }
        }
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| count[x * n + y] != 1)
            .map(|(x, y)| (x, y, count[x * n + y]))
    }

    pub fn analyze(&self) -> AnalysisReport {
        let deg = self.degrees();
        let (sum_ranks, sum_degrees) = self.handshake();
        debug_assert_eq!(sum_ranks, sum_degrees);
        AnalysisReport {
            n: self.n,
            m: self.m(),
            delta_min: deg.iter().copied().min().unwrap_or(0),
            delta_max: deg.iter().copied().max().unwrap_or(0),
            rho: self.min_rank(),
            p: self.max_rank(),
            max_d: derived::max_clique_degree(self),
            max_r: derived::max_clique_rank(self),
            linear: self.is_linear(),
            uniform: self.is_uniform(),
            regular: self.is_regular(),
            sum_ranks,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialization cannot fail")
    }
}

/// Parses the canonical JSON interchange format, `{"n": .., "edges": [[..], ..]}`.
///
/// The result is canonicalized.
pub fn parse(text: &str) -> Result<Hypergraph> {
    let raw: RawHypergraph = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    Hypergraph::canonical(raw.n, raw.edges)
}

pub fn serialize(h: &Hypergraph) -> String {
    h.to_json()
}

pub(crate) fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// The unique common vertex of two sorted edges, if they share exactly one.
pub(crate) fn common_vertex(a: &[usize], b: &[usize]) -> Option<usize> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}

/// Structural findings about an edge list. Never fails.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub rank1_edges: Vec<usize>,
    pub duplicate_edges: Vec<(usize, usize)>,
    pub out_of_range: bool,
    pub linear: bool,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.rank1_edges.is_empty() && self.duplicate_edges.is_empty() && !self.out_of_range && self.linear
    }
}

/// Validates a raw edge list, which need not satisfy the [`Hypergraph`]
/// invariants. Edges are compared as sets.
pub fn validate_edges(n: usize, edges: &[Vec<usize>]) -> ValidationReport {
    let sets: Vec<Vec<usize>> = edges
        .iter()
        .map(|e| {
            let mut s = e.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let mut report = ValidationReport {
        linear: true,
        ..Default::default()
    };
    for (i, s) in sets.iter().enumerate() {
        if s.len() == 1 {
            report.rank1_edges.push(i);
        }
        if s.iter().any(|&v| v >= n) {
            report.out_of_range = true;
        }
        for (j, t) in sets.iter().enumerate().skip(i + 1) {
            if s == t {
                report.duplicate_edges.push((i, j));
            }
            if intersection_size(s, t) > 1 {
                report.linear = false;
            }
        }
    }
    report
}

/// Scalar statistics of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub m: usize,
    /// Minimum vertex degree.
    #[serde(rename = "delta")]
    pub delta_min: usize,
    /// Maximum vertex degree.
    #[serde(rename = "Delta")]
    pub delta_max: usize,
    /// Minimum edge rank.
    pub rho: usize,
    /// Maximum edge rank.
    #[serde(rename = "P")]
    pub p: usize,
    #[serde(rename = "maxD")]
    pub max_d: usize,
    #[serde(rename = "maxR")]
    pub max_r: usize,
    pub linear: bool,
    pub uniform: bool,
    pub regular: bool,
    /// Number of incidences (sum of ranks = sum of degrees).
    pub sum_ranks: usize,
}

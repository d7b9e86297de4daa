use thiserror::Error;

/// Errors raised by construction, parsing and precondition checks.
///
/// Search outcomes (greedy failure, exhausted budgets, undecided verdicts)
/// are ordinary return values and never show up here.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("edge at position {edge} is empty")]
    EmptyEdge { edge: usize },

    #[error("edge at position {edge} contains vertex {vertex}, outside [0, {n})")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },

    #[error("edge at position {edge} repeats vertex {vertex}")]
    RepeatedVertex { edge: usize, vertex: usize },

    #[error("edges at positions {first} and {second} are the same set")]
    DuplicateEdge { first: usize, second: usize },

    #[error("vertex {vertex} is isolated; strip isolated vertices before taking the dual")]
    IsolatedVertex { vertex: usize },

    #[error("vertices {first} and {second} lie in the same edges, so the dual would repeat an edge")]
    TwinVertices { first: usize, second: usize },

    #[error("edge index {edge} out of range (m = {m})")]
    EdgeIndexOutOfRange { edge: usize, m: usize },

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexIndexOutOfRange { vertex: usize, n: usize },

    #[error("edge {edge} has rank 1")]
    RankOneEdge { edge: usize },

    #[error("hypergraph is not linear: edges {first} and {second} share {shared} vertices")]
    NotLinear {
        first: usize,
        second: usize,
        shared: usize,
    },

    #[error("hypergraph is not uniform (ranks {min}..={max})")]
    NotUniform { min: usize, max: usize },

    #[error("hypergraph is not a graph: edge {edge} has rank {rank}")]
    NotAGraph { edge: usize, rank: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance too large: {what} = {value} exceeds the configured maximum {max}")]
    TooLarge {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("coloring has no color for edge {edge}")]
    MissingColor { edge: usize },

    #[error("list assignment has no list for edge {edge}")]
    MissingList { edge: usize },

    #[error("mapping refers to edge {edge}, but the hypergraph has {m} edges")]
    UnknownEdge { edge: usize, m: usize },

    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

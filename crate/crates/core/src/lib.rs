//! Linear hypergraphs and their list edge colorings.
//!
//! The crate covers the data model ([`hypergraph`]), derived graphs and
//! clique statistics ([`derived`]), instance families ([`generators`]),
//! greedy/exact/list coloring ([`coloring`]), triangle counts and bound
//! checkers ([`bounds`]), and desk-scale conjecture checks and sweeps
//! ([`conjectures`]). [`dimacs`] exports line graphs for external solvers.

pub mod bounds;
pub mod coloring;
pub mod conjectures;
pub mod derived;
pub mod dimacs;
pub mod error;
pub mod generators;
pub mod hypergraph;

pub use error::{Error, Result};
pub use hypergraph::{parse, serialize, AnalysisReport, Hypergraph, ValidationReport};

//! DIMACS `.col` export of the line graph.

use std::fmt::Write;

use crate::derived::line_graph;
use crate::hypergraph::Hypergraph;

/// `p edge <m> <E>` followed by one 1-based `e i j` line per line-graph
/// edge, `i < j`, in lexicographic order.
pub fn export_dimacs(h: &Hypergraph) -> String {
    let lg = line_graph(h);
    let mut out = format!("p edge {} {}\n", h.m(), lg.edge_count());
    for (u, v) in lg.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("writing to a String");
    }
    out
}

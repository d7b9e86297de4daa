//! Named instances shared by the benchmarks in `benches/`.

use linhyper::generators::{complete_graph, near_pencil, projective_plane, random_linear, steiner_triple};
use linhyper::Hypergraph;

/// Instances small enough for the exact solver.
pub fn exact_instances() -> Vec<(&'static str, Hypergraph)> {
    vec![
        ("fano", projective_plane(2).unwrap()),
        ("pg3", projective_plane(3).unwrap()),
        ("k7", complete_graph(7).unwrap()),
        ("near_pencil7", near_pencil(7).unwrap()),
        ("sts9", steiner_triple(9).unwrap()),
    ]
}

/// Larger instances for the polynomial routines.
pub fn large_instances() -> Vec<(&'static str, Hypergraph)> {
    vec![
        ("pg13", projective_plane(13).unwrap()),
        ("sts99", steiner_triple(99).unwrap()),
        ("random60", random_linear(60, 400, 2, 5, 7).unwrap().hypergraph),
    ]
}

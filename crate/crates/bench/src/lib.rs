//! Shared inputs for the benchmark suite.

use graphalg_core::corpus::{o2, shared};
use graphalg_core::graph::SharedGraph;
use graphalg_core::unitary::PairSet;

pub fn o2_graph() -> SharedGraph {
    shared(o2())
}

/// The ex2 fixture's unitary over the two-loop graph.
pub fn ex2_pairs(g: &SharedGraph) -> PairSet {
    build(
        g,
        &[
            (&["1", "2", "2"], &["1", "2", "2"]),
            (&["1", "1"], &["1", "2", "1"]),
            (&["1", "2", "1"], &["1", "1"]),
            (&["2"], &["2"]),
        ],
    )
}

/// The ex1 fixture: an inner-automorphism presentation.
pub fn ex1_pairs(g: &SharedGraph) -> PairSet {
    build(
        g,
        &[
            (&["1", "1", "1"], &["1", "1", "1"]),
            (&["1", "2"], &["2", "1", "1"]),
            (&["1", "1", "2", "1"], &["1", "1", "2"]),
            (&["2", "1"], &["2", "1", "2"]),
            (&["1", "1", "2", "2"], &["1", "2"]),
            (&["2", "2"], &["2", "2"]),
        ],
    )
}

fn build(g: &SharedGraph, pairs: &[(&[&str], &[&str])]) -> PairSet {
    let pairs = pairs
        .iter()
        .map(|(mu, nu)| (g.path(mu).unwrap(), g.path(nu).unwrap()))
        .collect();
    PairSet::build(g.clone(), pairs).unwrap()
}

//! Shared inputs for the criterion benchmarks.

use minorforge::extremal::{random_graph_with_edges, threshold_edges, trial_rng};
use minorforge::{build_cockade, CockadeRecipe, Graph};

/// Random graphs on `n` vertices at the `(8,4)` edge threshold.
pub fn threshold_graphs(n: usize, count: usize) -> Vec<Graph> {
    (0..count as u64).map(|i| random_graph_with_edges(n, threshold_edges(n), &mut trial_rng(2024, i))).collect()
}

/// The chained cockade with `copies` copies.
pub fn cockade(copies: usize) -> Graph {
    build_cockade(&CockadeRecipe::chain(copies)).expect("chain recipes are valid")
}

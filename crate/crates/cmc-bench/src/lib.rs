//! Shared fixtures for the solver benchmarks.

use cmc_core::random::random_tree;
use cmc_core::{as_tree, TreeInstance};

/// Deterministic unweighted tree, the main scaling benchmark substrate.
pub fn unweighted_tree(n: usize, terminals: usize, seed: u64) -> TreeInstance {
    as_tree(&random_tree(n, terminals, 1..=1, seed), 1).expect("generated tree is valid")
}

/// Deterministic tree with heavy random weights.
pub fn weighted_tree(n: usize, terminals: usize, max_weight: u64, seed: u64) -> TreeInstance {
    as_tree(&random_tree(n, terminals, 1..=max_weight, seed), 1).expect("generated tree is valid")
}

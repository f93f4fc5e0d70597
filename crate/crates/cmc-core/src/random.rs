//! Seeded instance generators for tests and benchmarks. Every function is
//! deterministic in its seed.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Vertex, WeightedGraph};

/// A uniformly random attachment tree on `n` vertices with `terminals`
/// distinct random terminals and weights drawn from `weights`.
pub fn random_tree(
    n: usize,
    terminals: usize,
    weights: RangeInclusive<u64>,
    seed: u64,
) -> WeightedGraph {
    assert!(n >= 1 && terminals >= 1 && terminals <= n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 2..=n {
        let parent = rng.gen_range(1..v);
        let w = rng.gen_range(weights.clone());
        edges.push((parent, v, w));
    }
    let terms = sample_terminals(n, terminals, &mut rng);
    WeightedGraph::new(n, edges, terms).expect("generated tree is valid")
}

/// A random connected graph: a random spanning tree plus independent extra
/// edges with probability `extra_edge_prob`, weights drawn uniformly from
/// `weight_choices`.
pub fn random_connected_graph(
    n: usize,
    terminals: usize,
    weight_choices: &[u64],
    extra_edge_prob: f64,
    seed: u64,
) -> WeightedGraph {
    assert!(n >= 1 && terminals >= 1 && terminals <= n);
    assert!(!weight_choices.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut present = std::collections::BTreeSet::new();
    for v in 2..=n {
        let parent = rng.gen_range(1..v);
        let w = *weight_choices.choose(&mut rng).unwrap();
        edges.push((parent, v, w));
        present.insert((parent.min(v), parent.max(v)));
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if !present.contains(&(u, v)) && rng.gen_bool(extra_edge_prob) {
                let w = *weight_choices.choose(&mut rng).unwrap();
                edges.push((u, v, w));
            }
        }
    }
    let terms = sample_terminals(n, terminals, &mut rng);
    WeightedGraph::new(n, edges, terms).expect("generated graph is valid")
}

fn sample_terminals(n: usize, terminals: usize, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
    let mut all: Vec<Vertex> = (1..=n).collect();
    all.shuffle(rng);
    all.truncate(terminals);
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_the_seed() {
        let a = random_tree(20, 4, 0..=9, 42);
        let b = random_tree(20, 4, 0..=9, 42);
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.terminals(), b.terminals());
        let c = random_tree(20, 4, 0..=9, 43);
        assert!(a.edges() != c.edges() || a.terminals() != c.terminals());
    }

    #[test]
    fn graphs_are_connected_with_requested_terminals() {
        for seed in 0..20 {
            let g = random_connected_graph(7, 3, &[1, 2], 0.4, seed);
            assert_eq!(g.terminal_count(), 3);
            assert!(g.vertex_count() == 7);
        }
    }
}

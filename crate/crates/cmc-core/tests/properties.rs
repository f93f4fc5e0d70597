//! Cross-module property tests on randomized instances.

use proptest::prelude::*;

use cmc_core::oracle::{brute_force_cmc, repair_to_connected};
use cmc_core::random::{random_connected_graph, random_tree};
use cmc_core::{
    as_tree, enumerate_connected_cuts, evaluate, solve_capped_tree, solve_exact_tree,
    validate_connected, Vertex,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every cut edge lands in exactly two boundaries.
    #[test]
    fn boundary_sum_is_twice_cut_weight(seed in 0u64..10_000, n in 2usize..10, k in 1usize..5) {
        let k = k.min(n);
        let g = random_connected_graph(n, k, &[0, 1, 2, 5], 0.35, seed);
        let mut rng_state = seed;
        let assignment: Vec<Vertex> = (1..=n)
            .map(|v| {
                if g.is_terminal(v) {
                    v
                } else {
                    rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    g.terminals()[(rng_state >> 33) as usize % k]
                }
            })
            .collect();
        let sol = evaluate(&g, &assignment).unwrap();
        let cut_weight: u64 = sol.cut_edges.iter().map(|&e| g.edges()[e].w).sum();
        prop_assert_eq!(sol.boundaries.iter().sum::<u64>(), 2 * cut_weight);
        prop_assert_eq!(sol.cost, sol.boundaries.iter().copied().max().unwrap());
    }

    /// Cost evaluation does not depend on the order of the edge list.
    #[test]
    fn evaluate_ignores_edge_order(seed in 0u64..10_000, n in 2usize..9) {
        let g = random_connected_graph(n, 2.min(n), &[1, 3], 0.4, seed);
        let mut edges: Vec<(usize, usize, u64)> =
            g.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
        edges.reverse();
        let h = cmc_core::WeightedGraph::new(n, edges, g.terminals().to_vec()).unwrap();
        let assignment: Vec<Vertex> = (1..=n)
            .map(|v| if g.is_terminal(v) { v } else { g.terminals()[v % 2] })
            .collect();
        let a = evaluate(&g, &assignment).unwrap();
        let b = evaluate(&h, &assignment).unwrap();
        prop_assert_eq!(a.boundaries, b.boundaries);
        prop_assert_eq!(a.cost, b.cost);
    }

    /// The tree enumerator yields exactly the assignments that validate,
    /// each exactly once.
    #[test]
    fn enumeration_equals_validated_assignments(seed in 0u64..5_000, n in 1usize..9, k in 1usize..5) {
        let k = k.min(n);
        let g = random_tree(n, k, 0..=4, seed);
        let t = as_tree(&g, 1).unwrap();
        let enumerated: Vec<Vec<Vertex>> = enumerate_connected_cuts(&t)
            .unwrap()
            .iter()
            .map(|c| c.assignment[1..].to_vec())
            .collect();
        // exhaustive filter over all k^(n-k) assignments
        let free: Vec<Vertex> = (1..=n).filter(|&v| !g.is_terminal(v)).collect();
        let mut expected = Vec::new();
        let mut assignment: Vec<Vertex> = (1..=n).map(|v| if g.is_terminal(v) { v } else { 0 }).collect();
        let mut counters = vec![0usize; free.len()];
        loop {
            for (slot, &v) in counters.iter().zip(&free) {
                assignment[v - 1] = g.terminals()[*slot];
            }
            let sol = evaluate(&g, &assignment).unwrap();
            if validate_connected(&g, &sol).is_valid() {
                expected.push(sol.assignment[1..].to_vec());
            }
            let mut pos = free.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                counters[pos] += 1;
                if counters[pos] < k {
                    break;
                }
                counters[pos] = 0;
                if pos == 0 {
                    break;
                }
            }
            if counters.iter().all(|&c| c == 0) {
                break;
            }
        }
        expected.sort();
        let mut got = enumerated.clone();
        got.sort();
        got.dedup();
        prop_assert_eq!(got.len(), enumerated.len(), "no duplicates");
        prop_assert_eq!(got, expected);
    }

    /// Exact tree solver agrees with the general-graph oracle.
    #[test]
    fn tree_dp_matches_graph_oracle(seed in 0u64..5_000, n in 2usize..10, k in 1usize..5) {
        let k = k.min(n);
        let g = random_tree(n, k, 0..=8, seed);
        let t = as_tree(&g, 1).unwrap();
        let dp = solve_exact_tree(&t).unwrap();
        let oracle = brute_force_cmc(&g).unwrap();
        prop_assert_eq!(dp.cost, oracle.cost);
    }

    /// Feasibility at a cap is monotone and the cost stable.
    #[test]
    fn capped_solver_is_monotone(seed in 0u64..5_000, n in 2usize..10) {
        let g = random_tree(n, 2.min(n), 0..=9, seed);
        let t = as_tree(&g, 1).unwrap();
        let opt = solve_exact_tree(&t).unwrap().cost;
        for cap in [opt, opt + 1, opt + 7] {
            let r = solve_capped_tree(&t, cap).unwrap();
            prop_assert_eq!(r.map(|r| r.cost), Some(opt));
        }
        if opt > 0 {
            prop_assert!(solve_capped_tree(&t, opt - 1).unwrap().is_none());
        }
    }

    /// Repair output is always connected and never more expensive.
    #[test]
    fn repair_is_sound(seed in 0u64..5_000, n in 3usize..9, pick in any::<u64>()) {
        let g = random_connected_graph(n, 3.min(n), &[1, 2], 0.45, seed);
        let k = g.terminal_count();
        let mut state = pick;
        let assignment: Vec<Vertex> = (1..=n)
            .map(|v| {
                if g.is_terminal(v) {
                    v
                } else {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(97);
                    g.terminals()[(state >> 31) as usize % k]
                }
            })
            .collect();
        let cut = evaluate(&g, &assignment).unwrap();
        let fixed = repair_to_connected(&g, &cut).unwrap();
        prop_assert!(fixed.cost <= cut.cost);
        prop_assert!(validate_connected(&g, &fixed).is_valid());
    }
}

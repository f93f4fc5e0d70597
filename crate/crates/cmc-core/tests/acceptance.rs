//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measured runtime (`--nocapture` to see them). Criteria with a
//! stated time budget assert it; the test profile builds optimized.

use std::time::Instant;

use cmc_core::approx::{solve_fptas, FptasConfig};
use cmc_core::kernel::{kernelize, solve_fpt};
use cmc_core::oracle::{
    brute_force_cmc, brute_force_mmc, gap_search, repair_to_connected, verify_stc_bounds,
    BoundCheck,
};
use cmc_core::polytope::verify_face_structure;
use cmc_core::random::{random_connected_graph, random_tree};
use cmc_core::reductions::{gen_exact_cost, gen_k3n, gen_tw2, gen_xc_tree, verify_tw2_structure};
use cmc_core::{
    as_tree, evaluate, exact_cost_decide, solve_exact_tree, validate_connected, NumberInstance,
    Vertex,
};

/// All non-decreasing multisets of values in `1..=max_val` with length in
/// `1..=max_len`.
fn multisets(max_len: usize, max_val: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u64>> = (1..=max_val).map(|a| vec![a]).collect();
    while let Some(cur) = stack.pop() {
        if cur.len() < max_len {
            for a in *cur.last().unwrap()..=max_val {
                let mut next = cur.clone();
                next.push(a);
                stack.push(next);
            }
        }
        out.push(cur);
    }
    out.sort();
    out
}

fn partition_solvable(nums: &[u64], target: u64) -> bool {
    (0..1u32 << nums.len()).any(|mask| {
        let s: u64 = nums
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .sum();
        s == target
    })
}

fn threeway_solvable(nums: &[u64], target: u64) -> bool {
    fn rec(i: usize, nums: &[u64], parts: &mut [u64; 3], target: u64) -> bool {
        if i == nums.len() {
            return parts.iter().all(|&p| p == target);
        }
        for j in 0..3 {
            if parts[j] + nums[i] <= target {
                parts[j] += nums[i];
                if rec(i + 1, nums, parts, target) {
                    return true;
                }
                parts[j] -= nums[i];
            }
        }
        false
    }
    rec(0, nums, &mut [0; 3], target)
}

/// Criterion 1: on small trees the dynamic program, the kernelization
/// route and the exhaustive graph oracle agree exactly.
#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let mut checked = 0;
    for seed in 0..500u64 {
        let n = 2 + (seed as usize) % 9; // 2..=10
        let k = (1 + (seed as usize / 9) % 4).min(n);
        let g = random_tree(n, k, 0..=8, seed);
        let t = as_tree(&g, 1).unwrap();
        let dp = solve_exact_tree(&t).unwrap();
        let fpt = solve_fpt(&t).unwrap();
        let oracle = brute_force_cmc(&g).unwrap();
        assert_eq!(dp.cost, fpt.cost, "seed {seed}");
        assert_eq!(dp.cost, oracle.cost, "seed {seed}");
        for res in [&dp, &fpt, &oracle] {
            assert!(
                validate_connected(&g, &res.solution).is_valid(),
                "seed {seed}"
            );
            assert_eq!(res.solution.cost, res.cost, "seed {seed}");
        }
        checked += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed <= 60.0,
        "criterion 1 took {elapsed:.1}s, budget 60s"
    );
    println!("criterion 1 PASS: {checked} trees, three exact routes agree ({elapsed:.1}s)");
}

/// Criterion 2: the FPTAS respects its ratio on heavy weights and is exact
/// in its first phase.
#[test]
fn criterion_2_fptas_guarantee() {
    let start = Instant::now();
    let epsilons: Vec<(String, FptasConfig)> = ["0.1", "0.5", "1.0"]
        .iter()
        .map(|s| (s.to_string(), FptasConfig::from_decimal_str(s).unwrap()))
        .collect();
    let mut phase1_hits = 0;
    for seed in 0..200u64 {
        let n = 3 + (seed as usize) % 28; // 3..=30
        let k = (1 + (seed as usize / 4) % 8).min(n);
        let g = random_tree(n, k, 1..=1_000_000, 1000 + seed);
        let t = as_tree(&g, 1).unwrap();
        let exact = solve_exact_tree(&t).unwrap().cost;
        for (name, eps) in &epsilons {
            let approx = solve_fptas(&t, eps).unwrap();
            assert!(
                eps.within_ratio(approx.cost, exact),
                "seed {seed} eps {name}: {} exceeds (1+eps)·{exact}",
                approx.cost
            );
            assert!(approx.cost >= exact, "seed {seed} eps {name}");
            assert!(validate_connected(&g, &approx.solution).is_valid());
            if exact <= eps.phase1_cap(n) {
                phase1_hits += 1;
                assert_eq!(
                    approx.cost, exact,
                    "seed {seed} eps {name}: phase 1 must be exact"
                );
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed <= 120.0,
        "criterion 2 took {elapsed:.1}s, budget 120s"
    );
    println!(
        "criterion 2 PASS: 200 trees x 3 epsilons, zero ratio violations, \
         {phase1_hits} phase-1 cases exact ({elapsed:.1}s)"
    );
}

/// Criterion 3: kernels stay within `2|Γ| - 1` vertices and preserve the
/// optimum exactly.
#[test]
fn criterion_3_kernel_bound() {
    let start = Instant::now();
    for seed in 0..200u64 {
        let n = 10 + (seed as usize * 7) % 191; // 10..=200
        let k = (1 + (seed as usize) % 8).min(n);
        let g = random_tree(n, k, 0..=50, 2000 + seed);
        let t = as_tree(&g, 1).unwrap();
        let mapping = kernelize(&t).unwrap();
        assert!(
            mapping.kernel.graph().vertex_count() < 2 * k,
            "seed {seed}: kernel has {} vertices for {k} terminals",
            mapping.kernel.graph().vertex_count()
        );
        assert!(mapping.kernel.graph().edge_count() <= 2 * k.saturating_sub(1));
        let fpt = solve_fpt(&t).unwrap();
        let dp = solve_exact_tree(&t).unwrap();
        assert_eq!(fpt.cost, dp.cost, "seed {seed}");
        assert!(validate_connected(&g, &fpt.solution).is_valid());
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion 3 PASS: 200 kernels within 2|Γ|-1 vertices, optimum preserved ({elapsed:.1}s)"
    );
}

/// Criterion 4: with three terminals the connected and unconstrained
/// optima coincide, and repair never raises the cost.
#[test]
fn criterion_4_three_terminal_equality() {
    let start = Instant::now();
    for seed in 0..300u64 {
        let n = 3 + (seed as usize) % 5; // 3..=7
        let g = random_connected_graph(n, 3.min(n), &[1, 2], 0.45, 3000 + seed);
        let cmc = brute_force_cmc(&g).unwrap().cost;
        let mmc = brute_force_mmc(&g).unwrap().cost;
        assert_eq!(cmc, mmc, "seed {seed}");
        // a random (usually disconnected) multiway cut repairs without
        // getting more expensive
        let k = g.terminal_count();
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        let assignment: Vec<Vertex> = (1..=n)
            .map(|v| {
                if g.is_terminal(v) {
                    v
                } else {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    g.terminals()[(state >> 33) as usize % k]
                }
            })
            .collect();
        let cut = evaluate(&g, &assignment).unwrap();
        let repaired = repair_to_connected(&g, &cut).unwrap();
        assert!(repaired.cost <= cut.cost, "seed {seed}");
        assert!(validate_connected(&g, &repaired).is_valid(), "seed {seed}");
        assert!(repaired.cost >= cmc, "seed {seed}: repair beat the optimum");
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion 4 PASS: 300 graphs, mmc = cmc and repair monotone ({elapsed:.1}s)");
}

/// Criterion 5: four terminals separate the two problems on five vertices.
#[test]
fn criterion_5_four_terminal_gap() {
    let start = Instant::now();
    let g = gap_search(5, &[1, 2])
        .unwrap()
        .expect("a gap instance exists on 5 vertices");
    let mmc = brute_force_mmc(&g).unwrap().cost;
    let cmc = brute_force_cmc(&g).unwrap().cost;
    assert!(
        mmc < cmc,
        "gap instance must separate: mmc {mmc}, cmc {cmc}"
    );
    assert!(g.vertex_count() <= 5);
    assert_eq!(g.terminal_count(), 4);
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed <= 10.0,
        "criterion 5 took {elapsed:.1}s, budget 10s"
    );
    println!(
        "criterion 5 PASS: gap witness on {} vertices with mmc {mmc} < cmc {cmc} ({elapsed:.1}s)",
        g.vertex_count()
    );
}

/// Criterion 6: the `K_{3,n}` reduction decides three-way partitioning.
#[test]
fn criterion_6_k3n_reduction() {
    let start = Instant::now();
    let mut checked = 0;
    for numbers in multisets(6, 10) {
        if numbers.iter().sum::<u64>() % 3 != 0 {
            continue;
        }
        let nums = NumberInstance::three_way(numbers.clone()).unwrap();
        let gen = gen_k3n(&nums).unwrap();
        let cost = brute_force_cmc(&gen.graph).unwrap().cost;
        let threshold = gen.decision_cost();
        assert!(cost >= threshold, "{numbers:?}");
        assert_eq!(
            cost == threshold,
            threeway_solvable(nums.numbers(), nums.target()),
            "{numbers:?}"
        );
        checked += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion 6 PASS: {checked} three-way instances, iff verified ({elapsed:.1}s)");
}

/// Criterion 7: the tree-width-two reduction decides partition, on a graph
/// that is bipartite and planar by construction.
#[test]
fn criterion_7_tw2_reduction() {
    let start = Instant::now();
    let mut checked = 0;
    for numbers in multisets(5, 10) {
        if numbers.iter().sum::<u64>() % 2 != 0 {
            continue;
        }
        let nums = NumberInstance::partition(numbers.clone()).unwrap();
        let gen = gen_tw2(&nums).unwrap();
        verify_tw2_structure(&gen).unwrap();
        let cost = brute_force_cmc(&gen.graph).unwrap().cost;
        let threshold = gen.decision_cost();
        assert!(cost >= threshold, "{numbers:?}");
        assert_eq!(
            cost == threshold,
            partition_solvable(nums.numbers(), nums.target()),
            "{numbers:?}"
        );
        checked += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion 7 PASS: {checked} partition instances, iff and structure verified ({elapsed:.1}s)");
}

/// Criterion 8: face structure of the gadget-tree polytope.
#[test]
fn criterion_8_face_structure() {
    let start = Instant::now();
    let mut checked = 0;
    for numbers in multisets(5, 10) {
        let sum: u64 = numbers.iter().sum();
        if !sum.is_multiple_of(2) {
            continue;
        }
        let b = sum / 2;
        if numbers.iter().any(|&a| 2 * a > 3 * b) {
            continue; // gadget weights would degenerate
        }
        let nums = NumberInstance::partition(numbers.clone()).unwrap();
        let gen = gen_xc_tree(&nums).unwrap();
        let report = verify_face_structure(&gen).unwrap();
        assert!(report.all_ok(), "{numbers:?}: {report:?}");
        assert_eq!(report.min_value, gen.decision_cost(), "{numbers:?}");
        // independent recomputation of the partition solution set
        let n = numbers.len();
        let mut expected = std::collections::BTreeSet::new();
        for mask in 0..1u64 << n {
            let s: u64 = numbers
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a)
                .sum();
            if s == b {
                expected.insert((0..n).map(|i| (mask >> i & 1) as u8).collect::<Vec<u8>>());
            }
        }
        assert_eq!(report.projection, expected, "{numbers:?}");
        checked += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion 8 PASS: {checked} gadget trees, faces F and G as predicted ({elapsed:.1}s)"
    );
}

/// Criterion 9: exact-cost decisions at `scale·7B/2` mirror partition
/// solvability.
#[test]
fn criterion_9_exact_cost() {
    let start = Instant::now();
    let mut checked = 0;
    for numbers in multisets(5, 10) {
        let sum: u64 = numbers.iter().sum();
        if !sum.is_multiple_of(2) {
            continue;
        }
        let b = sum / 2;
        if numbers.iter().any(|&a| 2 * a > 3 * b) {
            continue;
        }
        let nums = NumberInstance::partition(numbers.clone()).unwrap();
        let gen = gen_exact_cost(&nums).unwrap();
        let t = as_tree(&gen.graph, 1).unwrap();
        let target = gen.decision_cost();
        let witness = exact_cost_decide(&t, target).unwrap();
        let solvable = partition_solvable(nums.numbers(), nums.target());
        assert_eq!(witness.is_some(), solvable, "{numbers:?}");
        if let Some(cut) = witness {
            assert_eq!(cut.cost, target, "{numbers:?}");
            assert!(
                validate_connected(&gen.graph, &cut).is_valid(),
                "{numbers:?}"
            );
        }
        checked += 1;
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion 9 PASS: {checked} exact-cost decisions match partition solvability ({elapsed:.1}s)");
}

/// Criterion 10: congestion bounds hold on random graphs; the triangle is
/// tight on both sides.
#[test]
fn criterion_10_stc_lemmas() {
    let start = Instant::now();
    let mut lower_checked = 0;
    let mut upper_checked = 0;
    for seed in 0..30u64 {
        let n = 3 + (seed as usize) % 5; // 3..=7
        let g = random_connected_graph(n, 1, &[1], 0.5, 4000 + seed);
        for r in 1..=n {
            let report = verify_stc_bounds(&g, r).unwrap();
            match report.lower {
                BoundCheck::Holds { .. } => lower_checked += 1,
                BoundCheck::Violated { lhs, rhs } => {
                    panic!("seed {seed} r {r}: lower bound violated ({lhs} < {rhs})")
                }
                BoundCheck::NotApplicable(_) => {}
            }
            match report.upper {
                BoundCheck::Holds { .. } => upper_checked += 1,
                BoundCheck::Violated { lhs, rhs } => {
                    panic!("seed {seed} r {r}: upper bound violated ({lhs} > {rhs})")
                }
                BoundCheck::NotApplicable(_) => {}
            }
        }
    }
    assert!(lower_checked > 0 && upper_checked > 0);
    // the triangle: congestion 2, both bounds tight
    let triangle =
        cmc_core::WeightedGraph::new(3, vec![(1, 2, 1), (1, 3, 1), (2, 3, 1)], vec![1]).unwrap();
    let report = verify_stc_bounds(&triangle, 1).unwrap();
    assert_eq!(report.stc, 2);
    assert_eq!(report.lower, BoundCheck::Holds { lhs: 2, rhs: 2 });
    assert_eq!(report.upper, BoundCheck::Holds { lhs: 2, rhs: 2 });
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "criterion 10 PASS: 30 graphs, {lower_checked} lower / {upper_checked} upper checks hold, \
         triangle tight at 2 ({elapsed:.1}s)"
    );
}

/// Criterion 11: unweighted instances solve in polynomial time at
/// n = 10000.
#[test]
fn criterion_11_unweighted_scale() {
    let start = Instant::now();
    for seed in 0..5u64 {
        let g = random_tree(10_000, 50, 1..=1, 5000 + seed);
        let t = as_tree(&g, 1).unwrap();
        let res = solve_exact_tree(&t).unwrap();
        assert_eq!(res.solution.cost, res.cost);
        assert!(validate_connected(&g, &res.solution).is_valid());
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed <= 30.0,
        "criterion 11 took {elapsed:.1}s, budget 30s"
    );
    println!("criterion 11 PASS: five 10000-vertex unweighted trees solved ({elapsed:.1}s)");
}

//! FPTAS for weighted min-max connected multiway cut on trees, by rounding
//! and scaling around the capped exact solver.
//!
//! Phase 1 asks the capped solver for a cut of cost at most `⌈n/ε⌉`; a hit
//! is exactly optimal. Otherwise the optimum exceeds `n/ε` and phase 2
//! guesses it by halving down from the canonical-cut upper bound: for each
//! guess `G` the weights are divided by `d = max(1, ⌊εG/(2n)⌋)` and rounded
//! up, the scaled instance is solved under a cap wide enough to contain the
//! true optimum whenever `G` is an upper bound for it, and the witness is
//! re-costed under the original weights. For the guess falling in
//! `[OPT, 2·OPT)` the rounding error is below `ε·OPT`, which yields the
//! `(1+ε)` guarantee; all arithmetic is exact in integers.

use crate::cut::evaluate;
use crate::error::{Error, Result};
use crate::tree::TreeInstance;
use crate::treesolve::{solve_capped_tree_with_limits, SolveLimits, SolveResult};

/// An approximation parameter `ε > 0` as an exact rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FptasConfig {
    num: u64,
    den: u64,
}

impl FptasConfig {
    /// `ε = num / den`, reduced; zero is rejected.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidInput("epsilon must be positive".into()));
        }
        let g = gcd(num, den);
        Ok(FptasConfig {
            num: num / g,
            den: den / g,
        })
    }

    /// Parses a decimal like `0.1`, `.25`, or `2`.
    pub fn from_decimal_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::InvalidInput(format!("cannot parse epsilon {s:?}")));
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(Error::InvalidInput(format!("cannot parse epsilon {s:?}")));
        }
        if int_part.len() + frac_part.len() > 18 {
            return Err(Error::InvalidInput(format!(
                "epsilon {s:?} has too many digits"
            )));
        }
        let digits = format!("{int_part}{frac_part}");
        let num: u64 = digits.parse().unwrap_or(0);
        let den = 10u64.pow(frac_part.len() as u32);
        Self::new(num, den)
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// `⌈n/ε⌉`, the cap below which the exact solver is cheap.
    pub fn phase1_cap(&self, n: usize) -> u64 {
        div_ceil_u128(n as u128 * self.den as u128, self.num as u128)
    }

    /// `max(1, ⌊εG/(2n)⌋)`, the scale divisor for guess `G`.
    pub fn divisor(&self, guess: u64, n: usize) -> u64 {
        let d = (self.num as u128 * guess as u128) / (self.den as u128 * 2 * n as u128);
        (d.max(1)).min(u64::MAX as u128) as u64
    }

    /// `⌈(1+ε)G/d⌉ + n`, the scaled-instance cap for guess `G`.
    pub fn guess_cap(&self, guess: u64, divisor: u64, n: usize) -> u64 {
        let num = (self.num as u128 + self.den as u128) * guess as u128;
        let cap = div_ceil_u128(num, self.den as u128 * divisor as u128) as u128 + n as u128;
        cap.min(u64::MAX as u128) as u64
    }

    /// Exact comparison `cost ≤ (1 + ε) · reference`.
    pub fn within_ratio(&self, cost: u64, reference: u64) -> bool {
        (cost as u128) * (self.den as u128) <= (reference as u128) * (self.den + self.num) as u128
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn div_ceil_u128(a: u128, b: u128) -> u64 {
    (a.div_ceil(b)).min(u64::MAX as u128) as u64
}

/// Every weight replaced by `⌈w/d⌉`; structure, terminals and root are
/// unchanged.
pub fn scale_weights(tree: &TreeInstance, d: u64) -> Result<TreeInstance> {
    if d == 0 {
        return Err(Error::InvalidInput("scale divisor must be positive".into()));
    }
    let graph = tree.graph().map_weights(|w| w.div_ceil(d))?;
    TreeInstance::new(graph, tree.root())
}

/// A `(1+ε)`-approximate cut, exact whenever the optimum is at most `n/ε`.
pub fn solve_fptas(tree: &TreeInstance, eps: &FptasConfig) -> Result<SolveResult> {
    solve_fptas_with_limits(tree, eps, &SolveLimits::default())
}

pub fn solve_fptas_with_limits(
    tree: &TreeInstance,
    eps: &FptasConfig,
    limits: &SolveLimits,
) -> Result<SolveResult> {
    let n = tree.graph().vertex_count();
    // phase 1: optimal whenever the optimum is small
    let phase1 = eps.phase1_cap(n);
    if let Some(res) = solve_capped_tree_with_limits(tree, phase1, limits)? {
        return Ok(res);
    }

    // phase 2: guess-and-scale downwards from the canonical upper bound
    let root = *tree.graph().terminals().iter().min().unwrap();
    let rooted = if tree.root() == root {
        tree.clone()
    } else {
        tree.rerooted(root)?
    };
    let upper = rooted.canonical_cut()?.cost;
    let mut incumbent: Option<SolveResult> = None;
    let floor_guess = phase1.max(1);
    let mut guess = upper;
    loop {
        let d = eps.divisor(guess, n);
        let scaled = scale_weights(&rooted, d)?;
        let cap = eps.guess_cap(guess, d, n);
        match solve_capped_tree_with_limits(&scaled, cap, limits)? {
            Some(res) => {
                // the witness is a cut of the original instance; re-cost it
                let original = evaluate(rooted.graph(), &res.solution.assignment[1..])?;
                let cost = original.cost;
                let better = incumbent.as_ref().is_none_or(|b| cost <= b.cost);
                if better {
                    incumbent = Some(SolveResult {
                        cost,
                        solution: original,
                    });
                }
            }
            // no cut fits under this guess's cap, so the optimum exceeds
            // the guess; smaller guesses cannot help
            None => break,
        }
        if guess <= floor_guess {
            break;
        }
        guess = guess.div_ceil(2);
    }
    incumbent.ok_or_else(|| {
        Error::Internal("no guess produced a witness despite a feasible upper bound".into())
    })
}

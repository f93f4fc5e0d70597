//! `cmc` command line tool: solve, generate, and verify min-max connected
//! multiway cut instances.
//!
//! Exit codes: 0 success, 1 input or resource error, 2 infeasible (cap or
//! exact-cost target unattainable, or no gap found), 3 failed verification.

pub mod format;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use cmc_core::approx::{solve_fptas, FptasConfig};
use cmc_core::kernel::solve_fpt;
use cmc_core::oracle::{
    brute_force_cmc_with_limits, brute_force_mmc_with_limits, gap_search,
    stc_brute_force_with_limits, verify_stc_bounds_with_limits, BoundCheck, OracleLimits,
};
use cmc_core::polytope::{cut_polytope_vertices_with_limit, verify_face_structure};
use cmc_core::reductions::{
    gen_exact_cost, gen_k3n, gen_tw2, gen_xc_tree, subsetsum_to_partition, GeneratedInstance,
};
use cmc_core::treesolve::SolveResult;
use cmc_core::{
    as_tree, evaluate, exact_cost_decide, solve_capped_tree, solve_exact_tree, validate_connected,
    NumberInstance, TreeInstance, WeightedGraph,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Parser)]
#[command(
    name = "cmc",
    version,
    about = "min-max connected multiway cut toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Exact,
    Fptas,
    Fpt,
    Oracle,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Reduction {
    K3n,
    Tw2,
    Xc,
    Exactcost,
    Ss2part,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Cmc,
    Mmc,
}

#[derive(Subcommand)]
pub enum Command {
    /// Solve an instance and write a solution file
    Solve {
        /// Instance file
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// Output file (stdout when omitted)
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Algorithm: exact, fptas and fpt need a tree instance
        #[arg(long, value_enum, default_value = "exact")]
        algo: Algo,
        /// Approximation parameter for --algo fptas, e.g. 0.5
        #[arg(long)]
        eps: Option<String>,
        /// Feasibility cap for --algo exact; exits 2 when no cut fits
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Generate a reduction instance from a list of numbers
    Gen {
        #[arg(long, value_enum)]
        reduction: Reduction,
        /// Comma-separated positive integers
        #[arg(long)]
        numbers: String,
        /// Subset-sum target (ss2part only)
        #[arg(long)]
        target: Option<u64>,
        /// Output file; annotations go to `<file>.ann` (stdout when omitted)
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Check a solution file against an instance
    Verify {
        #[arg(short = 'i', long)]
        instance: PathBuf,
        #[arg(short = 's', long)]
        solution: PathBuf,
    },
    /// Exhaustive exact solve on a small general graph
    Oracle {
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// cmc (connected) or mmc (unconstrained)
        #[arg(long, value_enum, default_value = "cmc")]
        mode: OracleMode,
        /// Search node budget
        #[arg(long)]
        limit: Option<u64>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Brute-force spanning tree congestion
    Stc {
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// Spanning tree budget
        #[arg(long)]
        limit: Option<u64>,
        /// Also verify the congestion/cut bounds around this vertex
        #[arg(long)]
        root: Option<usize>,
    },
    /// Search for an instance separating connected from unconstrained cuts
    Gap {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Comma-separated candidate edge weights
        #[arg(long, default_value = "1,2")]
        weights: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Enumerate the connected-cut polytope vertices of a tree
    Polytope {
        /// Tree instance file
        #[arg(short = 'i', long, conflicts_with = "numbers")]
        input: Option<PathBuf>,
        /// Generate the gadget tree for these numbers and include the face
        /// report
        #[arg(long)]
        numbers: Option<String>,
        /// Enumeration vertex limit
        #[arg(long)]
        limit: Option<usize>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a tree has a cut of exactly the given cost
    Exactcost {
        #[arg(short = 'i', long)]
        input: PathBuf,
        #[arg(long)]
        target: u64,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

/// An error carrying its process exit code.
pub struct CmdError {
    pub code: i32,
    pub message: String,
}

impl CmdError {
    fn input(msg: impl Into<String>) -> Self {
        CmdError {
            code: EXIT_INPUT,
            message: msg.into(),
        }
    }

    fn infeasible(msg: impl Into<String>) -> Self {
        CmdError {
            code: EXIT_INFEASIBLE,
            message: msg.into(),
        }
    }

    fn invalid(msg: impl Into<String>) -> Self {
        CmdError {
            code: EXIT_INVALID,
            message: msg.into(),
        }
    }
}

impl From<cmc_core::Error> for CmdError {
    fn from(e: cmc_core::Error) -> Self {
        CmdError::input(e.to_string())
    }
}

pub fn run(cli: Cli) -> Result<(), CmdError> {
    match cli.command {
        Command::Solve {
            input,
            output,
            algo,
            eps,
            cap,
        } => solve_cmd(&input, output.as_deref(), algo, eps, cap),
        Command::Gen {
            reduction,
            numbers,
            target,
            output,
        } => gen_cmd(reduction, &numbers, target, output.as_deref()),
        Command::Verify { instance, solution } => verify_cmd(&instance, &solution),
        Command::Oracle {
            input,
            mode,
            limit,
            output,
        } => oracle_cmd(&input, mode, limit, output.as_deref()),
        Command::Stc { input, limit, root } => stc_cmd(&input, limit, root),
        Command::Gap {
            max_n,
            weights,
            output,
        } => gap_cmd(max_n, &weights, output.as_deref()),
        Command::Polytope {
            input,
            numbers,
            limit,
            output,
        } => polytope_cmd(
            input.as_deref(),
            numbers.as_deref(),
            limit,
            output.as_deref(),
        ),
        Command::Exactcost {
            input,
            target,
            output,
        } => exactcost_cmd(&input, target, output.as_deref()),
    }
}

fn read_instance(path: &Path) -> Result<WeightedGraph, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::input(format!("cannot read {}: {e}", path.display())))?;
    format::parse_instance(&text).map_err(|e| CmdError::input(format!("{}: {e}", path.display())))
}

fn read_tree(path: &Path) -> Result<TreeInstance, CmdError> {
    let g = read_instance(path)?;
    if !g.is_tree() {
        return Err(CmdError::input(format!(
            "{}: a tree instance is required ({} edges on {} vertices)",
            path.display(),
            g.edge_count(),
            g.vertex_count()
        )));
    }
    Ok(as_tree(&g, 1)?)
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CmdError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CmdError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve_cmd(
    input: &Path,
    output: Option<&Path>,
    algo: Algo,
    eps: Option<String>,
    cap: Option<u64>,
) -> Result<(), CmdError> {
    if cap.is_some() && algo != Algo::Exact {
        return Err(CmdError::input("--cap only applies to --algo exact"));
    }
    let result: SolveResult = match algo {
        Algo::Oracle => {
            let g = read_instance(input)?;
            brute_force_cmc_with_limits(&g, &OracleLimits::default())?
        }
        Algo::Exact => {
            let t = read_tree(input)?;
            match cap {
                None => solve_exact_tree(&t)?,
                Some(k) => solve_capped_tree(&t, k)?.ok_or_else(|| {
                    CmdError::infeasible(format!("no connected multiway cut of cost at most {k}"))
                })?,
            }
        }
        Algo::Fpt => solve_fpt(&read_tree(input)?)?,
        Algo::Fptas => {
            let eps = eps.ok_or_else(|| CmdError::input("--algo fptas requires --eps"))?;
            let eps = FptasConfig::from_decimal_str(&eps)?;
            solve_fptas(&read_tree(input)?, &eps)?
        }
    };
    emit(output, &format::write_solution(&result.solution))
}

fn parse_numbers(csv: &str) -> Result<Vec<u64>, CmdError> {
    csv.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| CmdError::input(format!("cannot parse number {s:?}")))
        })
        .collect()
}

fn sidecar(gen: &GeneratedInstance) -> String {
    let mut out = format!("reduction {}\nscale {}\n", gen.kind.name(), gen.scale);
    let _ = writeln!(out, "decision-cost {}", gen.decision_cost());
    for (name, v) in &gen.annotations.vertices {
        let _ = writeln!(out, "vertex {name} {v}");
    }
    for (name, e) in &gen.annotations.edges {
        let edge = gen.graph.edges()[*e];
        let _ = writeln!(out, "edge {name} {} {} {}", edge.u, edge.v, edge.w);
    }
    out
}

fn gen_cmd(
    reduction: Reduction,
    numbers: &str,
    target: Option<u64>,
    output: Option<&Path>,
) -> Result<(), CmdError> {
    let numbers = parse_numbers(numbers)?;
    if reduction == Reduction::Ss2part {
        let target =
            target.ok_or_else(|| CmdError::input("--reduction ss2part requires --target"))?;
        let ss = NumberInstance::subset_sum(numbers, target)?;
        let part = subsetsum_to_partition(&ss)?;
        let csv = part
            .numbers()
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        return emit(
            output,
            &format!("numbers {csv}\ntarget {}\n", part.target()),
        );
    }
    if target.is_some() {
        return Err(CmdError::input(
            "--target only applies to --reduction ss2part",
        ));
    }
    let gen = match reduction {
        Reduction::K3n => gen_k3n(&NumberInstance::three_way(numbers)?)?,
        Reduction::Tw2 => gen_tw2(&NumberInstance::partition(numbers)?)?,
        Reduction::Xc => gen_xc_tree(&NumberInstance::partition(numbers)?)?,
        Reduction::Exactcost => gen_exact_cost(&NumberInstance::partition(numbers)?)?,
        Reduction::Ss2part => unreachable!(),
    };
    let instance = format::write_instance(&gen.graph);
    match output {
        Some(path) => {
            emit(Some(path), &instance)?;
            let ann_path = PathBuf::from(format!("{}.ann", path.display()));
            emit(Some(&ann_path), &sidecar(&gen))
        }
        None => {
            // annotations ride along as comments so the stream still
            // parses as an instance file
            let commented: String = sidecar(&gen).lines().map(|l| format!("# {l}\n")).collect();
            emit(None, &format!("{instance}{commented}"))
        }
    }
}

fn verify_cmd(instance: &Path, solution: &Path) -> Result<(), CmdError> {
    let g = read_instance(instance)?;
    let text = std::fs::read_to_string(solution)
        .map_err(|e| CmdError::input(format!("cannot read {}: {e}", solution.display())))?;
    let sol = format::parse_solution(&text)
        .map_err(|e| CmdError::input(format!("{}: {e}", solution.display())))?;
    let n = g.vertex_count();
    if sol.assignment.len() != n {
        return Err(CmdError::input(format!(
            "solution assigns {} vertices, instance has {n}",
            sol.assignment.len()
        )));
    }
    let mut assignment = vec![0; n];
    let mut seen = vec![false; n + 1];
    for &(v, t) in &sol.assignment {
        if v == 0 || v > n {
            return Err(CmdError::input(format!(
                "assignment names unknown vertex {v}"
            )));
        }
        if seen[v] {
            return Err(CmdError::input(format!("vertex {v} assigned twice")));
        }
        seen[v] = true;
        assignment[v - 1] = t;
    }
    let evaluated = evaluate(&g, &assignment)?;
    let report = validate_connected(&g, &evaluated);
    if !report.is_valid() {
        let parts = report.failing_parts();
        return Err(CmdError::invalid(format!(
            "invalid solution: part(s) {parts:?} disconnected or not one-terminal"
        )));
    }
    if evaluated.cost != sol.cost {
        return Err(CmdError::invalid(format!(
            "cost mismatch: solution claims {}, re-evaluation gives {}",
            sol.cost, evaluated.cost
        )));
    }
    println!("valid: cost {}", evaluated.cost);
    Ok(())
}

fn oracle_cmd(
    input: &Path,
    mode: OracleMode,
    limit: Option<u64>,
    output: Option<&Path>,
) -> Result<(), CmdError> {
    let g = read_instance(input)?;
    let mut limits = OracleLimits::default();
    if let Some(l) = limit {
        limits.max_nodes = l;
    }
    let result = match mode {
        OracleMode::Cmc => brute_force_cmc_with_limits(&g, &limits)?,
        OracleMode::Mmc => brute_force_mmc_with_limits(&g, &limits)?,
    };
    emit(output, &format::write_solution(&result.solution))
}

fn stc_cmd(input: &Path, limit: Option<u64>, root: Option<usize>) -> Result<(), CmdError> {
    let g = read_instance(input)?;
    let mut limits = OracleLimits::default();
    if let Some(l) = limit {
        limits.max_trees = l;
    }
    let res = stc_brute_force_with_limits(&g, &limits)?;
    println!("s stc {}", res.congestion);
    for (&e, &c) in res.tree_edges.iter().zip(&res.profile) {
        let edge = g.edges()[e];
        println!("e {} {} {c}", edge.u, edge.v);
    }
    if let Some(r) = root {
        let report = verify_stc_bounds_with_limits(&g, r, &limits)?;
        for (name, check) in [("lower", &report.lower), ("upper", &report.upper)] {
            match check {
                BoundCheck::Holds { lhs, rhs } => println!("bound {name} {lhs} vs {rhs} holds"),
                BoundCheck::Violated { lhs, rhs } => {
                    println!("bound {name} {lhs} vs {rhs} VIOLATED")
                }
                BoundCheck::NotApplicable(why) => println!("bound {name} not applicable: {why}"),
            }
        }
    }
    Ok(())
}

fn gap_cmd(max_n: usize, weights: &str, output: Option<&Path>) -> Result<(), CmdError> {
    let weights = parse_numbers(weights)?;
    match gap_search(max_n, &weights)? {
        None => Err(CmdError::infeasible(format!(
            "no gap instance on up to {max_n} vertices with weights {weights:?}"
        ))),
        Some(g) => {
            let mmc = brute_force_mmc_with_limits(&g, &OracleLimits::default())?.cost;
            let cmc = brute_force_cmc_with_limits(&g, &OracleLimits::default())?.cost;
            let text = format!(
                "# min-max cut {mmc} < connected min-max cut {cmc}\n{}",
                format::write_instance(&g)
            );
            emit(output, &text)
        }
    }
}

fn polytope_cmd(
    input: Option<&Path>,
    numbers: Option<&str>,
    limit: Option<usize>,
    output: Option<&Path>,
) -> Result<(), CmdError> {
    let mut text = String::new();
    match (input, numbers) {
        (Some(path), None) => {
            let t = read_tree(path)?;
            let vs = cut_polytope_vertices_with_limit(
                &t,
                limit.unwrap_or(cmc_core::tree::DEFAULT_ENUM_VERTEX_LIMIT),
            )?;
            write_vertices(&mut text, &vs);
        }
        (None, Some(csv)) => {
            let nums = NumberInstance::partition(parse_numbers(csv)?)?;
            let gen = gen_xc_tree(&nums)?;
            let t = as_tree(&gen.graph, 1)?;
            let vs = cut_polytope_vertices_with_limit(&t, limit.unwrap_or(40))?;
            write_vertices(&mut text, &vs);
            let report = verify_face_structure(&gen)?;
            let _ = writeln!(
                text,
                "f min-cost {} expected {} {}",
                report.min_value,
                gen.decision_cost(),
                ok(report.min_value_ok)
            );
            let _ = writeln!(
                text,
                "f face-f {} vertices characterized {}",
                report.face_f.len(),
                ok(report.face_f_characterized)
            );
            let _ = writeln!(
                text,
                "f root-boundary-identity {}",
                ok(report.boundary_identity_ok)
            );
            let _ = writeln!(
                text,
                "f face-g {} vertices bound {}",
                report.face_g.len(),
                ok(report.face_f_bound_ok)
            );
            let _ = writeln!(
                text,
                "f projection-matches-partition-sets {}",
                ok(report.projection_ok)
            );
            for subset in &report.projection {
                let bits: String = subset.iter().map(|&b| char::from(b'0' + b)).collect();
                let _ = writeln!(text, "g subset {bits}");
            }
        }
        _ => {
            return Err(CmdError::input(
                "polytope needs exactly one of -i or --numbers",
            ))
        }
    }
    emit(output, &text)
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

fn write_vertices(text: &mut String, vs: &cmc_core::polytope::PolytopeVertexSet) {
    let _ = writeln!(text, "p polytope {} {}", vs.edge_count, vs.vectors.len());
    for v in &vs.vectors {
        let bits: String = v[..vs.edge_count]
            .iter()
            .map(|&b| char::from(b'0' + b as u8))
            .collect();
        let _ = writeln!(text, "v {bits} {}", v[vs.edge_count]);
    }
}

fn exactcost_cmd(input: &Path, target: u64, output: Option<&Path>) -> Result<(), CmdError> {
    let t = read_tree(input)?;
    match exact_cost_decide(&t, target)? {
        None => Err(CmdError::infeasible(format!(
            "no connected multiway cut of cost exactly {target}"
        ))),
        Some(cut) => emit(output, &format::write_solution(&cut)),
    }
}

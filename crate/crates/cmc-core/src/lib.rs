//! Solvers, oracles and instance generators for the min-max connected
//! multiway cut problem: partition the vertices of a weighted graph into
//! connected parts, one terminal each, minimizing the largest boundary
//! weight of any part.
//!
//! The crate is organized around a small data model ([`WeightedGraph`],
//! [`TreeInstance`], [`CutSolution`]) and several independent solution
//! routes that are tested against each other:
//!
//! * [`treesolve`] — exact pseudopolynomial dynamic program on trees,
//!   with capped and exact-cost variants;
//! * [`approx`] — an FPTAS on trees via rounding and scaling;
//! * [`kernel`] — an FPT route on trees that shrinks the instance to a
//!   kernel of at most `2|Γ| - 1` vertices;
//! * [`oracle`] — exhaustive solvers for small general graphs, spanning
//!   tree congestion, and related bound checks;
//! * [`reductions`] — generators for the hardness-reduction instances,
//!   paired with the properties they must satisfy;
//! * [`polytope`] — vertex enumeration of the associated 0/1 polytope and
//!   combinatorial face checks.

pub mod approx;
pub mod cut;
pub mod error;
pub mod graph;
pub mod kernel;
pub mod oracle;
pub mod polytope;
pub mod random;
pub mod reductions;
pub mod tree;
pub mod treesolve;

pub use cut::{evaluate, validate_connected, CutSolution, PartReport, ValidityReport};
pub use error::{Error, Result};
pub use graph::{Edge, NumberFlavor, NumberInstance, Vertex, WeightedGraph};
pub use tree::{
    as_tree, enumerate_connected_cuts, enumerate_connected_cuts_with_limit, TreeInstance,
};
pub use treesolve::{
    exact_cost_decide, solve_capped_tree, solve_exact_tree, DpEntry, DpTable, SolveLimits,
    SolveResult,
};

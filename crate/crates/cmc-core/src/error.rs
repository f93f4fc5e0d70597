use thiserror::Error;

/// Errors shared by all solver and generator entry points.
#[derive(Debug, Error)]
pub enum Error {
    /// The instance violates a structural invariant (bad vertex id,
    /// parallel edge, disconnected graph, ...).
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// An operation received arguments outside its contract.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A tree-only operation was handed a graph that is not a tree.
    #[error("not a tree: {0}")]
    NotATree(String),

    /// An exhaustive search or table would exceed its configured budget.
    #[error("resource limit exceeded: {0}")]
    LimitExceeded(String),

    /// Integer overflow while summing weights.
    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    /// The operation is only defined for a restricted parameter range.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Internal consistency violation; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

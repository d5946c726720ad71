use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A resource guard tripped (class size, tree rank).
    #[error("{what} exceeds the configured limit of {limit}")]
    Limit { what: String, limit: u64 },

    #[error("not found: {0}")]
    NotFound(String),

    /// An operation was applied outside the set where it is defined.
    #[error("outside domain: {0}")]
    Domain(String),

    #[error("threshold table computed to rank {available}, but rank {requested} was requested")]
    Depth { requested: usize, available: usize },

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("fitted combination disagrees with the triangle at (N={n}, k={k})")]
    Inconsistent { n: usize, k: usize },

    /// A strike strategy ran to the end of an interview order without firing.
    #[error("strategy is incomplete: no strike fired on {0}")]
    Incomplete(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

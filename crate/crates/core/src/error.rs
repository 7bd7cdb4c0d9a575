use thiserror::Error;

/// Errors raised by the toolkit.
///
/// The last four variants never fire on a correct implementation: each one
/// reports that a proven structural fact about bases failed to hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed matrix text: {0}")]
    Format(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("base graph contains a directed cycle")]
    AcyclicityViolation,
    #[error("found {0} disjoint-in-rows bases, at most one may exist")]
    MultipleDisjointBases(usize),
    #[error("rows-of-A base fails to span every base: {0}")]
    RowsOfASpanViolation(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

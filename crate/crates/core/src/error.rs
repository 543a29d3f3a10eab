use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cycle length {0} is below the minimum of 3")]
    CycleTooShort(usize),
    #[error("shape must contain at least one cycle")]
    EmptyShape,
    #[error("invalid packing: {0}")]
    InvalidPacking(String),
    #[error("graph order {n} exceeds the configured bound {bound}")]
    SizeExceeded { n: usize, bound: usize },
    #[error("invalid generators for circulant of order {n}: {reason}")]
    InvalidGenerators { n: usize, reason: String },
    #[error("circulant order {0} is below the minimum of 9")]
    OrderTooSmall(usize),
    #[error("no Hamiltonian decomposition found (search space exhausted)")]
    DecompositionNotFound,
    #[error("time budget exceeded")]
    Timeout,
    #[error("graph order {n} exceeds the enumeration bound {bound}")]
    OrderTooLarge { n: usize, bound: usize },
    #[error("failed to merge components: no eligible swap vertex in component")]
    MergeFailed,
    #[error("subdivision edges are not independent")]
    EdgesNotIndependent,
    #[error("edge {0}-{1} does not lie on the designated cycle")]
    EdgeNotOnTargetCycle(usize, usize),
    #[error("edge {0}-{1} belongs to a different copy than designated")]
    WrongColor(usize, usize),
    #[error("no independent tri-colored matching available on the long cycle")]
    NoMatchingAvailable,
    #[error("constructive path failed for shape {0}: {1}")]
    Incomplete(String, String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

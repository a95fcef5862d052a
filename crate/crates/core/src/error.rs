use thiserror::Error;

/// Errors raised across the library. Row and column indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order {0} is too small: the construction needs n >= 2")]
    OrderTooSmall(usize),
    #[error("order {n} exceeds the supported maximum {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("index ({i}, {j}) is out of range for order {n} (indices are 1-based)")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("expected a vector of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("invalid usage: {0}")]
    Usage(String),
    #[error("insufficient sample: {needed} observations required, got {got}")]
    InsufficientSample { needed: usize, got: usize },
    #[error("correlation is undefined for a constant vector")]
    UndefinedCorrelation,
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

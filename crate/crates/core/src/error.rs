use thiserror::Error;

/// Errors raised by the library.
///
/// `Usage` covers caller mistakes (bad arguments, mismatched shapes).
/// `Consistency` means an exact computation produced a value that the
/// mathematics says is impossible, e.g. a non-integral coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable-count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },

    #[error("point has {got} coordinates but the polynomial has {expected} variables")]
    PointLength { expected: usize, got: usize },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

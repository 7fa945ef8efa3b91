use thiserror::Error;

/// Errors raised by the combinatorial engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {n} outside supported range {min}..={max} for {what}")]
    OutOfRange {
        what: &'static str,
        n: usize,
        min: usize,
        max: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("partial order law violated: {0}")]
    PosetLaw(String),

    #[error("not a closure operator: {0}")]
    ClosureLaw(String),

    /// An internal invariant failed. Seeing this means the engine computed
    /// something inconsistent and its output must not be trusted.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(what: &'static str, n: usize, min: usize, max: usize) -> Result<()> {
    if n < min || n > max {
        Err(Error::OutOfRange { what, n, min, max })
    } else {
        Ok(())
    }
}

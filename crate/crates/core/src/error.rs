use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value does not belong to surface (p={p}, q={q})")]
    SurfaceMismatch { p: i64, q: i64 },
    #[error("out of scope: {0}")]
    OutOfScope(&'static str),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("not an exceptional pair")]
    NotExceptional,
    #[error("braid index {index} out of range for {len} strands")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("search exhausted after {0} states")]
    SearchExhausted(usize),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

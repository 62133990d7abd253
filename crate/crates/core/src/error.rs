use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix dimension must be at least 1")]
    EmptyDimension,

    #[error("entry ({row}, {col}) out of range for dimension {rows}x{cols}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("duplicate entry ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },

    #[error("non-finite value at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error(
        "power iteration did not converge after {iterations} iterations (best estimate {estimate})"
    )]
    NoConvergence { iterations: usize, estimate: f64 },

    #[error(
        "dense routine capped at n = {cap}, got n = {n}; use truncated_gibbs for larger problems"
    )]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("the zero matrix has no normalized objective")]
    ZeroMatrix,

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("repair needs diagonal deviation <= eps^4 = {bound}, found {deviation}")]
    RepairPrecondition { deviation: f64, bound: f64 },

    #[error("exhaustive search capped at n = {cap}, got n = {n}")]
    BruteForceCap { n: usize, cap: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("rounding mode mismatch: {0}")]
    ModeMismatch(&'static str),

    #[error("number of rounding samples must be positive")]
    ZeroSamples,

    #[error("no objective level was feasible, not even -1")]
    NoFeasibleLevel,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

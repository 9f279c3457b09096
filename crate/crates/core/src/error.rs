use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ragged rows: row {row} has length {got}, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("cannot canonicalize the zero vector")]
    ZeroVector,

    #[error("no lineality pivot: l(u) = 0 for every basis vector")]
    NoLinealityPivot,

    #[error("sign precondition violated: {0}")]
    SignPrecondition(&'static str),

    #[error("base forms are linearly dependent")]
    DependentBase,

    #[error("system has rank 0")]
    RankZero,

    #[error("instance too large for the oracle: n = {n}, m = {m} (limits n <= {max_n}, m <= {max_m})")]
    OracleLimit {
        n: usize,
        m: usize,
        max_n: usize,
        max_m: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("dimension mismatch: expected {expected} samples, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index (k = {k}, j = {j}) is outside the admissible set j >= 0, k + j >= 0")]
    Index { k: i32, j: i32 },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("arity error: {0}")]
    Arity(String),

    #[error("model error: {0}")]
    Model(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("divergence at t = {t}: {what}")]
    Divergence { t: f64, what: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

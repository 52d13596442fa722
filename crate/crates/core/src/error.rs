use thiserror::Error;

/// Errors raised by qonkit operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate parameters: {0}")]
    DegenerateParameter(String),

    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    #[error("series diverges: |x| = {modulus} is not inside the convergence radius {radius}")]
    Divergence { modulus: f64, radius: f64 },

    #[error("truncation insufficient: tail bound {tail:e} exceeds tolerance {tol:e} after {terms} terms")]
    TruncationInsufficient { tail: f64, tol: f64, terms: usize },

    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("no convergence after {iterations} iterations: {detail}")]
    NonConvergence { iterations: usize, detail: String },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("associativity violated: the two nestings differ by {difference:e}")]
    AssociativityViolation { difference: f64 },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("inconsistent exchange factor: {0}")]
    InconsistentExchange(String),

    #[error("mixed conventions: {0}")]
    ConventionMismatch(String),

    #[error("unsolvable system: {0}")]
    Unsolvable(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

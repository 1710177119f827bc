use thiserror::Error;

/// Errors raised by the coherence library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoherenceError {
    #[error("vector norm {norm:e} is too small to normalize{}", branch_suffix(.branch))]
    ZeroVector { norm: f64, branch: Option<&'static str> },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension must be at least {min}, got {dim}")]
    BadDimension { dim: usize, min: usize },

    #[error("state is not normalized: norm^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("non-finite amplitude at index {index}")]
    NonFinite { index: usize },

    #[error("matrix is not Hermitian: |a[{row}][{col}] - conj(a[{col}][{row}])| = {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("matrix has {len} entries, expected {dim}x{dim}")]
    BadShape { len: usize, dim: usize },

    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("matrix has negative eigenvalue {eigenvalue:e}")]
    NotPositive { eigenvalue: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("probabilities are invalid: {reason}")]
    BadDistribution { reason: String },

    #[error("argument {value} is outside [0, 1]")]
    Domain { value: f64 },

    #[error("coefficients violate |alpha|^2 + |beta|^2 = 1: got {norm_sqr}")]
    BadCoefficients { norm_sqr: f64 },

    #[error("{bound} requires a {required} pair")]
    WrongPairClass { bound: &'static str, required: &'static str },

    #[error("coherence came out as {value:e}, below the clamp threshold")]
    InternalConsistency { value: f64 },

    #[error("could not draw a non-degenerate pair after {attempts} attempts")]
    DegeneratePair { attempts: usize },

    #[error("invalid support split ({left}, {right}) for dimension {dim}")]
    BadSplit { left: usize, right: usize, dim: usize },

    #[error("parameter vector has length {len}, expected {expected}")]
    BadParameterLength { len: usize, expected: usize },

    #[error("{bound} cannot be searched over {kind} pairs")]
    IncompatibleSearch { bound: &'static str, kind: &'static str },

    #[error("{0}")]
    InvalidConfig(String),
}

fn branch_suffix(branch: &Option<&'static str>) -> String {
    match branch {
        Some(b) => format!(" ({b} branch)"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, CoherenceError>;

use thiserror::Error;

/// Errors raised by state validation and the numerical routines.
///
/// Each variant names the invariant that was violated so callers (and the
/// CLI) can report it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NotHermitian: max |A_ij - conj(A_ji)| = {deviation:e} exceeds {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("NoConvergence: Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("TraceNotOne: trace = {trace} (tolerance {tol:e})")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("NotPositive: smallest eigenvalue {min_eigenvalue:e} is below -{tol:e}")]
    NotPositive { min_eigenvalue: f64, tol: f64 },

    #[error("NotFinite: matrix entry ({row}, {col}) is NaN or infinite")]
    NotFinite { row: usize, col: usize },

    #[error("NotNormalized: squared norm = {norm_sqr} (tolerance {tol:e})")]
    NotNormalized { norm_sqr: f64, tol: f64 },

    #[error("InvalidDistribution: {0}")]
    InvalidDistribution(String),

    #[error("DimensionTooSmall: single-fermion dimension {0} must be at least 2")]
    DimensionTooSmall(usize),

    #[error("DimensionMismatch: expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ShapeMismatch: bipartite shape {dim_a}x{dim_b} does not fit a {dim}-dimensional matrix")]
    ShapeMismatch { dim_a: usize, dim_b: usize, dim: usize },

    #[error("NotAntisymmetric: (I + SWAP)/2 leaves a residual of {residual:e} (tolerance {tol:e})")]
    NotAntisymmetric { residual: f64, tol: f64 },

    #[error("NotPure: purity trace(rho^2) = {purity} (tolerance {tol:e})")]
    NotPure { purity: f64, tol: f64 },

    #[error("ParseError: line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("IoError: {0}")]
    Io(String),

    #[error("InvalidStep: step {0} must satisfy 0 < step <= 0.5")]
    InvalidStep(f64),

    #[error("EmptyInput: {0}")]
    EmptyInput(&'static str),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

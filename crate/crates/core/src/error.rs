use crate::C64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("degree {degree} exceeds the supported maximum of {max}")]
    DegreeTooHigh { degree: usize, max: usize },

    #[error("the zero polynomial has no roots")]
    ZeroPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        best: Vec<C64>,
        residual: f64,
    },

    #[error("matrix is singular to working precision at pivot {pivot}")]
    Singular { pivot: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("exponent overflow for root {root}: |Re(-i r x)| = {magnitude:.1} exceeds 700")]
    Overflow { root: C64, magnitude: f64 },

    #[error("no nonzero eigenvalue; certificate unavailable")]
    NoNonzeroEigenvalue,

    #[error("root {root} lies {distance:e} from the integer {nearest}; the boundary functions are undefined")]
    NearIntegerRoot {
        root: C64,
        nearest: i64,
        distance: f64,
    },

    #[error("associated matrix cross-check failed: algorithms disagree by {0:e}")]
    CrossCheck(f64),

    #[error("associated matrix C(P) is degenerate (pivot {pivot}); closed-form sums need a non-degenerate C(P)")]
    DegenerateAssociatedMatrix { pivot: usize },

    #[error("degree {0} < 2: the series sum n^k/P(n) diverges")]
    Divergent(usize),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or out-of-domain input.
    Input,
    /// The input was acceptable but a numerical stage failed.
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. }
            | Error::DegreeTooHigh { .. }
            | Error::ZeroPolynomial
            | Error::InvalidArgument(_)
            | Error::DimensionMismatch { .. }
            | Error::NearIntegerRoot { .. }
            | Error::Divergent(_) => ErrorKind::Input,
            Error::NoConvergence { .. }
            | Error::Singular { .. }
            | Error::Overflow { .. }
            | Error::NoNonzeroEigenvalue
            | Error::CrossCheck(_)
            | Error::DegenerateAssociatedMatrix { .. } => ErrorKind::Numerical,
        }
    }
}

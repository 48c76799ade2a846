use thiserror::Error;

/// Errors raised across the crate.
///
/// Every variant maps to a stable upper-case tag via [`Error::tag`] so that
/// front ends can report failures in a machine-parsable form.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("invalid character {ch:?} at position {position}")]
    InvalidCharacter { position: usize, ch: char },
    #[error("graph is not a threshold graph ({remaining} vertices left after peeling)")]
    NotThreshold { remaining: usize },
    #[error("threshold code is disconnected (last bit is 0)")]
    Disconnected,
    #[error("graph has fewer than two vertices")]
    EmptyGraph,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("vectors are not unit length")]
    NotUnitVectors,
    #[error("state became non-finite at t = {t}")]
    NonFiniteState { t: f64 },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("reduced Hessian is numerically singular")]
    SingularSystem,
    #[error("graph has {graph} vertices but the code describes {code}")]
    GraphMismatch { graph: usize, code: usize },
    #[error("configuration is not an equilibrium (gradient norm {grad_norm:e})")]
    NotEquilibrium { grad_norm: f64 },
    #[error("line {line}: {message}")]
    MalformedFile { line: usize, message: String },
}

impl Error {
    pub fn tag(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EMPTY_INPUT",
            Error::InvalidCharacter { .. } => "INVALID_CHARACTER",
            Error::NotThreshold { .. } => "NOT_THRESHOLD",
            Error::Disconnected => "DISCONNECTED",
            Error::EmptyGraph => "EMPTY_GRAPH",
            Error::InvalidParameters(_) => "INVALID_PARAMETERS",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::IsolatedVertex(_) => "ISOLATED_VERTEX",
            Error::NotSymmetric(_) => "NOT_SYMMETRIC",
            Error::NotUnitVectors => "NOT_UNIT_VECTORS",
            Error::NonFiniteState { .. } => "NON_FINITE_STATE",
            Error::NoConvergence { .. } => "NO_CONVERGENCE",
            Error::SingularSystem => "SINGULAR_SYSTEM",
            Error::GraphMismatch { .. } => "GRAPH_MISMATCH",
            Error::NotEquilibrium { .. } => "NOT_EQUILIBRIUM",
            Error::MalformedFile { .. } => "MALFORMED_FILE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

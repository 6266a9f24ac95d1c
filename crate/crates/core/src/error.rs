use thiserror::Error;

/// Errors raised by mesh construction, assembly, solves and studies.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate triangle {0} (zero area)")]
    DegenerateTriangle(usize),

    #[error("unsupported quadrature degree {degree} (supported: {supported:?})")]
    UnsupportedQuadrature {
        degree: usize,
        supported: &'static [usize],
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("structurally singular matrix at pivot {pivot}")]
    SingularMatrix { pivot: usize },

    #[error("linear solve failed: {0}")]
    SolverFailure(String),

    #[error("problem has no exact solution")]
    MissingExactSolution,

    #[error("mesh has no interior edges")]
    NoInteriorEdges,

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of the numerical pipeline (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularMatrix { .. } | Error::SolverFailure(_) | Error::DegenerateTriangle(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error in {op}: {detail}")]
    Dimension { op: &'static str, detail: String },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("index {index} is out of bounds for length {bound}")]
    IndexOutOfBounds { index: usize, bound: usize },

    #[error("duplicate index {index}")]
    DuplicateIndex { index: usize },

    /// A matrix that must have full (row or column) rank does not.
    #[error("{matrix} is numerically rank deficient (detected at position {index})")]
    RankDeficient { matrix: &'static str, index: usize },

    #[error("matrix is not positive definite: non-positive pivot at index {index}")]
    NotPositiveDefinite { index: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("triangular matrix is singular: diagonal entry {index} below tolerance")]
    SingularTriangular { index: usize },

    #[error("SVD iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("index selection broke down at step {step}")]
    SelectionBreakdown { step: usize },

    #[error("degenerate restricted singular triple at index {index} (beta * gamma = 0)")]
    DegenerateTriple { index: usize },

    #[error("degenerate selection: interpolation block {block} is singular")]
    DegenerateSelection { block: &'static str },

    #[error("cannot scale a perturbation against a zero matrix")]
    DegenerateScale,

    #[error("rank k = {k} is out of range 1..={max}")]
    RankOutOfRange { k: usize, max: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn dim(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Dimension {
            op,
            detail: detail.into(),
        }
    }

    /// True for failures of the numerical kernels (as opposed to bad input
    /// files or configuration).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RankDeficient { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::SingularTriangular { .. }
                | Error::NoConvergence { .. }
                | Error::SelectionBreakdown { .. }
                | Error::DegenerateTriple { .. }
                | Error::DegenerateSelection { .. }
                | Error::DegenerateScale
        )
    }
}

use thiserror::Error;

use crate::report::CheckReport;

pub type Result<T, E = HomError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum HomError {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("index {index} out of range for {context} of size {size}")]
    IndexOutOfRange {
        context: &'static str,
        index: usize,
        size: usize,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("element is not homogeneous")]
    NonHomogeneous,

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    /// A constructor precondition is an axiom that failed; the report holds the witnesses.
    #[error("{what} failed: {}", .report.summary())]
    AxiomFailure { what: &'static str, report: CheckReport },

    #[error("unsupported model: {0}")]
    Unsupported(String),
}

impl HomError {
    pub(crate) fn dim(context: &'static str, expected: usize, found: usize) -> Self {
        HomError::DimensionMismatch {
            context,
            expected,
            found,
        }
    }

    /// The witness report carried by an axiom failure, if any.
    pub fn report(&self) -> Option<&CheckReport> {
        match self {
            HomError::AxiomFailure { report, .. } => Some(report),
            _ => None,
        }
    }
}

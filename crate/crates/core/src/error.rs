use thiserror::Error;

use crate::io::DocumentError;
use crate::metrics::MetricsError;
use crate::transforms::{ConvergenceError, SolverConfigError};

/// Process exit status for invalid input.
pub const EXIT_INVALID_INPUT: i32 = 1;
/// Process exit status for a numerical failure of the self-consistent solver.
pub const EXIT_CONVERGENCE: i32 = 2;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Document {
        path: String,
        #[source]
        source: DocumentError,
    },

    #[error(transparent)]
    Solver(#[from] SolverConfigError),

    #[error(transparent)]
    Metrics(#[from] MetricsError),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Convergence(#[from] ConvergenceError),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Convergence(_) => EXIT_CONVERGENCE,
            _ => EXIT_INVALID_INPUT,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::states::DensityMatrix;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("value outside its domain: {0}")]
    Domain(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("post-selected outcome has probability {probability:.3e}")]
    DegeneratePostselection { probability: f64 },

    #[error("no state-independent correction exists for the {0} ensemble")]
    UnsupportedCorrection(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("measurement settings are not informationally complete (rank {rank}, need {required})")]
    NotInformationallyComplete { rank: usize, required: usize },

    #[error("likelihood maximization did not converge after {evaluations} evaluations")]
    NonConvergence {
        evaluations: usize,
        log_likelihood: f64,
        best: Box<DensityMatrix>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for the command-line tool: 1 for bad input,
    /// 2 for numeric or convergence failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Dimension(_)
            | Error::Domain(_)
            | Error::InvalidState(_)
            | Error::UnsupportedCorrection(_)
            | Error::Parse(_)
            | Error::Io(_) => 1,
            Error::NotHermitian { .. }
            | Error::NotPsd { .. }
            | Error::DegeneratePostselection { .. }
            | Error::Numeric(_)
            | Error::NotInformationallyComplete { .. }
            | Error::NonConvergence { .. } => 2,
        }
    }
}

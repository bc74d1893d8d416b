use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("b[{index}] = {value} is negative, the zero point is not a feasible start")]
    InfeasibleStart { index: usize, value: f64 },

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("no optimality certificate after {iterations} iterations (objective {objective})")]
    MaxIterationsExceeded { iterations: usize, objective: f64 },

    #[error("no optimality certificate after {rounds} Benders rounds (value {value})")]
    MaxRoundsExceeded { rounds: usize, value: f64 },

    #[error("scaling factor must be >= 1, got {0}")]
    InvalidBeta(f64),

    #[error("input coordinate {index} is negative ({value})")]
    NegativeInput { index: usize, value: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("internal solver error: {0}")]
    Internal(String),
}

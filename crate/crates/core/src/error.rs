use num_complex::Complex64;
use thiserror::Error;

use crate::moebius::Domain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input {0}")]
    NonFinite(Complex64),

    #[error("point {point} is outside the {domain}")]
    Domain { point: Complex64, domain: Domain },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("invalid flow: {0}")]
    InvalidFlow(String),

    /// The ODE trajectory left the open domain before the requested time.
    #[error("flow escaped its domain at t = {time}: B = {value}")]
    FlowEscape { time: f64, value: Complex64 },

    #[error("points {0} and {1} are closer than the duplicate threshold")]
    DuplicatePoint(usize, usize),

    #[error("symmetric eigensolver did not converge")]
    EigenNonConvergence,

    #[error("linear solve failed: {0}")]
    LinearSolve(String),

    #[error("logarithm branch guard violated at z = {point}: {detail}")]
    LogBranch { point: Complex64, detail: String },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

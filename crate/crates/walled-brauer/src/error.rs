use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("orientation violated: {0}")]
    Orientation(String),
    #[error("cannot compose: {0}")]
    Composition(String),
    #[error("scalar tags do not mix: {left} with {right}")]
    ScalarMismatch { left: &'static str, right: &'static str },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("spectrum is not rational; use big-float mode")]
    IrrationalSpectrum,
    #[error("polynomial vanishes at eigenvalue {0}")]
    EigenvalueHit(String),
    #[error("parameters violate the size assumption: {0}")]
    AssumptionViolation(String),
    #[error("reduction exceeded its step budget of {0}")]
    ReductionBudgetExceeded(usize),
    #[error("normal-form span is not closed: {0}")]
    ClosureFailure(String),
    #[error("polynomial is not admissible: {0}")]
    NotAdmissible(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::roots::RootSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("delta vector is empty")]
    EmptyDelta,
    #[error("delta entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: String },
    #[error("delta vector has no nonzero entry")]
    AllZero,
    #[error("delta vector is not symmetric")]
    NotSymmetric,
    #[error("basis index {index} out of range for degree {degree}")]
    IndexOutOfRange { degree: usize, index: usize },
    #[error("polynomial does not have the required parity: {0}")]
    ParityViolation(String),
    #[error("cannot find roots of a constant polynomial")]
    DegenerateInput,
    #[error("root iteration did not converge after {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        partial: Box<RootSet>,
    },
    #[error("cannot decide whether the root near {near} is real")]
    AmbiguousClassification { near: f64 },
    #[error(
        "root with real part {re} is within its error radius {radius} of the boundary {boundary}"
    )]
    Inconclusive { re: f64, radius: f64, boundary: f64 },
    #[error("degree {0} is not supported here")]
    UnsupportedDegree(usize),
    #[error("no catalog for dimension {0}")]
    UnsupportedDimension(usize),
    #[error("parameter {a} is below the realizability threshold {threshold}")]
    ParameterBelowThreshold { a: String, threshold: String },
    #[error("target {target} lies outside [{lo}, {hi}]")]
    TargetOutOfRange {
        target: String,
        lo: String,
        hi: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

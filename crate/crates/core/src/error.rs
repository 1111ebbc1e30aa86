use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("no feasible basis found (input empty or unbounded?)")]
    NoFeasibleBasis,

    #[error("regularity violation at basis {basis:?}, leaving row {leaving}: {candidates} entering candidates")]
    RegularityViolation {
        basis: Vec<usize>,
        leaving: usize,
        candidates: usize,
    },

    #[error("polytope is not full-dimensional")]
    NotFullDimensional,

    #[error("unboundedness suspected: no nonnegative combination bounds coordinate {coord} ({sign})")]
    UnboundednessSuspected { coord: usize, sign: char },

    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            msg: err.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::fmt;

use crate::rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Col,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Col => "column",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{axis} labels must be non-empty")]
    EmptyLabels { axis: Axis },
    #[error("duplicate {axis} label `{label}`")]
    DuplicateLabel { axis: Axis, label: String },
    #[error("dimension mismatch: {what} has {found} entries, expected {expected}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("bound must be positive, got {0}")]
    NonPositiveBound(Box<Rational>),
    #[error("entry ({row}, {col}) = {value} exceeds bound {bound}")]
    EntryExceedsBound {
        row: usize,
        col: usize,
        value: Box<Rational>,
        bound: Box<Rational>,
    },
    #[error("entry ({row}, {col}): {source}")]
    BadEntry {
        row: usize,
        col: usize,
        source: ParseRationalError,
    },
    #[error("thresholds need s < r, got s = {s}, r = {r}")]
    InvalidThresholds { s: Box<Rational>, r: Box<Rational> },
    #[error("{axis} index {index} out of range (size {len})")]
    IndexOutOfRange { axis: Axis, index: usize, len: usize },
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error("shatter witness has no column for subset mask {mask:#b}")]
    MissingSubset { mask: u64 },
    #[error("witness does not verify: {0}")]
    InvalidWitness(String),
    #[error("coefficient support row {row} is not a witness row")]
    SupportOutsideWitness { row: usize },
    #[error("{0}")]
    OutOfRange(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("target lies outside the span of the generators")]
    OutsideSpan,
    #[error("internal certificate check failed: {0}")]
    CertificateFailure(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

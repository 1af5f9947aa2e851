use std::path::PathBuf;

use thiserror::Error;

use crate::corpus::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {reason}")]
    Parse {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    /// Corpus failed validation. Carries every violation found, not just the first.
    #[error("invalid corpus: {}", format_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("zero-reference citing paper {0:?} cannot be fractionated")]
    ZeroReferenceCiting(String),

    #[error("unknown publication {0:?}")]
    UnknownPublication(String),

    #[error("unknown unit {0:?}")]
    UnknownUnit(String),

    #[error("unit {0:?} has no publications")]
    EmptyUnit(String),

    #[error("missing {table} rate for {key:?}")]
    MissingRate { table: &'static str, key: String },

    #[error("publication {0:?} has no field codes")]
    NoFieldCodes(String),

    #[error("empty impact window for journal {journal:?} in year {year}")]
    EmptyWindow { journal: String, year: i32 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("expected value at index {index} is not positive ({value})")]
    NonPositiveExpected { index: usize, value: f64 },

    #[error("empty input")]
    Empty,

    #[error("reference set has zero mean")]
    ZeroReferenceMean,

    #[error("expected values sum to zero")]
    ZeroExpectedSum,

    #[error("constant input: correlation undefined")]
    ConstantInput,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

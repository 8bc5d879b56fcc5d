//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("invalid box: {0}")]
    InvalidBox(String),

    #[error("invalid map system: {0}")]
    InvalidMap(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("point outside map domain: {0}")]
    OutOfDomain(String),

    #[error("map is not invertible: {0}")]
    NotInvertible(String),

    #[error("unsupported map structure: {0}")]
    Unsupported(String),

    #[error("point is not regular enough: {0}")]
    NotRegular(String),

    #[error("rational bit size {bits} exceeds the configured limit of {limit} bits")]
    BitBudget { bits: u64, limit: u64 },

    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    /// Distinguishes resource-guard stops from plain validation failures,
    /// so callers (the CLI in particular) can map them to different exit codes.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BitBudget { .. } | Error::Budget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

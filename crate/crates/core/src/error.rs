use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse grouping used to map failures onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Data,
    Model,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("target interval {target}s is not a positive multiple of source interval {source_interval}s")]
    NotAMultiple { target: i64, source_interval: i64 },

    #[error("weather records are not sorted: timestamp {next} follows {previous}")]
    UnsortedWeather { previous: i64, next: i64 },

    #[error("series too short: need at least {needed} observations, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("history too short: need at least {needed} observations, got {got}")]
    HistoryTooShort { needed: usize, got: usize },

    #[error("expected {expected} initial values, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("missing cells in column `{column}`")]
    MissingCells { column: String },

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("underdetermined system: {samples} samples for {features} features plus intercept")]
    Underdetermined { samples: usize, features: usize },

    #[error("singular design matrix")]
    SingularDesign,

    #[error("kernel matrix is not positive definite after jitter {jitter:e}")]
    CholeskyFailure { jitter: f64 },

    #[error("K = {k} exceeds the {samples} training samples")]
    KTooLarge { k: usize, samples: usize },

    #[error("training loss became non-finite at epoch {epoch} (learning rate {learning_rate})")]
    DivergedLoss { epoch: usize, learning_rate: f64 },

    #[error("differenced series is constant; cannot estimate ARMA terms")]
    DegenerateSeries,

    #[error("test partition is empty or unusable: {0}")]
    InsufficientTest(String),

    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },

    #[error("no modal interval covers at least 90% of gaps (best {interval}s covers {coverage:.1}%)")]
    NonUniformInterval { interval: i64, coverage: f64 },

    #[error("duplicate timestamp {timestamp} at line {line}")]
    DuplicateTimestamp { timestamp: i64, line: usize },

    #[error("cannot infer schema: {reason}; candidates: [{}]", candidates.join(", "))]
    CannotInfer { reason: String, candidates: Vec<String> },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Config(_) | Error::InvalidArgument(_) => ErrorKind::Config,
            Error::NotAMultiple { .. }
            | Error::UnsortedWeather { .. }
            | Error::TooShort { .. }
            | Error::HistoryTooShort { .. }
            | Error::LengthMismatch { .. }
            | Error::MissingCells { .. }
            | Error::UnknownColumn(_)
            | Error::InsufficientTest(_)
            | Error::Parse { .. }
            | Error::NonUniformInterval { .. }
            | Error::DuplicateTimestamp { .. }
            | Error::CannotInfer { .. }
            | Error::Io { .. }
            | Error::Csv(_)
            | Error::Json(_) => ErrorKind::Data,
            Error::ArityMismatch { .. }
            | Error::Underdetermined { .. }
            | Error::SingularDesign
            | Error::CholeskyFailure { .. }
            | Error::KTooLarge { .. }
            | Error::DivergedLoss { .. }
            | Error::DegenerateSeries => ErrorKind::Model,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

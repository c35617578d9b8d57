use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid node set: {0}")]
    InvalidNodeSet(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("problem too large for exact solver: {n} variables exceeds cap {cap}")]
    ExactCapExceeded { n: usize, cap: usize },

    #[error("unknown solver backend `{0}`")]
    UnknownBackend(String),

    #[error("invalid solver configuration: {0}")]
    InvalidSolverConfig(String),

    #[error("invalid cluster configuration: {0}")]
    InvalidClusterConfig(String),

    #[error("k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("metric undefined: {0}")]
    MetricUndefined(String),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("invalid feature matrix: {0}")]
    InvalidFeatures(String),

    #[error("constant feature {index} (zero variance)")]
    ConstantFeature { index: usize },

    #[error("value {value} at row {row}, column {col} outside the correlation range")]
    CorrelationOutOfRange { row: usize, col: usize, value: f64 },

    #[error("{path}: line {line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Stable code printed as the prefix of every CLI diagnostic.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "E001",
            Error::DimensionMismatch { .. } => "E002",
            Error::InvalidNodeSet(_) => "E003",
            Error::InvalidPartition(_) => "E004",
            Error::ExactCapExceeded { .. } => "E010",
            Error::UnknownBackend(_) => "E011",
            Error::InvalidSolverConfig(_) => "E012",
            Error::InvalidClusterConfig(_) => "E013",
            Error::KOutOfRange { .. } => "E020",
            Error::MetricUndefined(_) => "E030",
            Error::InvalidSpec(_) => "E040",
            Error::InvalidFeatures(_) => "E050",
            Error::ConstantFeature { .. } => "E051",
            Error::CorrelationOutOfRange { .. } => "E052",
            Error::Parse { .. } => "E060",
            Error::Io { .. } => "E061",
            Error::Json(_) => "E062",
            Error::Usage(_) => "E070",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

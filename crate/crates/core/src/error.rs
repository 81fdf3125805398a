//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A declared column is missing from the input header.
    #[error("schema error: {0}")]
    Schema(String),

    /// Malformed or inconsistent input data (duplicate ids, empty file, ...).
    #[error("ingestion error: {0}")]
    Ingestion(String),

    /// Ground truth could not be derived or resolved.
    #[error("truth error: {0}")]
    Truth(String),

    /// Invalid configuration values.
    #[error("config error: {0}")]
    Config(String),

    /// The corpus yields no shingles at all.
    #[error("vocabulary error: {0}")]
    Vocabulary(String),

    /// A record produced no hashable elements.
    #[error("signature error: {0}")]
    Signature(String),

    /// Densification over an all-empty bin array.
    #[error("densification error: {0}")]
    Densification(String),

    /// A weighted component is not an integer multiple of the resolution delta.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// Signature length does not match the banding layout.
    #[error("banding error: {0}")]
    Banding(String),

    /// Evaluation over unknown record ids or degenerate corpus sizes.
    #[error("metric error: {0}")]
    Metric(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// CLI exit code: 1 for configuration problems, 2 for data problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            _ => 2,
        }
    }
}

//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

/// All failures surfaced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Filesystem failure, tagged with the path that caused it.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// The input is not a decodable RIFF/WAVE PCM file; the message names
    /// the offending field (channel count, bit depth, format tag, ...).
    #[error("wav format error: {0}")]
    WavFormat(String),

    /// A configuration value is out of range; the message lists the fields.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// Text input (protocol file, manifest, CSV) failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A dataset split could not be formed.
    #[error("split error: {0}")]
    Split(String),

    /// Tensor/vector dimensions do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A caller violated a documented API contract.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Binary checkpoint could not be read; the message names the field
    /// (magic, version, dimension, payload length).
    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    /// A cluster-metric precondition failed (too few rows, rank deficiency,
    /// classes with fewer than two members).
    #[error("metric error: {0}")]
    Metric(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lens surgery parameter (p={p}, k={k}): {reason}")]
    InvalidParameter {
        p: i64,
        k: i64,
        reason: &'static str,
    },

    #[error("I_0 is undefined: the interval length must be nonzero")]
    EmptyInterval,

    #[error("coefficient index {i} is outside |i| <= p/2 for p={p}")]
    IndexOutOfRange { p: i64, i: i64 },

    #[error("torus knot parameters ({a},{b}) must be coprime and at least 2")]
    InvalidTorus { a: i64, b: i64 },

    #[error("integrity check failed for (p={p}, k={k}) at index {index}: {detail}")]
    Integrity {
        p: i64,
        k: i64,
        index: i64,
        detail: String,
    },

    #[error("trivial polynomial has no non-zero region (p={p}, k={k})")]
    NoRegion { p: i64, k: i64 },

    #[error("unknown render format `{0}` (expected ascii or svg)")]
    UnknownFormat(String),

    #[error("invalid sweep configuration: {0}")]
    Config(String),

    #[error("checkpoint {path} is unreadable or corrupted ({detail}); rerun with --from-scratch")]
    CorruptCheckpoint { path: PathBuf, detail: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

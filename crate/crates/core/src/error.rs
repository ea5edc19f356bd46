use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the recognizer core, the template store and the bench harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("transform is singular (|det| = {det:e})")]
    SingularTransform { det: f64 },

    #[error("path has zero length")]
    ZeroLengthPath,

    #[error("path is empty")]
    EmptyPath,

    #[error("path contains a non-finite coordinate at index {index}")]
    NonFinite { index: usize },

    #[error("path too short: {found} points, need at least {required}")]
    PathTooShort { found: usize, required: usize },

    #[error("triangle ({a}, {b}, {c}) out of range for n = {n}")]
    IndexOutOfRange { a: usize, b: usize, c: usize, n: usize },

    #[error("length mismatch: {left} vs {right} points")]
    LengthMismatch { left: usize, right: usize },

    #[error("triangle edge {edge} has zero length")]
    DegenerateEdge { edge: usize },

    #[error("a template named {0:?} already exists")]
    DuplicateName(String),

    #[error("no template named {0:?}")]
    UnknownTemplate(String),

    #[error("library uses n = {library}, configuration uses n = {config}")]
    ConfigMismatch { library: usize, config: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("library is empty")]
    EmptyLibrary,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error{}: {message}", position_suffix(.line, .column))]
    Parse {
        message: String,
        line: Option<usize>,
        column: Option<usize>,
    },

    #[error("unsupported library version {found} (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("no gesture samples found under {0}")]
    NoSamplesFound(PathBuf),

    #[error("sample label {0:?} has no template in the library")]
    LabelMismatch(String),
}

fn position_suffix(line: &Option<usize>, column: &Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!(" at line {l}, column {c}"),
        (Some(l), None) => format!(" at line {l}"),
        _ => String::new(),
    }
}

impl Error {
    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            message: message.into(),
            line: None,
            column: None,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use std::path::PathBuf;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Input,
    Runtime,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown node {0}")]
    UnknownNode(NodeId),

    #[error("invalid removal set: {0}")]
    InvalidRemoval(String),

    #[error("degenerate graph: {0}")]
    DegenerateGraph(String),

    #[error("katz iteration did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    #[error("layout does not match graph: {0}")]
    LayoutBinding(String),

    #[error("incomplete report, missing records: {}", .0.join(", "))]
    IncompleteReport(Vec<String>),

    #[error("no results found: {0}")]
    NoResults(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

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
            Error::Config(_) | Error::LayoutBinding(_) | Error::InvalidRemoval(_) => {
                ErrorKind::Config
            }
            Error::Parse { .. }
            | Error::InvalidGraph(_)
            | Error::UnknownNode(_)
            | Error::Io { .. }
            | Error::Csv(_)
            | Error::Json(_)
            | Error::IncompleteReport(_)
            | Error::NoResults(_) => ErrorKind::Input,
            Error::DegenerateGraph(_)
            | Error::Convergence { .. }
            | Error::UndefinedMetric(_)
            | Error::Invariant(_) => ErrorKind::Runtime,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

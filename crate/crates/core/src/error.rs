use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A size guard (vertex count, edge count, pattern size, point range) was exceeded.
    #[error("size guard exceeded: {0}")]
    Guard(String),

    /// The exact search ran out of its node budget. No answer is implied.
    #[error("search budget exhausted after {nodes} decisions")]
    BudgetExhausted { nodes: u64 },

    #[error("tower overflow: S_{index} exceeds the bit-length guard (tower of height {index})")]
    TowerOverflow { index: u64 },

    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("insufficient host: level {level} is below the required {required}; use opportunistic extraction instead")]
    InsufficientHost { level: u32, required: String },

    /// A certified edge failed re-verification. Signals a bug, never expected.
    #[error("certification failed: {0}")]
    Certification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::Guard(_) | Error::BudgetExhausted { .. } | Error::TowerOverflow { .. }
        )
    }

    pub(crate) fn parse(line: usize, kind: ParseErrorKind) -> Self {
        Error::Parse { line, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Malformed(String),
    HeaderMismatch(String),
    UnknownColor(String),
    EdgeNotInHost(String),
    DuplicateEdge { edge: String, first_line: usize },
    MissingEdge(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Malformed(s) => write!(f, "malformed line: {s}"),
            ParseErrorKind::HeaderMismatch(s) => write!(f, "header mismatch: {s}"),
            ParseErrorKind::UnknownColor(s) => write!(f, "unknown color token {s:?}"),
            ParseErrorKind::EdgeNotInHost(s) => write!(f, "edge not in host: {s}"),
            ParseErrorKind::DuplicateEdge { edge, first_line } => {
                write!(f, "duplicate edge {edge} (first seen on line {first_line})")
            }
            ParseErrorKind::MissingEdge(s) => write!(f, "missing edge {s}"),
        }
    }
}

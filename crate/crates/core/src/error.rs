use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop requested at vertex {0}")]
    SelfLoop(usize),

    #[error("edge {{{0}, {1}}} already present")]
    EdgeExists(usize, usize),

    #[error("edge {{{0}, {1}}} not present")]
    EdgeMissing(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A byte-oriented decoding failure (graph6, sparse6).
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A line-oriented decoding failure (edge lists, streams).
    #[error("parse error at line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("graph on {n} vertices exceeds the limit of {limit} for {what}")]
    TooLarge { what: &'static str, n: usize, limit: usize },

    #[error("search budget of {budget} node expansions exhausted before a decision")]
    Undecided { budget: u64 },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn parse_line(line: usize, message: impl Into<String>) -> Self {
        Error::ParseLine {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }

    /// True for errors that signal a resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::TooLarge { .. } | Error::Undecided { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the library.
///
/// [`Error::is_schema`] separates malformed input documents from
/// well-formed inputs that violate a domain precondition; the CLI maps the
/// two groups to different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed value: {0}")]
    Structure(String),

    #[error("{what} does not contain {elem}")]
    NotInSet { what: String, elem: String },

    #[error("table is not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: String, b: String, c: String },

    #[error("letter {letter} at position {position} is not in the input alphabet")]
    UnmappedLetter { position: String, letter: String },

    #[error("functor mismatch: expected {expected}, found {found}")]
    InstanceMismatch { expected: String, found: String },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("{what} would have {size} elements, above the cap of {cap}")]
    CapExceeded { what: String, size: String, cap: u64 },

    #[error("closure did not stabilise: {0}")]
    ClosureNotStable(String),

    #[error("machine is not unambiguous: {0}")]
    Ambiguous(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("invalid document: {0}")]
    Schema(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by a malformed document rather than by a
    /// well-formed input outside an operation's domain.
    pub fn is_schema(&self) -> bool {
        matches!(self, Error::Schema(_) | Error::Io(_) | Error::Unsupported(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

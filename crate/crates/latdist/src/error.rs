use thiserror::Error;

/// Input and output format failures. Every parse error names where in the
/// input it happened.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{source_name}: missing tag {tag}")]
    MissingTag {
        source_name: String,
        tag: &'static str,
    },
    #[error("{source_name}:{line}: malformed number {text:?}")]
    MalformedNumber {
        source_name: String,
        line: usize,
        text: String,
    },
    #[error("{source_name}: {source}")]
    Lattice {
        source_name: String,
        #[source]
        source: latdist_core::Error,
    },
    #[error("{location}: {message}")]
    Schema { location: String, message: String },
    #[error("duplicate lattice id {0:?}")]
    DuplicateId(String),
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("matrix is not symmetric at ({row}, {col})")]
    SymmetryViolation { row: String, col: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

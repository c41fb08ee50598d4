use proofcloud_kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ErrorKind {
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("malformed quoted name")]
    BadQuote,
    #[error("stack underflow in `{0}`")]
    StackUnderflow(&'static str),
    #[error("`{op}` expected {expected}, got {got}")]
    Shape { op: &'static str, expected: &'static str, got: String },
    #[error("version error: {0}")]
    Version(String),
    #[error("dictionary has no entry {0}")]
    MissingKey(i64),
    #[error("exported sequent does not match: {0}")]
    ExportMismatch(String),
    #[error("{0} objects left on the stack")]
    NonEmptyFinalStack(usize),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("i/o: {0}")]
    Io(String),
}

/// A replay failure with the 1-based line it happened on (0 when the
/// failure is not tied to a line).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ArticleError {
    pub line: usize,
    pub kind: ErrorKind,
}

impl ArticleError {
    pub fn new(line: usize, kind: ErrorKind) -> ArticleError {
        ArticleError { line, kind }
    }
}

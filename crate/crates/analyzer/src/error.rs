use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AnalyzeError {
    #[error("dependency cycle: {}", .0.join(" -> "))]
    CyclicDependency(Vec<String>),
    #[error("package `{package}` requires unknown package `{required}`")]
    UnknownPackage { package: String, required: String },
    #[error("package `{0}` is listed twice")]
    DuplicatePackage(String),
    #[error("axiom `{0}` is neither a known axiom nor a lemma of a required package")]
    UnknownLemma(String),
    #[error("metadata: {0}")]
    Meta(String),
    #[error("{package}: {message}")]
    Replay { package: String, message: String },
}

pub type Result<T> = std::result::Result<T, AnalyzeError>;

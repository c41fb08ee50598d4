use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("duplicate document id `{0}`")]
    DuplicateDocId(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: {message}")]
    Page { path: PathBuf, message: String },
    #[error("cannot bind {addr}: {message}")]
    Bind { addr: String, message: String },
}

impl IndexError {
    pub(crate) fn io(path: &std::path::Path, e: std::io::Error) -> IndexError {
        IndexError::Io { path: path.to_path_buf(), message: e.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, IndexError>;

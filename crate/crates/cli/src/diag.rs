//! Machine-readable diagnostics, one JSON object per line on stderr.

use std::path::Path;

use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diag {
    pub stage: String,
    pub file: Option<String>,
    pub line: Option<usize>,
    pub message: String,
}

impl Diag {
    pub fn new(stage: &str, file: Option<&Path>, line: Option<usize>, message: impl Into<String>) -> Diag {
        Diag {
            stage: stage.to_string(),
            file: file.map(|p| p.display().to_string()),
            line: line.filter(|l| *l > 0),
            message: message.into(),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    Usage(Diag),
    Domain(Vec<Diag>),
}

impl Failure {
    pub fn domain(d: Diag) -> Failure {
        Failure::Domain(vec![d])
    }

    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Domain(_) => EXIT_FAILURE,
        }
    }

    pub fn diags(&self) -> &[Diag] {
        match self {
            Failure::Usage(d) => std::slice::from_ref(d),
            Failure::Domain(ds) => ds,
        }
    }
}

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{decl}: unknown identifier `{name}`")]
    Scope { decl: String, name: String },
    #[error("{decl}: expected `{expected}`, got `{got}`")]
    Type { decl: String, expected: String, got: String },
    #[error("{decl}: {message}")]
    Ill { decl: String, message: String },
    #[error("{decl}: conversion ran out of fuel after {fuel} steps")]
    Fuel { decl: String, fuel: u64 },
    #[error("`{0}` is declared twice")]
    Redeclared(String),
}

impl LpError {
    /// Name of the declaration the error belongs to, if any.
    pub fn decl(&self) -> Option<&str> {
        match self {
            LpError::Scope { decl, .. }
            | LpError::Type { decl, .. }
            | LpError::Ill { decl, .. }
            | LpError::Fuel { decl, .. } => Some(decl),
            LpError::Redeclared(n) => Some(n),
            LpError::Syntax { .. } => None,
        }
    }
}

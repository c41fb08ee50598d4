use thiserror::Error;

use crate::name::Name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("ill-typed term: {0}")]
    IllTyped(String),
    #[error("not a boolean term: `{0}`")]
    NotBoolean(String),
    #[error("{rule}: {reason}")]
    RuleMismatch { rule: &'static str, reason: String },
    #[error("variable `{0}` occurs free in a hypothesis")]
    FreeVarInHyps(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("ill-formed substitution: {0}")]
    IllFormedSubst(String),
    #[error("not a beta-redex: `{0}`")]
    NotARedex(String),
    #[error("`{0}` is already defined")]
    Redefinition(Name),
    #[error("term has free variables: {0}")]
    OpenTerm(String),
    #[error("type definition theorem has hypotheses")]
    NonEmptyHyps,
    #[error("type variable mismatch: {0}")]
    TyVarMismatch(String),
    #[error("type operator `{op}` used with {got} arguments, declared with {expected}")]
    ArityMismatch { op: Name, expected: usize, got: usize },
    #[error("constant `{name}` at `{got}` is not an instance of `{generic}`")]
    ConstInstance { name: Name, generic: String, got: String },
}

pub type Result<T, E = KernelError> = std::result::Result<T, E>;

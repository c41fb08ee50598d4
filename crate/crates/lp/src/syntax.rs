use std::sync::Arc;

use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    /// `name : ty.` or, when `definable`, `def name : ty.` (a symbol that
    /// may head rewrite rules).
    Const { name: Arc<str>, ty: Term, definable: bool },
    /// `def name : ty := body.`, or `thm` when `opaque`.
    Def { name: Arc<str>, ty: Term, body: Term, opaque: bool },
    /// `[ctx] lhs --> rhs.` The context variables are bound in `lhs` and
    /// `rhs`, the first one outermost.
    Rule { ctx: Vec<(Arc<str>, Term)>, lhs: Term, rhs: Term },
}

impl Decl {
    /// Declared name, or the head symbol of a rule.
    pub fn name(&self) -> &str {
        match self {
            Decl::Const { name, .. } | Decl::Def { name, .. } => name,
            Decl::Rule { lhs, .. } => match lhs.spine().0 {
                Term::Const(c) => c,
                _ => "<rule>",
            },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Module {
    pub name: String,
    pub requires: Vec<String>,
    pub decls: Vec<Decl>,
}

impl Module {
    pub fn new(name: impl Into<String>) -> Module {
        Module { name: name.into(), requires: Vec::new(), decls: Vec::new() }
    }

    pub fn find(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| !matches!(d, Decl::Rule { .. }) && d.name() == name)
    }
}

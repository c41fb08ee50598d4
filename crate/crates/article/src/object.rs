use std::fmt;

use proofcloud_kernel::{Name, Term, Theorem, Type, Var};

/// A value on the article stack or in the dictionary.
#[derive(Debug, Clone)]
pub enum Object {
    Num(i64),
    Name(Name),
    List(Vec<Object>),
    TypeOp(Name),
    Type(Type),
    Const(Name),
    Var(Var),
    Term(Term),
    Thm(Theorem),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Num(_) => "number",
            Object::Name(_) => "name",
            Object::List(_) => "list",
            Object::TypeOp(_) => "type operator",
            Object::Type(_) => "type",
            Object::Const(_) => "constant",
            Object::Var(_) => "variable",
            Object::Term(_) => "term",
            Object::Thm(_) => "theorem",
        }
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Num(n) => write!(f, "{n}"),
            Object::Name(n) => write!(f, "{n}"),
            Object::List(xs) => {
                f.write_str("[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            Object::TypeOp(n) => write!(f, "typeOp {n}"),
            Object::Type(t) => write!(f, "{t}"),
            Object::Const(n) => write!(f, "const {n}"),
            Object::Var(v) => write!(f, "{} : {}", v.name(), v.ty()),
            Object::Term(t) => write!(f, "{t}"),
            Object::Thm(th) => write!(f, "{}", th.sequent()),
        }
    }
}

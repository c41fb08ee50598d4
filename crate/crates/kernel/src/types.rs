//! Simple types with type operators.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::name::Name;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeKind {
    Var(Name),
    App(Name, Vec<Type>),
}

/// A HOL type: a type variable or a type operator applied to arguments.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Type(Arc<TypeKind>);

pub const BOOL: &str = "bool";
pub const FUN: &str = "->";
pub const IND: &str = "ind";

impl Type {
    pub fn var(name: impl Into<Name>) -> Type {
        Type(Arc::new(TypeKind::Var(name.into())))
    }

    /// Builds an operator application without consulting any signature;
    /// arity is checked by the kernel when types enter through it.
    pub fn app(op: impl Into<Name>, args: Vec<Type>) -> Type {
        Type(Arc::new(TypeKind::App(op.into(), args)))
    }

    pub fn bool() -> Type {
        Type::app(Name::simple(BOOL), Vec::new())
    }

    pub fn ind() -> Type {
        Type::app(Name::simple(IND), Vec::new())
    }

    pub fn fun(dom: Type, cod: Type) -> Type {
        Type::app(Name::simple(FUN), vec![dom, cod])
    }

    /// `a1 -> a2 -> ... -> res`
    pub fn fun_n(args: impl IntoIterator<Item = Type, IntoIter: DoubleEndedIterator>, res: Type) -> Type {
        args.into_iter().rev().fold(res, |acc, a| Type::fun(a, acc))
    }

    pub fn kind(&self) -> &TypeKind {
        &self.0
    }

    pub fn is_bool(&self) -> bool {
        matches!(self.kind(), TypeKind::App(op, args) if args.is_empty() && op.namespace().is_empty() && op.base() == BOOL)
    }

    pub fn as_var(&self) -> Option<&Name> {
        match self.kind() {
            TypeKind::Var(n) => Some(n),
            TypeKind::App(..) => None,
        }
    }

    /// Domain and codomain of a function type.
    pub fn dest_fun(&self) -> Option<(&Type, &Type)> {
        match self.kind() {
            TypeKind::App(op, args) if args.len() == 2 && op.namespace().is_empty() && op.base() == FUN => {
                Some((&args[0], &args[1]))
            }
            _ => None,
        }
    }

    pub fn type_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_type_vars(&mut out);
        out
    }

    pub(crate) fn collect_type_vars(&self, out: &mut BTreeSet<Name>) {
        match self.kind() {
            TypeKind::Var(n) => {
                out.insert(n.clone());
            }
            TypeKind::App(_, args) => args.iter().for_each(|a| a.collect_type_vars(out)),
        }
    }

    /// Type operators occurring in this type, with the arity they are used at.
    pub fn collect_type_ops(&self, out: &mut Vec<(Name, usize)>) {
        if let TypeKind::App(op, args) = self.kind() {
            out.push((op.clone(), args.len()));
            args.iter().for_each(|a| a.collect_type_ops(out));
        }
    }

    pub fn instantiate(&self, map: &HashMap<Name, Type>) -> Type {
        if map.is_empty() {
            return self.clone();
        }
        match self.kind() {
            TypeKind::Var(n) => map.get(n).cloned().unwrap_or_else(|| self.clone()),
            TypeKind::App(op, args) => {
                let new: Vec<Type> = args.iter().map(|a| a.instantiate(map)).collect();
                if new.iter().zip(args).all(|(a, b)| Arc::ptr_eq(&a.0, &b.0)) {
                    self.clone()
                } else {
                    Type::app(op.clone(), new)
                }
            }
        }
    }

    /// One-way matching: finds `m` with `self.instantiate(m) == target`,
    /// extending the bindings already in `m`.
    pub fn match_onto(&self, target: &Type, m: &mut HashMap<Name, Type>) -> bool {
        match (self.kind(), target.kind()) {
            (TypeKind::Var(n), _) => match m.get(n) {
                Some(bound) => bound == target,
                None => {
                    m.insert(n.clone(), target.clone());
                    true
                }
            },
            (TypeKind::App(f, xs), TypeKind::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.match_onto(y, m))
            }
            _ => false,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, arg_pos: bool) -> fmt::Result {
        if let Some((a, b)) = self.dest_fun() {
            if arg_pos {
                f.write_str("(")?;
            }
            a.fmt_prec(f, true)?;
            f.write_str(" -> ")?;
            b.fmt_prec(f, false)?;
            if arg_pos {
                f.write_str(")")?;
            }
            return Ok(());
        }
        match self.kind() {
            TypeKind::Var(n) => write!(f, "{n}"),
            TypeKind::App(op, args) if args.is_empty() => write!(f, "{op}"),
            TypeKind::App(op, args) => {
                f.write_str("(")?;
                write!(f, "{op}")?;
                for a in args {
                    f.write_str(" ")?;
                    a.fmt_prec(f, true)?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let a = Type::var("A");
        let t = Type::fun(Type::fun(a.clone(), Type::bool()), Type::app("list", vec![a.clone()]));
        assert_eq!(t.to_string(), "(A -> bool) -> (list A)");
    }

    #[test]
    fn matching() {
        let a = Type::var("A");
        let pat = Type::fun(a.clone(), a.clone());
        let mut m = HashMap::new();
        assert!(pat.match_onto(&Type::fun(Type::bool(), Type::bool()), &mut m));
        assert_eq!(m[&Name::simple("A")], Type::bool());
        let mut m = HashMap::new();
        assert!(!pat.match_onto(&Type::fun(Type::bool(), Type::ind()), &mut m));
    }
}

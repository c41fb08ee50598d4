//! Lambda terms, alpha-equivalence, and capture-avoiding substitution.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::KernelError;
use crate::name::Name;
use crate::types::Type;

/// A term variable. Two variables are the same iff name and type agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    name: Name,
    ty: Type,
}

impl Var {
    pub fn new(name: impl Into<Name>, ty: Type) -> Var {
        Var { name: name.into(), ty }
    }

    pub fn name(&self) -> &Name {
        &self.name
    }

    pub fn ty(&self) -> &Type {
        &self.ty
    }

    pub fn with_type(&self, ty: Type) -> Var {
        Var { name: self.name.clone(), ty }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.ty)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TermKind {
    Var(Var),
    Const(Name, Type),
    Abs(Var, Term),
    App(Term, Term),
}

struct TermData {
    kind: TermKind,
    ty: Type,
}

/// A well-typed HOL term. Every constructor checks types, so a `Term` value
/// is always well-typed; its type is cached.
#[derive(Clone)]
pub struct Term(Arc<TermData>);

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state)
    }
}

pub const EQ: &str = "=";
pub const SELECT: &str = "select";

impl Term {
    pub fn var(v: Var) -> Term {
        let ty = v.ty.clone();
        Term(Arc::new(TermData { kind: TermKind::Var(v), ty }))
    }

    /// A constant at a given type instance. Whether the instance is allowed
    /// is decided by the kernel signature, not here.
    pub fn constant(name: impl Into<Name>, ty: Type) -> Term {
        Term(Arc::new(TermData { kind: TermKind::Const(name.into(), ty.clone()), ty }))
    }

    pub fn abs(v: Var, body: Term) -> Term {
        let ty = Type::fun(v.ty.clone(), body.ty().clone());
        Term(Arc::new(TermData { kind: TermKind::Abs(v, body), ty }))
    }

    pub fn app(f: Term, x: Term) -> Result<Term, KernelError> {
        let ty = match f.ty().dest_fun() {
            Some((dom, cod)) if dom == x.ty() => cod.clone(),
            Some((dom, _)) => {
                return Err(KernelError::IllTyped(format!(
                    "cannot apply `{f}` expecting `{dom}` to `{x}` of type `{}`",
                    x.ty()
                )))
            }
            None => {
                return Err(KernelError::IllTyped(format!(
                    "`{f}` of type `{}` is not a function",
                    f.ty()
                )))
            }
        };
        Ok(Term(Arc::new(TermData { kind: TermKind::App(f, x), ty })))
    }

    /// `f x1 ... xn`
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Result<Term, KernelError> {
        args.into_iter().try_fold(f, Term::app)
    }

    /// The polymorphic equality constant instantiated at `ty`.
    pub fn eq_const(ty: &Type) -> Term {
        Term::constant(Name::simple(EQ), Type::fun(ty.clone(), Type::fun(ty.clone(), Type::bool())))
    }

    /// `l = r`
    pub fn mk_eq(l: Term, r: Term) -> Result<Term, KernelError> {
        if l.ty() != r.ty() {
            return Err(KernelError::TypeMismatch(format!(
                "equation sides `{l}` : `{}` and `{r}` : `{}`",
                l.ty(),
                r.ty()
            )));
        }
        let eq = Term::eq_const(l.ty());
        Term::apps(eq, [l, r])
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn ty(&self) -> &Type {
        &self.0.ty
    }

    /// Address of the shared node, stable while any clone is alive.
    pub fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self.kind() {
            TermKind::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn dest_app(&self) -> Option<(&Term, &Term)> {
        match self.kind() {
            TermKind::App(f, x) => Some((f, x)),
            _ => None,
        }
    }

    pub fn dest_abs(&self) -> Option<(&Var, &Term)> {
        match self.kind() {
            TermKind::Abs(v, b) => Some((v, b)),
            _ => None,
        }
    }

    /// Splits `l = r` into its sides.
    pub fn dest_eq(&self) -> Option<(&Term, &Term)> {
        let (lhs_app, r) = self.dest_app()?;
        let (c, l) = lhs_app.dest_app()?;
        match c.kind() {
            TermKind::Const(n, _) if n.namespace().is_empty() && n.base() == EQ => Some((l, r)),
            _ => None,
        }
    }

    /// Head symbol and arguments of an application spine.
    pub fn strip_app(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Some((f, x)) = t.dest_app() {
            args.push(x);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn frees(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_frees(&mut bound, &mut out);
        out
    }

    fn collect_frees<'a>(&'a self, bound: &mut Vec<&'a Var>, out: &mut BTreeSet<Var>) {
        match self.kind() {
            TermKind::Var(v) => {
                if !bound.contains(&v) {
                    out.insert(v.clone());
                }
            }
            TermKind::Const(..) => {}
            TermKind::Abs(v, b) => {
                bound.push(v);
                b.collect_frees(bound, out);
                bound.pop();
            }
            TermKind::App(f, x) => {
                f.collect_frees(bound, out);
                x.collect_frees(bound, out);
            }
        }
    }

    pub fn occurs_free(&self, v: &Var) -> bool {
        match self.kind() {
            TermKind::Var(w) => w == v,
            TermKind::Const(..) => false,
            TermKind::Abs(w, b) => w != v && b.occurs_free(v),
            TermKind::App(f, x) => f.occurs_free(v) || x.occurs_free(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.frees().is_empty()
    }

    /// All type variables, including those in bound variables and constants.
    pub fn type_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_type_vars(&mut out);
        out
    }

    pub fn collect_type_vars(&self, out: &mut BTreeSet<Name>) {
        match self.kind() {
            TermKind::Var(v) => v.ty.collect_type_vars(out),
            TermKind::Const(_, ty) => ty.collect_type_vars(out),
            TermKind::Abs(v, b) => {
                v.ty.collect_type_vars(out);
                b.collect_type_vars(out);
            }
            TermKind::App(f, x) => {
                f.collect_type_vars(out);
                x.collect_type_vars(out);
            }
        }
    }

    /// Visits every constant occurrence.
    pub fn for_each_const(&self, f: &mut impl FnMut(&Name, &Type)) {
        match self.kind() {
            TermKind::Var(_) => {}
            TermKind::Const(n, ty) => f(n, ty),
            TermKind::Abs(_, b) => b.for_each_const(f),
            TermKind::App(g, x) => {
                g.for_each_const(f);
                x.for_each_const(f);
            }
        }
    }

    /// Visits every type appearing in the term (variable, constant and binder types).
    pub fn for_each_type(&self, f: &mut impl FnMut(&Type)) {
        match self.kind() {
            TermKind::Var(v) => f(&v.ty),
            TermKind::Const(_, ty) => f(ty),
            TermKind::Abs(v, b) => {
                f(&v.ty);
                b.for_each_type(f);
            }
            TermKind::App(g, x) => {
                g.for_each_type(f);
                x.for_each_type(f);
            }
        }
    }

    /// Total order that identifies alpha-equivalent terms.
    ///
    /// Bound variables compare by de Bruijn index and sort before free
    /// variables; free variables compare by name then type. Constructors
    /// order as variable, constant, application, abstraction.
    pub fn alpha_cmp(&self, other: &Term) -> Ordering {
        let mut env_l = Vec::new();
        let mut env_r = Vec::new();
        alpha_cmp_in(self, other, &mut env_l, &mut env_r)
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        self.alpha_cmp(other) == Ordering::Equal
    }

    /// Simultaneous capture-avoiding substitution of free variables.
    ///
    /// Binders that would capture a free variable of a replacement are
    /// renamed by appending primes.
    pub fn subst_vars(&self, map: &HashMap<Var, Term>) -> Term {
        if map.is_empty() {
            return self.clone();
        }
        match self.kind() {
            TermKind::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            TermKind::Const(..) => self.clone(),
            TermKind::App(f, x) => {
                let f2 = f.subst_vars(map);
                let x2 = x.subst_vars(map);
                if f2.ptr_eq(f) && x2.ptr_eq(x) {
                    return self.clone();
                }
                Term::app(f2, x2).expect("substitution preserves types")
            }
            TermKind::Abs(v, b) => {
                let inner: HashMap<Var, Term>;
                let map = if map.contains_key(v) {
                    inner = map.iter().filter(|(k, _)| *k != v).map(|(k, t)| (k.clone(), t.clone())).collect();
                    &inner
                } else {
                    map
                };
                let body_frees = b.frees();
                let relevant: Vec<&Term> =
                    body_frees.iter().filter(|y| *y != v).filter_map(|y| map.get(y)).collect();
                if relevant.is_empty() {
                    return self.clone();
                }
                if relevant.iter().any(|r| r.occurs_free(v)) {
                    let mut avoid: HashSet<Name> = body_frees.iter().map(|y| y.name.clone()).collect();
                    for r in &relevant {
                        avoid.extend(r.frees().into_iter().map(|y| y.name));
                    }
                    let fresh = v.with_name(variant(&v.name, &avoid));
                    let mut renamed = map.clone();
                    renamed.insert(v.clone(), Term::var(fresh.clone()));
                    Term::abs(fresh, b.subst_vars(&renamed))
                } else {
                    Term::abs(v.clone(), b.subst_vars(map))
                }
            }
        }
    }

    /// Instantiates type variables throughout, renaming binders whose
    /// instantiated variable would capture a distinct free variable.
    pub fn inst_type(&self, map: &HashMap<Name, Type>) -> Term {
        if map.is_empty() {
            return self.clone();
        }
        match self.kind() {
            TermKind::Var(v) => Term::var(v.with_type(v.ty.instantiate(map))),
            TermKind::Const(n, ty) => Term::constant(n.clone(), ty.instantiate(map)),
            TermKind::App(f, x) => {
                Term::app(f.inst_type(map), x.inst_type(map)).expect("type instantiation preserves typing")
            }
            TermKind::Abs(v, b) => {
                let v_inst = v.with_type(v.ty.instantiate(map));
                let body_frees = b.frees();
                let captures = body_frees
                    .iter()
                    .any(|y| y != v && y.name == v.name && y.ty.instantiate(map) == v_inst.ty);
                if captures {
                    let avoid: HashSet<Name> = body_frees.iter().map(|y| y.name.clone()).collect();
                    let fresh = v.with_name(variant(&v.name, &avoid));
                    let b2 = b.subst_vars(&HashMap::from([(v.clone(), Term::var(fresh.clone()))]));
                    Term::abs(fresh.with_type(fresh.ty.instantiate(map)), b2.inst_type(map))
                } else {
                    Term::abs(v_inst, b.inst_type(map))
                }
            }
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // prec: 0 top, 1 operand of `=`, 2 function position, 3 argument position
        if let Some((l, r)) = self.dest_eq() {
            let paren = prec >= 1;
            if paren {
                f.write_str("(")?;
            }
            l.fmt_prec(f, 1)?;
            f.write_str(" = ")?;
            r.fmt_prec(f, 1)?;
            if paren {
                f.write_str(")")?;
            }
            return Ok(());
        }
        match self.kind() {
            TermKind::Var(v) => write!(f, "{}", v.name),
            TermKind::Const(n, _) => write!(f, "{n}"),
            TermKind::App(g, x) => {
                let paren = prec >= 3;
                if paren {
                    f.write_str("(")?;
                }
                g.fmt_prec(f, 2)?;
                f.write_str(" ")?;
                x.fmt_prec(f, 3)?;
                if paren {
                    f.write_str(")")?;
                }
                Ok(())
            }
            TermKind::Abs(v, b) => {
                let paren = prec >= 1;
                if paren {
                    f.write_str("(")?;
                }
                write!(f, "\\{} : {}. ", v.name, v.ty)?;
                b.fmt_prec(f, 0)?;
                if paren {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl Var {
    fn with_name(&self, name: Name) -> Var {
        Var { name, ty: self.ty.clone() }
    }
}

/// First primed variant of `name` (`x'`, `x''`, ...) not in `avoid`.
pub fn variant(name: &Name, avoid: &HashSet<Name>) -> Name {
    let mut n = name.primed();
    while avoid.contains(&n) {
        n = n.primed();
    }
    n
}

fn bound_index(env: &[&Var], v: &Var) -> Option<usize> {
    env.iter().rev().position(|b| *b == v)
}

fn tag(t: &Term) -> u8 {
    match t.kind() {
        TermKind::Var(_) => 0,
        TermKind::Const(..) => 1,
        TermKind::App(..) => 2,
        TermKind::Abs(..) => 3,
    }
}

fn alpha_cmp_in<'a>(t: &'a Term, u: &'a Term, env_t: &mut Vec<&'a Var>, env_u: &mut Vec<&'a Var>) -> Ordering {
    if t.ptr_eq(u) && env_t.is_empty() && env_u.is_empty() {
        return Ordering::Equal;
    }
    match (t.kind(), u.kind()) {
        (TermKind::Var(x), TermKind::Var(y)) => {
            match (bound_index(env_t, x), bound_index(env_u, y)) {
                (Some(i), Some(j)) => i.cmp(&j),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => x.cmp(y),
            }
        }
        (TermKind::Const(m, a), TermKind::Const(n, b)) => m.cmp(n).then_with(|| a.cmp(b)),
        (TermKind::App(f, x), TermKind::App(g, y)) => {
            alpha_cmp_in(f, g, env_t, env_u).then_with(|| alpha_cmp_in(x, y, env_t, env_u))
        }
        (TermKind::Abs(v, b), TermKind::Abs(w, c)) => v.ty.cmp(&w.ty).then_with(|| {
            env_t.push(v);
            env_u.push(w);
            let r = alpha_cmp_in(b, c, env_t, env_u);
            env_t.pop();
            env_u.pop();
            r
        }),
        _ => tag(t).cmp(&tag(u)),
    }
}

/// Recomputes the type of a term from its structure, checking every
/// application.
pub fn type_of(t: &Term) -> Result<Type, KernelError> {
    match t.kind() {
        TermKind::Var(v) => Ok(v.ty.clone()),
        TermKind::Const(_, ty) => Ok(ty.clone()),
        TermKind::Abs(v, b) => Ok(Type::fun(v.ty.clone(), type_of(b)?)),
        TermKind::App(f, x) => {
            let fty = type_of(f)?;
            let xty = type_of(x)?;
            match fty.dest_fun() {
                Some((dom, cod)) if *dom == xty => Ok(cod.clone()),
                _ => Err(KernelError::IllTyped(format!("cannot apply `{f}` : `{fty}` to `{x}` : `{xty}`"))),
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

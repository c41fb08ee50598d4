//! Locally nameless λΠ terms.
//!
//! Bound variables are de Bruijn indices; binder names are kept only as
//! printing hints, so equality is alpha-equivalence. `Free` variables exist
//! while a term is being built and are closed by [`Term::lam`] and
//! [`Term::pi`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeVar {
    pub id: u32,
    pub hint: Arc<str>,
}

#[derive(Debug, Clone)]
pub enum Term {
    Type,
    Kind,
    Const(Arc<str>),
    Bound(u32),
    Free(FreeVar),
    App(Arc<Term>, Arc<Term>),
    Lam(Arc<str>, Arc<Term>, Arc<Term>),
    Pi(Arc<str>, Arc<Term>, Arc<Term>),
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        use Term::*;
        match (self, other) {
            (Type, Type) | (Kind, Kind) => true,
            (Const(a), Const(b)) => a == b,
            (Bound(a), Bound(b)) => a == b,
            (Free(a), Free(b)) => a.id == b.id,
            (App(f, x), App(g, y)) => f == g && x == y,
            (Lam(_, a, b), Lam(_, c, d)) | (Pi(_, a, b), Pi(_, c, d)) => a == c && b == d,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Term {
    pub fn cnst(name: impl AsRef<str>) -> Term {
        Term::Const(Arc::from(name.as_ref()))
    }

    pub fn app(f: Term, x: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(x))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    /// `v : ty => body`, binding every occurrence of `v` in `body`.
    pub fn lam(v: &FreeVar, ty: Term, body: Term) -> Term {
        Term::Lam(v.hint.clone(), Arc::new(ty), Arc::new(body.close(v.id, 0)))
    }

    /// `v : ty -> body`.
    pub fn pi(v: &FreeVar, ty: Term, body: Term) -> Term {
        Term::Pi(v.hint.clone(), Arc::new(ty), Arc::new(body.close(v.id, 0)))
    }

    /// Non-dependent product `a -> b`.
    pub fn arrow(a: Term, b: Term) -> Term {
        Term::Pi(Arc::from("_"), Arc::new(a), Arc::new(b.shift(1, 0)))
    }

    pub fn is_sort(&self) -> bool {
        matches!(self, Term::Type | Term::Kind)
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, x) = t {
            args.push(&**x);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    fn close(&self, id: u32, depth: u32) -> Term {
        match self {
            Term::Free(v) if v.id == id => Term::Bound(depth),
            Term::App(f, x) => Term::app(f.close(id, depth), x.close(id, depth)),
            Term::Lam(n, a, b) => Term::Lam(n.clone(), Arc::new(a.close(id, depth)), Arc::new(b.close(id, depth + 1))),
            Term::Pi(n, a, b) => Term::Pi(n.clone(), Arc::new(a.close(id, depth)), Arc::new(b.close(id, depth + 1))),
            t => t.clone(),
        }
    }

    /// Adds `d` to every index at or above `cutoff`.
    pub fn shift(&self, d: i64, cutoff: u32) -> Term {
        if d == 0 {
            return self.clone();
        }
        match self {
            Term::Bound(i) if *i >= cutoff => Term::Bound((*i as i64 + d) as u32),
            Term::App(f, x) => Term::app(f.shift(d, cutoff), x.shift(d, cutoff)),
            Term::Lam(n, a, b) => Term::Lam(n.clone(), Arc::new(a.shift(d, cutoff)), Arc::new(b.shift(d, cutoff + 1))),
            Term::Pi(n, a, b) => Term::Pi(n.clone(), Arc::new(a.shift(d, cutoff)), Arc::new(b.shift(d, cutoff + 1))),
            t => t.clone(),
        }
    }

    /// Replaces the `n` outermost-free indices: index `depth + k` becomes
    /// `subs[k]` (shifted under the binders crossed), higher indices drop by `n`.
    pub fn instantiate(&self, subs: &[Term]) -> Term {
        self.inst_at(subs, 0)
    }

    fn inst_at(&self, subs: &[Term], depth: u32) -> Term {
        match self {
            Term::Bound(i) if *i >= depth => {
                let k = (*i - depth) as usize;
                match subs.get(k) {
                    Some(s) => s.shift(depth as i64, 0),
                    None => Term::Bound(*i - subs.len() as u32),
                }
            }
            Term::App(f, x) => Term::app(f.inst_at(subs, depth), x.inst_at(subs, depth)),
            Term::Lam(n, a, b) => {
                Term::Lam(n.clone(), Arc::new(a.inst_at(subs, depth)), Arc::new(b.inst_at(subs, depth + 1)))
            }
            Term::Pi(n, a, b) => {
                Term::Pi(n.clone(), Arc::new(a.inst_at(subs, depth)), Arc::new(b.inst_at(subs, depth + 1)))
            }
            t => t.clone(),
        }
    }

    /// `body[0 := arg]` for the body of a binder.
    pub fn subst_top(&self, arg: &Term) -> Term {
        self.instantiate(std::slice::from_ref(arg))
    }

    /// True if index `i` (relative to this term) occurs.
    pub fn has_bound(&self, i: u32) -> bool {
        match self {
            Term::Bound(j) => *j == i,
            Term::App(f, x) => f.has_bound(i) || x.has_bound(i),
            Term::Lam(_, a, b) | Term::Pi(_, a, b) => a.has_bound(i) || b.has_bound(i + 1),
            _ => false,
        }
    }

    pub fn consts(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::App(f, x) => {
                f.consts(out);
                x.consts(out);
            }
            Term::Lam(_, a, b) | Term::Pi(_, a, b) => {
                a.consts(out);
                b.consts(out);
            }
            _ => {}
        }
    }

    pub fn has_free(&self) -> bool {
        match self {
            Term::Free(_) => true,
            Term::App(f, x) => f.has_free() || x.has_free(),
            Term::Lam(_, a, b) | Term::Pi(_, a, b) => a.has_free() || b.has_free(),
            _ => false,
        }
    }

    /// Rewrites constant names.
    pub fn map_consts(&self, f: &impl Fn(&str) -> Option<Arc<str>>) -> Term {
        match self {
            Term::Const(c) => match f(c) {
                Some(n) => Term::Const(n),
                None => self.clone(),
            },
            Term::App(g, x) => Term::app(g.map_consts(f), x.map_consts(f)),
            Term::Lam(n, a, b) => Term::Lam(n.clone(), Arc::new(a.map_consts(f)), Arc::new(b.map_consts(f))),
            Term::Pi(n, a, b) => Term::Pi(n.clone(), Arc::new(a.map_consts(f)), Arc::new(b.map_consts(f))),
            t => t.clone(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::App(f, x) => 1 + f.size() + x.size(),
            Term::Lam(_, a, b) | Term::Pi(_, a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::term_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(id: u32, n: &str) -> FreeVar {
        FreeVar { id, hint: Arc::from(n) }
    }

    #[test]
    fn binder_names_do_not_matter() {
        let x = fv(0, "x");
        let y = fv(1, "y");
        let a = Term::lam(&x, Term::cnst("A"), Term::Free(x.clone()));
        let b = Term::lam(&y, Term::cnst("A"), Term::Free(y.clone()));
        assert_eq!(a, b);
    }

    #[test]
    fn substitution_shifts_under_binders() {
        // (y : A => #1) [0 := #0] where the outer #0 is free
        let body = Term::Lam(Arc::from("y"), Arc::new(Term::cnst("A")), Arc::new(Term::Bound(1)));
        let r = body.subst_top(&Term::Bound(0));
        assert_eq!(r, Term::Lam(Arc::from("y"), Arc::new(Term::cnst("A")), Arc::new(Term::Bound(1))));
        let r = body.subst_top(&Term::cnst("c"));
        assert_eq!(r, Term::Lam(Arc::from("y"), Arc::new(Term::cnst("A")), Arc::new(Term::cnst("c"))));
    }

    #[test]
    fn arrow_is_non_dependent() {
        let t = Term::arrow(Term::cnst("A"), Term::cnst("B"));
        match &t {
            Term::Pi(_, _, b) => assert!(!b.has_bound(0)),
            _ => unreachable!(),
        }
    }
}

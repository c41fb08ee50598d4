//! Matching terms up to type instantiation.

use std::collections::HashMap;

use proofcloud_kernel::{Name, Sequent, Term, TermKind, Type, Var};

/// True if some type instantiation of `pattern` is alpha-equivalent to
/// `target`. Free term variables must correspond one to one.
pub fn instance_of(pattern: &Term, target: &Term) -> bool {
    let mut tys = HashMap::new();
    let mut frees = Vec::new();
    matches(pattern, target, &mut tys, &mut Vec::new(), &mut frees)
}

/// Sequent version of [`instance_of`], with one instantiation shared by
/// the conclusion and the hypotheses (which must correspond in order).
pub fn sequent_instance_of(pattern: &Sequent, target: &Sequent) -> bool {
    if pattern.hyps().len() != target.hyps().len() {
        return false;
    }
    let mut tys = HashMap::new();
    let mut frees = Vec::new();
    pattern
        .terms()
        .zip(target.terms())
        .all(|(p, t)| matches(p, t, &mut tys, &mut Vec::new(), &mut frees))
}

fn matches<'a>(
    p: &'a Term,
    t: &'a Term,
    tys: &mut HashMap<Name, Type>,
    bound: &mut Vec<(&'a Var, &'a Var)>,
    frees: &mut Vec<(&'a Var, &'a Var)>,
) -> bool {
    match (p.kind(), t.kind()) {
        (TermKind::Var(x), TermKind::Var(y)) => {
            if !x.ty().match_onto(y.ty(), tys) {
                return false;
            }
            match bound.iter().rev().find(|(a, b)| a == &x || b == &y) {
                Some((a, b)) => a == &x && b == &y,
                None => match frees.iter().find(|(a, b)| a == &x || b == &y) {
                    Some((a, b)) => a == &x && b == &y,
                    None => {
                        frees.push((x, y));
                        x.name() == y.name()
                    }
                },
            }
        }
        (TermKind::Const(a, ta), TermKind::Const(b, tb)) => a == b && ta.match_onto(tb, tys),
        (TermKind::App(f, x), TermKind::App(g, y)) => {
            matches(f, g, tys, bound, frees) && matches(x, y, tys, bound, frees)
        }
        (TermKind::Abs(x, b), TermKind::Abs(y, c)) => {
            if !x.ty().match_onto(y.ty(), tys) {
                return false;
            }
            bound.push((x, y));
            let ok = matches(b, c, tys, bound, frees);
            bound.pop();
            ok
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str, ty: Type) -> Var {
        Var::new(Name::simple(n), ty)
    }

    fn a() -> Type {
        Type::var(Name::simple("A"))
    }

    #[test]
    fn polymorphic_identity_matches_its_instances() {
        let p = Term::abs(v("x", a()), Term::var(v("x", a())));
        let t = Term::abs(v("y", Type::bool()), Term::var(v("y", Type::bool())));
        assert!(instance_of(&p, &t));
        assert!(!instance_of(&t, &p));
    }

    #[test]
    fn one_instantiation_for_the_whole_term() {
        let eq = |l: Term, r: Term| Term::mk_eq(l, r).unwrap();
        let c = |ty: Type| Term::constant(Name::simple("c"), ty);
        let p = eq(c(a()), c(a()));
        assert!(instance_of(&p, &eq(c(Type::bool()), c(Type::bool()))));
        let d = |ty: Type| Term::constant(Name::simple("d"), Type::fun(ty, Type::bool()));
        let mixed = Term::app(d(a()), c(a())).unwrap();
        let target = Term::app(d(Type::bool()), c(Type::bool())).unwrap();
        assert!(instance_of(&mixed, &target));
    }

    #[test]
    fn bound_and_free_variables_are_not_confused() {
        let x = v("x", Type::bool());
        let y = v("y", Type::bool());
        let p = Term::abs(x.clone(), Term::var(y.clone()));
        let t = Term::abs(x.clone(), Term::var(x.clone()));
        assert!(!instance_of(&p, &t));
    }
}

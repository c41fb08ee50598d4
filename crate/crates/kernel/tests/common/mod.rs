#![allow(dead_code)]

use std::collections::HashMap;

use proofcloud_kernel::{Kernel, KernelVersion, Name, Substitution, Term, TermKind, Theorem, Type, Var};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn a() -> Type {
    Type::var("A")
}

pub fn bool_ty() -> Type {
    Type::bool()
}

pub fn var(n: &str, ty: Type) -> Var {
    Var::new(n, ty)
}

pub fn tv(n: &str, ty: Type) -> Term {
    Term::var(var(n, ty))
}

pub fn p() -> Term {
    tv("p", bool_ty())
}

pub fn q() -> Term {
    tv("q", bool_ty())
}

pub fn app(f: &Term, x: &Term) -> Term {
    Term::app(f.clone(), x.clone()).unwrap()
}

pub fn lam(v: &Var, b: &Term) -> Term {
    Term::abs(v.clone(), b.clone())
}

pub fn eq(l: &Term, r: &Term) -> Term {
    Term::mk_eq(l.clone(), r.clone()).unwrap()
}

pub fn k5() -> Kernel {
    Kernel::new(KernelVersion::V5)
}

pub fn k6() -> Kernel {
    Kernel::new(KernelVersion::V6)
}

/// Nameless view of a term used as an independent oracle for
/// alpha-equivalence and substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Db {
    Bound(usize),
    Free(String, String),
    Const(String, String),
    App(Box<Db>, Box<Db>),
    Abs(String, Box<Db>),
}

pub fn to_db(t: &Term) -> Db {
    fn go(t: &Term, env: &mut Vec<Var>) -> Db {
        match t.kind() {
            TermKind::Var(v) => match env.iter().rev().position(|b| b == v) {
                Some(i) => Db::Bound(i),
                None => Db::Free(v.name().to_string(), v.ty().to_string()),
            },
            TermKind::Const(n, ty) => Db::Const(n.to_string(), ty.to_string()),
            TermKind::App(f, x) => Db::App(Box::new(go(f, env)), Box::new(go(x, env))),
            TermKind::Abs(v, b) => {
                env.push(v.clone());
                let body = go(b, env);
                env.pop();
                Db::Abs(v.ty().to_string(), Box::new(body))
            }
        }
    }
    go(t, &mut Vec::new())
}

fn shift(d: &Db, by: usize, cutoff: usize) -> Db {
    match d {
        Db::Bound(i) if *i >= cutoff => Db::Bound(i + by),
        Db::App(f, x) => Db::App(Box::new(shift(f, by, cutoff)), Box::new(shift(x, by, cutoff))),
        Db::Abs(ty, b) => Db::Abs(ty.clone(), Box::new(shift(b, by, cutoff + 1))),
        other => other.clone(),
    }
}

/// Replaces free variables by name/type; replacements are closed over the
/// binders they are moved under by shifting.
pub fn db_subst(d: &Db, map: &HashMap<(String, String), Db>) -> Db {
    fn go(d: &Db, map: &HashMap<(String, String), Db>, depth: usize) -> Db {
        match d {
            Db::Free(n, ty) => match map.get(&(n.clone(), ty.clone())) {
                Some(r) => shift(r, depth, 0),
                None => d.clone(),
            },
            Db::App(f, x) => Db::App(Box::new(go(f, map, depth)), Box::new(go(x, map, depth))),
            Db::Abs(ty, b) => Db::Abs(ty.clone(), Box::new(go(b, map, depth + 1))),
            other => other.clone(),
        }
    }
    go(d, map, 0)
}

/// Beta-contracts a top-level redex in the nameless view.
pub fn db_beta(d: &Db) -> Option<Db> {
    fn subst_top(b: &Db, arg: &Db, depth: usize) -> Db {
        match b {
            Db::Bound(i) if *i == depth => shift(arg, depth, 0),
            Db::Bound(i) if *i > depth => Db::Bound(i - 1),
            Db::App(f, x) => Db::App(Box::new(subst_top(f, arg, depth)), Box::new(subst_top(x, arg, depth))),
            Db::Abs(ty, body) => Db::Abs(ty.clone(), Box::new(subst_top(body, arg, depth + 1))),
            other => other.clone(),
        }
    }
    match d {
        Db::App(f, x) => match f.as_ref() {
            Db::Abs(_, b) => Some(subst_top(b, x, 0)),
            _ => None,
        },
        _ => None,
    }
}

pub fn hyps_db(th: &Theorem) -> Vec<Db> {
    th.hyps().iter().map(to_db).collect()
}

/// Random generator for small well-typed terms and theorems.
pub struct Gen {
    pub rng: StdRng,
    pub k: Kernel,
    pub pool: Vec<Theorem>,
}

impl Gen {
    pub fn new(seed: u64, version: KernelVersion) -> Gen {
        Gen { rng: StdRng::seed_from_u64(seed), k: Kernel::new(version), pool: Vec::new() }
    }

    pub fn a_var(&mut self) -> Var {
        let names = ["x", "y", "z"];
        var(names[self.rng.gen_range(0..names.len())], a())
    }

    pub fn a_term(&mut self, depth: u32) -> Term {
        let g = tv("g", Type::fun(a(), a()));
        match if depth == 0 { self.rng.gen_range(0..3) } else { self.rng.gen_range(0..6) } {
            0 | 1 => Term::var(self.a_var()),
            2 => Term::constant("c", a()),
            3 => app(&g, &self.a_term(depth - 1)),
            4 => {
                let v = self.a_var();
                let body = self.a_term(depth - 1);
                app(&lam(&v, &body), &self.a_term(depth - 1))
            }
            _ => {
                let v = self.a_var();
                let body = self.a_term(depth - 1);
                let h = tv("h", Type::fun(Type::fun(a(), a()), a()));
                app(&h, &lam(&v, &body))
            }
        }
    }

    pub fn bool_term(&mut self, depth: u32) -> Term {
        let names = ["p", "q", "r"];
        let f = tv("f", Type::fun(a(), bool_ty()));
        match if depth == 0 { 0 } else { self.rng.gen_range(0..6) } {
            0 | 1 => tv(names[self.rng.gen_range(0..3)], bool_ty()),
            2 => eq(&self.a_term(depth - 1), &self.a_term(depth - 1)),
            3 => app(&f, &self.a_term(depth - 1)),
            4 => eq(&self.bool_term(depth - 1), &self.bool_term(depth - 1)),
            _ => {
                let v = self.a_var();
                let body = self.bool_term(depth - 1);
                app(&lam(&v, &body), &self.a_term(depth - 1))
            }
        }
    }

    pub fn any_term(&mut self) -> Term {
        if self.rng.gen_bool(0.5) {
            let d = self.rng.gen_range(0..3);
            self.a_term(d)
        } else {
            let d = self.rng.gen_range(0..3);
            self.bool_term(d)
        }
    }

    pub fn pick(&mut self) -> Option<Theorem> {
        if self.pool.is_empty() {
            None
        } else {
            let i = self.rng.gen_range(0..self.pool.len());
            Some(self.pool[i].clone())
        }
    }

    /// Picks a pool theorem whose conclusion is an equation.
    pub fn pick_eq(&mut self) -> Option<Theorem> {
        let eqs: Vec<Theorem> = self.pool.iter().filter(|t| t.concl().dest_eq().is_some()).cloned().collect();
        if eqs.is_empty() {
            None
        } else {
            let i = self.rng.gen_range(0..eqs.len());
            Some(eqs[i].clone())
        }
    }

    pub fn random_subst(&mut self) -> Substitution {
        let mut ty = Vec::new();
        if self.rng.gen_bool(0.3) {
            let target = if self.rng.gen_bool(0.5) { bool_ty() } else { Type::var("B") };
            ty.push((Name::simple("A"), target));
        }
        let mut tm = Vec::new();
        if self.rng.gen_bool(0.7) {
            let v = self.a_var();
            // keys refer to the pre-instantiation type; replacement must
            // have the instantiated type
            let repl = self.a_term(1);
            let inst: HashMap<Name, Type> = ty.iter().cloned().collect();
            tm.push((v, repl.inst_type(&inst)));
        }
        if self.rng.gen_bool(0.5) {
            tm.push((var("p", bool_ty()), self.bool_term(1)));
        }
        Substitution::new(ty, tm).expect("generated substitution is well-formed")
    }

    /// Applies one random rule, adding the result to the pool.
    /// Returns the rule name, whether it succeeded and how many helper
    /// theorems were built along the way.
    pub fn step(&mut self) -> (&'static str, bool, usize) {
        let mut helpers = 0;
        let choice = self.rng.gen_range(0..14);
        let res: (&'static str, Option<Theorem>) = match choice {
            0 => {
                let t = self.any_term();
                ("refl", self.k.refl(&t).ok())
            }
            1 => {
                let t = self.bool_term(2);
                ("assume", self.k.assume(&t).ok())
            }
            2 => match (self.pick_eq(), self.pick()) {
                (Some(a), Some(b)) => ("eqMp", self.k.eq_mp(&a, &b).ok()),
                _ => ("eqMp", None),
            },
            3 => match self.pick_eq() {
                Some(d) => {
                    let v = self.a_var();
                    ("absThm", self.k.abs_thm(&v, &d).ok())
                }
                None => ("absThm", None),
            },
            4 => match (self.pick_eq(), self.pick_eq()) {
                (Some(a), Some(b)) => ("appThm", self.k.app_thm(&a, &b).ok()),
                _ => ("appThm", None),
            },
            5 => match (self.pick(), self.pick()) {
                (Some(a), Some(b)) => ("deductAntisym", self.k.deduct_antisym(&a, &b).ok()),
                _ => ("deductAntisym", None),
            },
            6 => match self.pick() {
                Some(d) => {
                    let s = self.random_subst();
                    ("subst", self.k.subst(&s, &d).ok())
                }
                None => ("subst", None),
            },
            7 => {
                let v = self.a_var();
                let body = if self.rng.gen_bool(0.5) { self.a_term(2) } else { self.bool_term(2) };
                let arg = self.a_term(1);
                ("betaConv", self.k.beta_conv(&app(&lam(&v, &body), &arg)).ok())
            }
            8 => match self.pick_eq() {
                Some(d) => ("sym", self.k.sym(&d).ok()),
                None => ("sym", None),
            },
            9 => match (self.pick_eq(), self.pick_eq()) {
                (Some(a), Some(b)) => ("trans", self.k.trans(&a, &b).ok()),
                _ => ("trans", None),
            },
            10 => match (self.pick(), self.pick()) {
                (Some(a), Some(b)) => ("proveHyp", self.k.prove_hyp(&a, &b).ok()),
                _ => ("proveHyp", None),
            },
            11 => {
                let h = self.bool_term(1);
                let c = self.bool_term(1);
                ("axiom", self.k.axiom(&[h], &c).ok())
            }
            12 => match self.pick_eq() {
                // trans with a compatible right-hand premise
                Some(d) => {
                    let (_, t) = d.concl().dest_eq().unwrap();
                    let t = t.clone();
                    let r = self.k.refl(&t).unwrap();
                    helpers += 1;
                    ("trans", self.k.trans(&d, &r).ok())
                }
                None => ("trans", None),
            },
            _ => {
                let t = self.bool_term(2);
                let a = self.k.assume(&t).unwrap();
                self.pool.push(a);
                helpers += 1;
                match self.pick() {
                    Some(d) => ("deductAntisym", self.k.deduct_antisym(&d, &d).ok()),
                    None => ("deductAntisym", None),
                }
            }
        };
        match res.1 {
            Some(th) => {
                self.pool.push(th);
                (res.0, true, helpers)
            }
            None => (res.0, false, helpers),
        }
    }
}

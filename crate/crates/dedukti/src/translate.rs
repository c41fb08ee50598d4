//! Trace to module translation.
//!
//! Every emitted theorem is closed over its type variables, then its free
//! term variables, then its hypotheses in canonical order. References to a
//! named theorem apply those arguments in the same order, read off the
//! environment at the use site.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use proofcloud_article::ArticleResult;
use proofcloud_kernel::{
    Name, Payload, ProofRef, ProofTrace, Rule, Sequent, Term, TermKind, TraceId, Type, TypeKind, Var, EQ, FUN,
    SELECT,
};
use proofcloud_lp::{Decl, FreeVar, Module, Term as Lp};
use thiserror::Error;

use crate::mangle::{base_ident, Mangler};
use crate::prelude::{hol, PRELUDE_NAME};
use crate::symbols::{lgg, Symbols};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TranslateError {
    #[error("type operator `{0}` is not declared")]
    UndeclaredTypeOp(String),
    #[error("type operator `{name}` applied to {got} arguments, declared with {arity}")]
    Arity { name: String, arity: usize, got: usize },
    #[error("constant `{0}` is not declared")]
    UndeclaredConst(String),
    #[error("constant `{name}` at `{ty}` is not an instance of its declared type")]
    BadInstance { name: String, ty: String },
    #[error("cannot translate {rule} at node {node}: {reason}")]
    UntranslatableRule { rule: &'static str, node: u32, reason: String },
}

pub type Result<T> = std::result::Result<T, TranslateError>;

/// One translated article.
#[derive(Debug, Clone)]
pub struct Translation {
    pub module: Module,
    /// Symbols the module declares, unqualified.
    pub symbols: Symbols,
    /// HOL export name and emitted identifier, in export order.
    pub exports: Vec<(String, String)>,
    pub mangler: Mangler,
}

fn is_builtin_type(n: &Name) -> bool {
    n.namespace().is_empty() && matches!(n.base(), "bool" | "ind" | "->")
}

fn is_builtin_const(n: &Name) -> bool {
    n.namespace().is_empty() && (n.base() == EQ || n.base() == SELECT)
}

#[derive(Clone, Default)]
struct Env {
    tys: HashMap<Name, Lp>,
    vars: HashMap<Var, Lp>,
    hyps: Vec<(Term, Lp)>,
}

impl Env {
    fn hyp(&self, h: &Term) -> Option<Lp> {
        self.hyps.iter().rev().find(|(t, _)| t.alpha_eq(h)).map(|(_, p)| p.clone())
    }
}

struct Tr<'a> {
    syms: Symbols,
    next: u32,
    trace: Option<&'a ProofTrace>,
    named: HashMap<ProofRef, String>,
}

impl<'a> Tr<'a> {
    fn new(syms: Symbols, trace: Option<&'a ProofTrace>) -> Tr<'a> {
        Tr { syms, next: 0, trace, named: HashMap::new() }
    }

    fn fresh(&mut self, hint: &str) -> FreeVar {
        self.next += 1;
        FreeVar { id: self.next, hint: base_ident(hint).into() }
    }

    fn ty(&mut self, ty: &Type, env: &Env) -> Result<Lp> {
        match ty.kind() {
            TypeKind::Var(a) => Ok(env.tys.get(a).cloned().unwrap_or_else(|| hol("bool"))),
            TypeKind::App(op, args) => {
                let head = if is_builtin_type(op) {
                    hol(match op.base() {
                        FUN => "arr",
                        b => b,
                    })
                } else {
                    let s = self.syms.type_op(op).ok_or_else(|| TranslateError::UndeclaredTypeOp(op.to_string()))?;
                    if s.arity != args.len() {
                        return Err(TranslateError::Arity { name: op.to_string(), arity: s.arity, got: args.len() });
                    }
                    Lp::cnst(&s.ident)
                };
                let mut out = head;
                for a in args {
                    out = Lp::app(out, self.ty(a, env)?);
                }
                Ok(out)
            }
        }
    }

    fn term_ty(&mut self, ty: &Type, env: &Env) -> Result<Lp> {
        Ok(Lp::app(hol("term"), self.ty(ty, env)?))
    }

    /// `select A (x : term A => eq A x x)`, the stand-in for a variable
    /// that does not occur in the theorem being proved.
    fn witness(&mut self, ty: &Type, env: &Env) -> Result<Lp> {
        let a = self.ty(ty, env)?;
        let x = self.fresh("x");
        let body = Lp::apps(hol("eq"), [a.clone(), Lp::Free(x.clone()), Lp::Free(x.clone())]);
        let pred = Lp::lam(&x, Lp::app(hol("term"), a.clone()), body);
        Ok(Lp::apps(hol("select"), [a, pred]))
    }

    fn term(&mut self, t: &Term, env: &mut Env) -> Result<Lp> {
        match t.kind() {
            TermKind::Var(v) => match env.vars.get(v) {
                Some(x) => Ok(x.clone()),
                None => self.witness(v.ty(), env),
            },
            TermKind::Const(n, ty) => self.constant(n, ty, env),
            TermKind::App(f, x) => Ok(Lp::app(self.term(f, env)?, self.term(x, env)?)),
            TermKind::Abs(v, b) => {
                let x = self.fresh(v.name().base());
                let dom = self.term_ty(v.ty(), env)?;
                let old = env.vars.insert(v.clone(), Lp::Free(x.clone()));
                let body = self.term(b, env);
                match old {
                    Some(o) => env.vars.insert(v.clone(), o),
                    None => env.vars.remove(v),
                };
                Ok(Lp::lam(&x, dom, body?))
            }
        }
    }

    fn constant(&mut self, n: &Name, ty: &Type, env: &Env) -> Result<Lp> {
        if is_builtin_const(n) {
            let a = if n.base() == EQ {
                ty.dest_fun().map(|(a, _)| a)
            } else {
                ty.dest_fun().map(|(_, a)| a)
            };
            let a = a.ok_or_else(|| TranslateError::BadInstance { name: n.to_string(), ty: ty.to_string() })?;
            return Ok(Lp::app(hol(if n.base() == EQ { "eq" } else { "select" }), self.ty(a, env)?));
        }
        let s = self.syms.constant(n).ok_or_else(|| TranslateError::UndeclaredConst(n.to_string()))?.clone();
        let mut m = HashMap::new();
        if !s.generic.match_onto(ty, &mut m) {
            return Err(TranslateError::BadInstance { name: n.to_string(), ty: ty.to_string() });
        }
        let mut out = Lp::cnst(&s.ident);
        for p in &s.params {
            let arg = m.get(p).cloned().unwrap_or_else(|| Type::var(p.clone()));
            out = Lp::app(out, self.ty(&arg, env)?);
        }
        Ok(out)
    }

    fn proof_ty(&mut self, t: &Term, env: &mut Env) -> Result<Lp> {
        Ok(Lp::app(hol("proof"), self.term(t, env)?))
    }

    /// Binders closing `seq` and the environment they set up.
    fn open(&mut self, seq: &Sequent) -> Result<(Vec<(FreeVar, Lp)>, Env)> {
        let mut env = Env::default();
        let mut binders = Vec::new();
        for a in seq.type_vars() {
            let x = self.fresh(a.base());
            env.tys.insert(a, Lp::Free(x.clone()));
            binders.push((x, hol("type")));
        }
        for v in seq.frees() {
            let x = self.fresh(v.name().base());
            let ty = self.term_ty(v.ty(), &env)?;
            env.vars.insert(v, Lp::Free(x.clone()));
            binders.push((x, ty));
        }
        for h in seq.hyps() {
            let x = self.fresh("h");
            let ty = self.proof_ty(h, &mut env)?;
            env.hyps.push((h.clone(), Lp::Free(x.clone())));
            binders.push((x, ty));
        }
        Ok((binders, env))
    }

    /// `Π binders. proof concl` for `seq`.
    fn closure(&mut self, seq: &Sequent) -> Result<Lp> {
        let (binders, mut env) = self.open(seq)?;
        let body = self.proof_ty(seq.concl(), &mut env)?;
        Ok(binders.iter().rev().fold(body, |acc, (x, ty)| Lp::pi(x, ty.clone(), acc)))
    }

    /// Closed type and proof term for `r` proving `seq`.
    fn theorem(&mut self, seq: &Sequent, r: ProofRef, allow_named: bool) -> Result<(Lp, Lp)> {
        let (binders, mut env) = self.open(seq)?;
        let ty = self.proof_ty(seq.concl(), &mut env)?;
        let body = if allow_named { self.proof(r, &mut env)? } else { self.inline(r, &mut env)? };
        let ty = binders.iter().rev().fold(ty, |acc, (x, t)| Lp::pi(x, t.clone(), acc));
        let body = binders.iter().rev().fold(body, |acc, (x, t)| Lp::lam(x, t.clone(), acc));
        Ok((ty, body))
    }

    fn args_for(&mut self, seq: &Sequent, env: &mut Env, node: u32) -> Result<Vec<Lp>> {
        let mut out = Vec::new();
        for a in seq.type_vars() {
            out.push(self.ty(&Type::var(a), env)?);
        }
        for v in seq.frees() {
            out.push(self.term(&Term::var(v), env)?);
        }
        for h in seq.hyps() {
            out.push(self.hyp(h, env, "reference", node)?);
        }
        Ok(out)
    }

    fn hyp(&self, h: &Term, env: &Env, rule: &'static str, node: u32) -> Result<Lp> {
        env.hyp(h).ok_or_else(|| TranslateError::UntranslatableRule {
            rule,
            node,
            reason: format!("hypothesis `{h}` is not in scope"),
        })
    }

    fn proof(&mut self, r: ProofRef, env: &mut Env) -> Result<Lp> {
        if let Some(ident) = self.named.get(&r).cloned() {
            let seq = self.trace.expect("proof translation has a trace").sequent(r).clone();
            let args = self.args_for(&seq, env, r.node.0)?;
            return Ok(Lp::apps(Lp::cnst(ident), args));
        }
        self.inline(r, env)
    }

    fn inline(&mut self, r: ProofRef, env: &mut Env) -> Result<Lp> {
        let trace = self.trace.expect("proof translation has a trace");
        let node = trace.node(r.node);
        let id = node.id.0;
        let rule = node.rule.name();
        let bad = |reason: &str| TranslateError::UntranslatableRule { rule, node: id, reason: reason.to_string() };
        let concl = |k: usize| trace.sequent(node.premises[k]).concl();
        let eq_sides = |t: &'a Term| t.dest_eq().ok_or_else(|| bad("premise is not an equation"));
        match node.rule {
            Rule::Refl => {
                let Payload::Term(t) = &node.payload else { return Err(bad("missing term")) };
                let a = self.ty(t.ty(), env)?;
                let t = self.term(t, env)?;
                Ok(Lp::apps(hol("Refl"), [a, t]))
            }
            Rule::Assume => {
                let Payload::Term(t) = &node.payload else { return Err(bad("missing term")) };
                self.hyp(t, env, rule, id)
            }
            Rule::EqMp => {
                let (p, q) = eq_sides(concl(0))?;
                let args = [self.term(p, env)?, self.term(q, env)?];
                let d1 = self.proof(node.premises[0], env)?;
                let d2 = self.proof(node.premises[1], env)?;
                Ok(Lp::apps(hol("EqMp"), args.into_iter().chain([d1, d2])))
            }
            Rule::AbsThm => {
                let Payload::Var(v) = &node.payload else { return Err(bad("missing variable")) };
                let (t, u) = eq_sides(concl(0))?;
                let a = self.ty(v.ty(), env)?;
                let b = self.ty(t.ty(), env)?;
                let f = self.term(&Term::abs(v.clone(), t.clone()), env)?;
                let g = self.term(&Term::abs(v.clone(), u.clone()), env)?;
                let x = self.fresh(v.name().base());
                let old = env.vars.insert(v.clone(), Lp::Free(x.clone()));
                let d = self.proof(node.premises[0], env);
                match old {
                    Some(o) => env.vars.insert(v.clone(), o),
                    None => env.vars.remove(v),
                };
                let d = Lp::lam(&x, Lp::app(hol("term"), a.clone()), d?);
                Ok(Lp::apps(hol("FunExt"), [a, b, f, g, d]))
            }
            Rule::AppThm => {
                let (f, g) = eq_sides(concl(0))?;
                let (x, y) = eq_sides(concl(1))?;
                let b = f.ty().dest_fun().ok_or_else(|| bad("not a function"))?.1.clone();
                let mut args = vec![self.ty(x.ty(), env)?, self.ty(&b, env)?];
                for t in [f, g, x, y] {
                    args.push(self.term(t, env)?);
                }
                args.push(self.proof(node.premises[0], env)?);
                args.push(self.proof(node.premises[1], env)?);
                Ok(Lp::apps(hol("AppThm"), args))
            }
            Rule::DeductAntisym => {
                let (p, q) = (concl(0), concl(1));
                let d1 = self.discharge(q, node.premises[0], env)?;
                let d2 = self.discharge(p, node.premises[1], env)?;
                Ok(Lp::apps(hol("DeductAntisym"), [self.term(p, env)?, self.term(q, env)?, d1, d2]))
            }
            Rule::Subst => {
                let Payload::Subst(sigma) = &node.payload else { return Err(bad("missing substitution")) };
                let prem = trace.sequent(node.premises[0]);
                let mut inner = Env::default();
                for a in prem.type_vars() {
                    let img = sigma.apply_type(&Type::var(a.clone()));
                    inner.tys.insert(a, self.ty(&img, env)?);
                }
                for v in prem.frees() {
                    let img = self.term(&sigma.apply_var(&v), env)?;
                    inner.vars.insert(v, img);
                }
                for h in prem.hyps() {
                    let p = self.hyp(&sigma.apply(h), env, rule, id)?;
                    inner.hyps.push((h.clone(), p));
                }
                self.proof(node.premises[0], &mut inner)
            }
            Rule::BetaConv => {
                let Payload::Term(t) = &node.payload else { return Err(bad("missing term")) };
                let (f, x) = t.dest_app().ok_or_else(|| bad("not a redex"))?;
                let args = [self.ty(x.ty(), env)?, self.ty(t.ty(), env)?, self.term(f, env)?, self.term(x, env)?];
                Ok(Lp::apps(hol("BetaConv"), args))
            }
            Rule::Sym => {
                let (x, y) = eq_sides(concl(0))?;
                let args = [self.ty(x.ty(), env)?, self.term(x, env)?, self.term(y, env)?];
                let d = self.proof(node.premises[0], env)?;
                Ok(Lp::apps(hol("Sym"), args.into_iter().chain([d])))
            }
            Rule::Trans => {
                let (s, t) = eq_sides(concl(0))?;
                let (_, u) = eq_sides(concl(1))?;
                let args = [self.ty(s.ty(), env)?, self.term(s, env)?, self.term(t, env)?, self.term(u, env)?];
                let d1 = self.proof(node.premises[0], env)?;
                let d2 = self.proof(node.premises[1], env)?;
                Ok(Lp::apps(hol("Trans"), args.into_iter().chain([d1, d2])))
            }
            Rule::ProveHyp => {
                let (phi, psi) = (concl(0), concl(1));
                let d1 = self.proof(node.premises[0], env)?;
                let d2 = self.discharge(phi, node.premises[1], env)?;
                Ok(Lp::apps(hol("ProveHyp"), [self.term(phi, env)?, self.term(psi, env)?, d1, d2]))
            }
            Rule::Axiom | Rule::DefineConst | Rule::DefineTypeOp => Err(bad("declaration referenced before it was emitted")),
        }
    }

    /// `h : proof phi => |r|` with `phi` bound to `h` inside `r`.
    fn discharge(&mut self, phi: &Term, r: ProofRef, env: &mut Env) -> Result<Lp> {
        let h = self.fresh("h");
        let ty = self.proof_ty(phi, env)?;
        env.hyps.push((phi.clone(), Lp::Free(h.clone())));
        let d = self.proof(r, env);
        env.hyps.pop();
        Ok(Lp::lam(&h, ty, d?))
    }
}

/// Translates a type with its type variables left as free variables.
pub fn translate_type(syms: &Symbols, ty: &Type) -> Result<Lp> {
    let mut tr = Tr::new(syms.clone(), None);
    let mut env = Env::default();
    for a in ty.type_vars() {
        let x = tr.fresh(a.base());
        env.tys.insert(a, Lp::Free(x));
    }
    tr.ty(ty, &env)
}

/// Translates a term with its type and term variables left free.
pub fn translate_term(syms: &Symbols, t: &Term) -> Result<Lp> {
    let mut tr = Tr::new(syms.clone(), None);
    let mut env = Env::default();
    for a in t.type_vars() {
        let x = tr.fresh(a.base());
        env.tys.insert(a, Lp::Free(x));
    }
    for v in t.frees() {
        let x = tr.fresh(v.name().base());
        env.vars.insert(v, Lp::Free(x));
    }
    tr.term(t, &mut env)
}

fn scan_types(ty: &Type, out: &mut BTreeMap<Name, usize>) {
    if let TypeKind::App(op, args) = ty.kind() {
        out.insert(op.clone(), args.len());
        for a in args {
            scan_types(a, out);
        }
    }
}

#[derive(Default)]
struct Usage {
    types: BTreeMap<Name, usize>,
    consts: BTreeMap<Name, BTreeSet<Type>>,
    seen: std::collections::HashSet<usize>,
    keep: Vec<Term>,
}

impl Usage {
    fn term(&mut self, t: &Term) {
        if !self.seen.insert(t.addr()) {
            return;
        }
        self.keep.push(t.clone());
        scan_types(t.ty(), &mut self.types);
        match t.kind() {
            TermKind::Var(_) => {}
            TermKind::Const(n, ty) => {
                if !is_builtin_const(n) {
                    self.consts.entry(n.clone()).or_default().insert(ty.clone());
                }
            }
            TermKind::App(f, x) => {
                self.term(f);
                self.term(x);
            }
            TermKind::Abs(v, b) => {
                scan_types(v.ty(), &mut self.types);
                self.term(b);
            }
        }
    }

    fn sequent(&mut self, s: &Sequent) {
        for t in s.terms() {
            self.term(t);
        }
    }
}

/// Translates one replayed article into the module `name`, resolving
/// constants and type operators from earlier modules through `imports`.
pub fn translate_article(result: &ArticleResult, name: &str, imports: &Symbols) -> Result<Translation> {
    proofcloud_article::with_large_stack(|| translate_inner(result, name, imports))
}

fn translate_inner(result: &ArticleResult, name: &str, imports: &Symbols) -> Result<Translation> {
    let trace = &result.trace;
    let mut module = Module::new(base_ident(name));
    module.requires.push(PRELUDE_NAME.to_string());
    module.requires.extend(imports.modules().iter().cloned());
    let mut mangler = Mangler::new();
    let mut local = Symbols::new();
    let mut tr = Tr::new(imports.clone(), Some(trace));

    let mut usage = Usage::default();
    let mut defined_types = BTreeSet::new();
    let mut defined_consts = BTreeSet::new();
    for node in trace.nodes() {
        for s in &node.outputs {
            usage.sequent(s);
        }
        match &node.payload {
            Payload::Term(t) => usage.term(t),
            Payload::Var(v) => scan_types(v.ty(), &mut usage.types),
            Payload::Subst(s) => {
                for (_, ty) in s.ty_map() {
                    scan_types(ty, &mut usage.types);
                }
                for (_, t) in s.tm_map() {
                    usage.term(t);
                }
            }
            Payload::DefineConst { name, rhs } => {
                defined_consts.insert(name.clone());
                usage.term(rhs);
            }
            Payload::DefineTypeOp { op, abs, rep, .. } => {
                defined_types.insert(op.clone());
                defined_consts.insert(abs.clone());
                defined_consts.insert(rep.clone());
            }
            Payload::None => {}
        }
    }
    for e in &result.exports {
        usage.sequent(e.theorem.sequent());
    }

    for (op, arity) in &usage.types {
        if is_builtin_type(op) || (imports.type_op(op).is_some() && !defined_types.contains(op)) {
            continue;
        }
        let ident = mangler.mangle("type", &op.escaped());
        let ty = (0..*arity).fold(hol("type"), |acc, _| Lp::arrow(hol("type"), acc));
        module.decls.push(Decl::Const { name: ident.as_str().into(), ty, definable: false });
        local.declare_type(op.clone(), &ident, *arity);
        tr.syms.declare_type(op.clone(), ident, *arity);
    }

    for (c, instances) in &usage.consts {
        if defined_consts.contains(c) {
            continue;
        }
        if let Some(s) = imports.constant(c) {
            if instances.iter().all(|ty| s.generic.match_onto(ty, &mut HashMap::new())) {
                continue;
            }
        }
        let tys: Vec<Type> = instances.iter().cloned().collect();
        let generic = lgg(&tys);
        let ident = mangler.mangle("const", &c.escaped());
        let params: Vec<Name> = generic.type_vars().into_iter().collect();
        let ty = const_decl_type(&mut tr, &params, &generic)?;
        module.decls.push(Decl::Const { name: ident.as_str().into(), ty, definable: false });
        local.declare_const(c.clone(), &ident, generic.clone());
        tr.syms.declare_const(c.clone(), ident, generic);
    }

    let mut roots: Vec<TraceId> = result.exports.iter().map(|e| e.theorem.proof().node).collect();
    roots.extend(trace.nodes().iter().filter(|n| n.rule == Rule::DefineTypeOp).map(|n| n.id));
    let reachable = trace.reachable(roots);
    let mut uses: HashMap<ProofRef, usize> = HashMap::new();
    for id in &reachable {
        for p in &trace.node(*id).premises {
            *uses.entry(*p).or_default() += 1;
        }
    }
    for e in &result.exports {
        *uses.entry(e.theorem.proof()).or_default() += 1;
    }

    let mut axioms = 0;
    for node in trace.nodes() {
        let r0 = ProofRef { node: node.id, output: 0 };
        match (&node.rule, &node.payload) {
            (Rule::Axiom, _) => {
                axioms += 1;
                let ident = mangler.mangle("thm", &format!("axiom{axioms}"));
                let ty = tr.closure(&node.outputs[0])?;
                module.decls.push(Decl::Const { name: ident.as_str().into(), ty, definable: false });
                tr.named.insert(r0, ident);
            }
            (Rule::DefineConst, Payload::DefineConst { name, rhs }) => {
                let generic = rhs.ty().clone();
                let params: Vec<Name> = generic.type_vars().into_iter().collect();
                let ident = mangler.mangle("const", &name.escaped());
                let ty = const_decl_type(&mut tr, &params, &generic)?;
                let mut env = Env::default();
                let mut binders = Vec::new();
                for p in &params {
                    let x = tr.fresh(p.base());
                    env.tys.insert(p.clone(), Lp::Free(x.clone()));
                    binders.push(x);
                }
                let body = tr.term(rhs, &mut env)?;
                let body = binders.iter().rev().fold(body, |acc, x| Lp::lam(x, hol("type"), acc));
                module.decls.push(Decl::Def { name: ident.as_str().into(), ty, body, opaque: false });
                local.declare_const(name.clone(), &ident, generic.clone());
                tr.syms.declare_const(name.clone(), ident, generic);

                let seq = &node.outputs[0];
                let thm = mangler.mangle("thm", &format!("{}_def", name.escaped()));
                let (binders, mut env) = tr.open(seq)?;
                let ty = tr.proof_ty(seq.concl(), &mut env)?;
                let lhs = seq.concl().dest_eq().expect("definition is an equation").0;
                let body = Lp::apps(hol("Refl"), [tr.ty(lhs.ty(), &env)?, tr.term(lhs, &mut env)?]);
                let ty = binders.iter().rev().fold(ty, |acc, (x, t)| Lp::pi(x, t.clone(), acc));
                let body = binders.iter().rev().fold(body, |acc, (x, t)| Lp::lam(x, t.clone(), acc));
                module.decls.push(Decl::Def { name: thm.as_str().into(), ty, body, opaque: true });
                tr.named.insert(r0, thm);
            }
            (Rule::DefineTypeOp, Payload::DefineTypeOp { op, abs, rep, ty_vars, .. }) => {
                let wit = node.premises[0];
                let wseq = trace.sequent(wit).clone();
                let ident = mangler.mangle("thm", &format!("{}_witness", op.escaped()));
                let (ty, body) = tr.theorem(&wseq, wit, true)?;
                module.decls.push(Decl::Def { name: ident.as_str().into(), ty, body, opaque: true });

                let old = wseq.concl().dest_app().expect("witness is an application").1.ty().clone();
                let new = Type::app(op.clone(), ty_vars.iter().map(|v| Type::var(v.clone())).collect());
                for (c, generic) in [(abs, Type::fun(old.clone(), new.clone())), (rep, Type::fun(new.clone(), old.clone()))] {
                    let ident = mangler.mangle("const", &c.escaped());
                    let ty = const_decl_type(&mut tr, ty_vars, &generic)?;
                    module.decls.push(Decl::Const { name: ident.as_str().into(), ty, definable: false });
                    local.declare_const_with(c.clone(), &ident, generic.clone(), ty_vars.clone());
                    tr.syms.declare_const_with(c.clone(), ident, generic, ty_vars.clone());
                }
                for (k, suffix) in [(0u8, "abs_rep"), (1, "rep_abs")] {
                    let ident = mangler.mangle("thm", &format!("{}_{suffix}", op.escaped()));
                    let ty = tr.closure(&node.outputs[k as usize])?;
                    module.decls.push(Decl::Const { name: ident.as_str().into(), ty, definable: false });
                    tr.named.insert(ProofRef { node: node.id, output: k }, ident);
                }
            }
            (Rule::Refl | Rule::Assume, _) => {}
            _ => {
                if reachable.contains(&node.id) && uses.get(&r0).copied().unwrap_or(0) >= 2 {
                    let ident = mangler.mangle("thm", &format!("p{}", node.id.0));
                    let (ty, body) = tr.theorem(&node.outputs[0], r0, false)?;
                    module.decls.push(Decl::Def { name: ident.as_str().into(), ty, body, opaque: true });
                    tr.named.insert(r0, ident);
                }
            }
        }
    }

    let mut exports = Vec::new();
    for e in &result.exports {
        let ident = mangler.mangle("export", &e.name);
        let (ty, body) = tr.theorem(e.theorem.sequent(), e.theorem.proof(), true)?;
        module.decls.push(Decl::Def { name: ident.as_str().into(), ty, body, opaque: true });
        exports.push((e.name.clone(), ident));
    }

    Ok(Translation { module, symbols: local, exports, mangler })
}

/// `Π params : type. term |generic|`
fn const_decl_type(tr: &mut Tr<'_>, params: &[Name], generic: &Type) -> Result<Lp> {
    let mut env = Env::default();
    let mut binders = Vec::new();
    for p in params {
        let x = tr.fresh(p.base());
        env.tys.insert(p.clone(), Lp::Free(x.clone()));
        binders.push(x);
    }
    let ty = tr.term_ty(generic, &env)?;
    Ok(binders.iter().rev().fold(ty, |acc, x| Lp::pi(x, hol("type"), acc)))
}

/// Translates articles in order, each module importing the earlier ones.
pub fn translate_all<'r>(articles: impl IntoIterator<Item = (&'r str, &'r ArticleResult)>) -> Result<Vec<Translation>> {
    let mut imports = Symbols::new();
    let mut out = Vec::new();
    for (name, result) in articles {
        let t = translate_article(result, name, &imports)?;
        imports.import(&t.module.name, &t.symbols);
        out.push(t);
    }
    Ok(out)
}

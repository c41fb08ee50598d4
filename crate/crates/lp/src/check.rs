//! Type checking modulo beta, definitions, and first-order rewrite rules.

use std::cell::Cell;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::error::LpError;
use crate::print::term_in_scope;
use crate::syntax::{Decl, Module};
use crate::term::Term;

pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct Entry {
    pub ty: Term,
    pub def: Option<Term>,
    pub opaque: bool,
    pub definable: bool,
}

#[derive(Debug, Clone)]
struct RewriteRule {
    /// Patterns over the rule context; context variable `k` counted from the
    /// innermost is `Bound(k)`.
    args: Vec<Term>,
    rhs: Term,
    vars: usize,
}

/// Failure inside one declaration; the caller adds the declaration name.
enum Fail {
    Scope(String),
    Type { expected: String, got: String },
    Ill(String),
    Fuel,
}

type Res<T> = Result<T, Fail>;

#[derive(Debug, Clone, Serialize)]
pub struct DeclReport {
    pub name: String,
    pub ok: bool,
    pub error: Option<String>,
    #[serde(skip)]
    pub failure: Option<LpError>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub module: String,
    pub decls: Vec<DeclReport>,
    pub seconds: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.decls.iter().all(|d| d.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DeclReport> {
        self.decls.iter().filter(|d| !d.ok)
    }
}

/// Global signature plus the rewrite rules indexed by head symbol. Names are
/// stored qualified by their module (`hol.eq`).
pub struct Checker {
    globals: HashMap<Arc<str>, Entry>,
    rules: HashMap<Arc<str>, Vec<RewriteRule>>,
    modules: HashSet<String>,
    pub fuel_limit: u64,
    fuel: Cell<u64>,
}

impl Default for Checker {
    fn default() -> Self {
        Checker::new()
    }
}

/// Qualifies unqualified constant names with `module`.
pub fn qualify(t: &Term, module: &str) -> Term {
    if module.is_empty() {
        return t.clone();
    }
    t.map_consts(&|c| (!c.contains('.')).then(|| Arc::from(format!("{module}.{c}"))))
}

impl Checker {
    pub fn new() -> Checker {
        Checker {
            globals: HashMap::new(),
            rules: HashMap::new(),
            modules: HashSet::new(),
            fuel_limit: DEFAULT_FUEL,
            fuel: Cell::new(DEFAULT_FUEL),
        }
    }

    pub fn entry(&self, qualified: &str) -> Option<&Entry> {
        self.globals.get(qualified)
    }

    pub fn has_module(&self, name: &str) -> bool {
        self.modules.contains(name)
    }

    fn tick(&self) -> Res<()> {
        let f = self.fuel.get();
        if f == 0 {
            return Err(Fail::Fuel);
        }
        self.fuel.set(f - 1);
        Ok(())
    }

    fn refuel(&self) {
        self.fuel.set(self.fuel_limit);
    }

    /// Weak-head normal form, leftmost-outermost.
    pub fn whnf(&self, t: &Term) -> Result<Term, LpError> {
        self.refuel();
        self.whnf_(t).map_err(|f| self.lift(f, "<whnf>"))
    }

    /// Convertibility: same normal form up to alpha.
    pub fn convertible(&self, a: &Term, b: &Term) -> Result<bool, LpError> {
        self.refuel();
        self.conv(a, b).map_err(|f| self.lift(f, "<conversion>"))
    }

    fn whnf_(&self, t: &Term) -> Res<Term> {
        let mut t = t.clone();
        'outer: loop {
            self.tick()?;
            let (head, args) = t.spine();
            match head {
                Term::Lam(_, _, body) if !args.is_empty() => {
                    let r = body.subst_top(args[0]);
                    t = Term::apps(r, args[1..].iter().map(|a| (*a).clone()));
                }
                Term::Const(c) => {
                    if let Some(Entry { def: Some(d), opaque: false, .. }) = self.globals.get(c) {
                        t = Term::apps(d.clone(), args.iter().map(|a| (*a).clone()));
                        continue;
                    }
                    if let Some(rules) = self.rules.get(c) {
                        for r in rules {
                            if args.len() < r.args.len() {
                                continue;
                            }
                            let mut subs = vec![None; r.vars];
                            let mut ok = true;
                            for (p, a) in r.args.iter().zip(&args) {
                                if !self.matches(p, a, &mut subs)? {
                                    ok = false;
                                    break;
                                }
                            }
                            if ok {
                                let subs: Vec<Term> = subs.into_iter().map(|s| s.expect("linear pattern")).collect();
                                let rest = args[r.args.len()..].iter().map(|a| (*a).clone());
                                t = Term::apps(r.rhs.instantiate(&subs), rest);
                                continue 'outer;
                            }
                        }
                    }
                    return Ok(t);
                }
                _ => return Ok(t),
            }
        }
    }

    fn matches(&self, p: &Term, a: &Term, subs: &mut [Option<Term>]) -> Res<bool> {
        if let Term::Bound(i) = p {
            subs[*i as usize] = Some(a.clone());
            return Ok(true);
        }
        let (ph, pargs) = p.spine();
        let a = self.whnf_(a)?;
        let (ah, aargs) = a.spine();
        if ph != ah || pargs.len() != aargs.len() {
            return Ok(false);
        }
        for (p, a) in pargs.iter().zip(&aargs) {
            if !self.matches(p, a, subs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn conv(&self, a: &Term, b: &Term) -> Res<bool> {
        if a == b {
            return Ok(true);
        }
        let a = self.whnf_(a)?;
        let b = self.whnf_(b)?;
        if a == b {
            return Ok(true);
        }
        match (&a, &b) {
            (Term::Pi(_, a1, b1), Term::Pi(_, a2, b2)) => Ok(self.conv(a1, a2)? && self.conv(b1, b2)?),
            (Term::Lam(_, _, b1), Term::Lam(_, _, b2)) => self.conv(b1, b2),
            (Term::App(..), Term::App(..)) => {
                let (h1, args1) = a.spine();
                let (h2, args2) = b.spine();
                if h1 != h2 || args1.len() != args2.len() {
                    return Ok(false);
                }
                for (x, y) in args1.iter().zip(&args2) {
                    if !self.conv(x, y)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    fn show(t: &Term, ctx: &[(Arc<str>, Term)]) -> String {
        let names: Vec<Arc<str>> = ctx.iter().map(|(n, _)| n.clone()).collect();
        term_in_scope(t, &names)
    }

    fn infer(&self, ctx: &mut Vec<(Arc<str>, Term)>, t: &Term) -> Res<Term> {
        match t {
            Term::Type => Ok(Term::Kind),
            Term::Kind => Err(Fail::Ill("`Kind` has no type".into())),
            Term::Const(c) => self.globals.get(c).map(|e| e.ty.clone()).ok_or_else(|| Fail::Scope(c.to_string())),
            Term::Bound(i) => {
                let k = ctx.len().checked_sub(*i as usize + 1).ok_or_else(|| Fail::Ill(format!("unbound index {i}")))?;
                Ok(ctx[k].1.shift(*i as i64 + 1, 0))
            }
            Term::Free(v) => Err(Fail::Ill(format!("unclosed variable `{}`", v.hint))),
            Term::App(f, a) => {
                let tf = self.infer(ctx, f)?;
                self.refuel();
                match self.whnf_(&tf)? {
                    Term::Pi(_, dom, cod) => {
                        self.check(ctx, a, &dom)?;
                        Ok(cod.subst_top(a))
                    }
                    other => Err(Fail::Ill(format!(
                        "`{}` is applied but has type `{}`",
                        Self::show(f, ctx),
                        Self::show(&other, ctx)
                    ))),
                }
            }
            Term::Lam(n, dom, body) => {
                self.expect_sort(ctx, dom, false)?;
                ctx.push((n.clone(), (**dom).clone()));
                let b = self.infer(ctx, body);
                ctx.pop();
                let b = b?;
                if b == Term::Kind {
                    return Err(Fail::Ill("abstraction over a kind".into()));
                }
                Ok(Term::Pi(n.clone(), dom.clone(), Arc::new(b)))
            }
            Term::Pi(n, dom, cod) => {
                self.expect_sort(ctx, dom, false)?;
                ctx.push((n.clone(), (**dom).clone()));
                let s = self.infer(ctx, cod).and_then(|s| {
                    self.refuel();
                    self.whnf_(&s)
                });
                ctx.pop();
                match s? {
                    s @ (Term::Type | Term::Kind) => Ok(s),
                    other => Err(Fail::Ill(format!("product codomain has type `{}`, not a sort", Self::show(&other, ctx)))),
                }
            }
        }
    }

    /// Checks that `t` is a type (`Type`-sorted), or also a kind when `kind_ok`.
    fn expect_sort(&self, ctx: &mut Vec<(Arc<str>, Term)>, t: &Term, kind_ok: bool) -> Res<Term> {
        let s = self.infer(ctx, t)?;
        self.refuel();
        match self.whnf_(&s)? {
            Term::Type => Ok(Term::Type),
            Term::Kind if kind_ok => Ok(Term::Kind),
            other => Err(Fail::Ill(format!(
                "`{}` is not a type; it has type `{}`",
                Self::show(t, ctx),
                Self::show(&other, ctx)
            ))),
        }
    }

    fn check(&self, ctx: &mut Vec<(Arc<str>, Term)>, t: &Term, expected: &Term) -> Res<()> {
        let got = self.infer(ctx, t)?;
        self.refuel();
        if self.conv(&got, expected)? {
            Ok(())
        } else {
            Err(Fail::Type { expected: Self::show(expected, ctx), got: Self::show(&got, ctx) })
        }
    }

    fn lift(&self, f: Fail, decl: &str) -> LpError {
        let decl = decl.to_string();
        match f {
            Fail::Scope(name) => LpError::Scope { decl, name },
            Fail::Type { expected, got } => LpError::Type { decl, expected, got },
            Fail::Ill(message) => LpError::Ill { decl, message },
            Fail::Fuel => LpError::Fuel { decl, fuel: self.fuel_limit },
        }
    }

    /// Infers the type of a closed term.
    pub fn infer_closed(&self, t: &Term) -> Result<Term, LpError> {
        self.infer(&mut Vec::new(), t).map_err(|f| self.lift(f, "<term>"))
    }

    fn declare(&mut self, name: Arc<str>, e: Entry) -> Result<(), LpError> {
        if self.globals.contains_key(&name) {
            return Err(LpError::Redeclared(name.to_string()));
        }
        self.globals.insert(name, e);
        Ok(())
    }

    /// Checks one declaration (already qualified) and adds it on success.
    fn add(&mut self, d: &Decl, qname: &str) -> Result<(), LpError> {
        let lift = |c: &Checker, f: Fail| c.lift(f, qname);
        match d {
            Decl::Const { ty, definable, .. } => {
                self.expect_sort(&mut Vec::new(), ty, true).map_err(|f| lift(self, f))?;
                let e = Entry { ty: ty.clone(), def: None, opaque: false, definable: *definable };
                self.declare(Arc::from(qname), e)
            }
            Decl::Def { ty, body, opaque, .. } => {
                let mut ctx = Vec::new();
                self.expect_sort(&mut ctx, ty, true).map_err(|f| lift(self, f))?;
                self.check(&mut ctx, body, ty).map_err(|f| lift(self, f))?;
                let e = Entry { ty: ty.clone(), def: Some(body.clone()), opaque: *opaque, definable: false };
                self.declare(Arc::from(qname), e)
            }
            Decl::Rule { ctx: vars, lhs, rhs } => {
                let head = match lhs.spine().0 {
                    Term::Const(c) => c.clone(),
                    _ => return Err(lift(self, Fail::Ill("rule head is not a constant".into()))),
                };
                match self.globals.get(&head) {
                    Some(e) if e.definable => {}
                    Some(_) => return Err(lift(self, Fail::Ill(format!("`{head}` is not a definable symbol")))),
                    None => return Err(lift(self, Fail::Scope(head.to_string()))),
                }
                let mut ctx = Vec::new();
                for (n, ty) in vars {
                    self.expect_sort(&mut ctx, ty, false).map_err(|f| lift(self, f))?;
                    ctx.push((n.clone(), ty.clone()));
                }
                let lt = self.infer(&mut ctx, lhs).map_err(|f| lift(self, f))?;
                self.check(&mut ctx, rhs, &lt).map_err(|f| lift(self, f))?;
                let args = lhs.spine().1.into_iter().cloned().collect();
                self.rules.entry(head).or_default().push(RewriteRule { args, rhs: rhs.clone(), vars: vars.len() });
                Ok(())
            }
        }
    }

    /// Checks every declaration of `m` in order. Declarations that fail are
    /// not added, so later references to them fail too.
    pub fn check_module(&mut self, m: &Module) -> CheckReport {
        let start = Instant::now();
        let mut decls = Vec::new();
        for r in &m.requires {
            if !self.modules.contains(r) {
                let failure = LpError::Scope { decl: format!("#REQUIRE {r}"), name: r.clone() };
                decls.push(DeclReport { name: format!("#REQUIRE {r}"), ok: false, error: Some(failure.to_string()), failure: Some(failure) });
            }
        }
        for d in &m.decls {
            let q = |t: &Term| qualify(t, &m.name);
            let qd = match d {
                Decl::Const { name, ty, definable } => Decl::Const { name: name.clone(), ty: q(ty), definable: *definable },
                Decl::Def { name, ty, body, opaque } => {
                    Decl::Def { name: name.clone(), ty: q(ty), body: q(body), opaque: *opaque }
                }
                Decl::Rule { ctx, lhs, rhs } => Decl::Rule {
                    ctx: ctx.iter().map(|(n, t)| (n.clone(), q(t))).collect(),
                    lhs: q(lhs),
                    rhs: q(rhs),
                },
            };
            let name = match d {
                Decl::Rule { .. } => format!("rule for {}", qd.name()),
                _ if m.name.is_empty() => d.name().to_string(),
                _ => format!("{}.{}", m.name, d.name()),
            };
            let res = self.add(&qd, &name);
            let (ok, failure) = match res {
                Ok(()) => (true, None),
                Err(e) => (false, Some(e)),
            };
            decls.push(DeclReport { name, ok, error: failure.as_ref().map(|e| e.to_string()), failure });
        }
        self.modules.insert(m.name.clone());
        CheckReport { module: m.name.clone(), decls, seconds: start.elapsed().as_secs_f64() }
    }
}

//! The trusted core: signature, trace, and primitive inference rules.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{KernelError, Result};
use crate::name::Name;
use crate::sequent::{canonical_hyps, Sequent, Theorem};
use crate::subst::Substitution;
use crate::term::{Term, Var, EQ, SELECT};
use crate::trace::{KernelVersion, Payload, ProofRef, ProofTrace, Rule};
use crate::types::{Type, TypeKind, BOOL, FUN, IND};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstInfo {
    /// Generic type; instances are obtained by instantiating its type variables.
    pub ty: Type,
    pub builtin: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeOpInfo {
    pub arity: usize,
    /// False for operators only seen in use (imported from another theory).
    pub defined: bool,
}

/// Declared constants and type operators.
///
/// Constants that are neither builtin nor defined are treated as imported
/// and accepted at any type. Imported type operators are recorded with the
/// arity of their first use, and later uses must agree.
#[derive(Debug, Clone)]
pub struct Signature {
    consts: BTreeMap<Name, ConstInfo>,
    type_ops: BTreeMap<Name, TypeOpInfo>,
}

impl Default for Signature {
    fn default() -> Self {
        let a = Type::var("A");
        let mut consts = BTreeMap::new();
        consts.insert(
            Name::simple(EQ),
            ConstInfo { ty: Type::fun(a.clone(), Type::fun(a.clone(), Type::bool())), builtin: true },
        );
        consts.insert(
            Name::simple(SELECT),
            ConstInfo { ty: Type::fun(Type::fun(a.clone(), Type::bool()), a), builtin: true },
        );
        let mut type_ops = BTreeMap::new();
        type_ops.insert(Name::simple(BOOL), TypeOpInfo { arity: 0, defined: true });
        type_ops.insert(Name::simple(FUN), TypeOpInfo { arity: 2, defined: true });
        type_ops.insert(Name::simple(IND), TypeOpInfo { arity: 0, defined: true });
        Signature { consts, type_ops }
    }
}

impl Signature {
    pub fn constant(&self, name: &Name) -> Option<&ConstInfo> {
        self.consts.get(name)
    }

    pub fn type_op(&self, name: &Name) -> Option<&TypeOpInfo> {
        self.type_ops.get(name)
    }

    pub fn constants(&self) -> impl Iterator<Item = (&Name, &ConstInfo)> {
        self.consts.iter()
    }

    pub fn type_ops(&self) -> impl Iterator<Item = (&Name, &TypeOpInfo)> {
        self.type_ops.iter()
    }
}

static NEXT_KERNEL: AtomicU64 = AtomicU64::new(1);

/// A replay context: one signature, one proof trace, one assumption set.
///
/// Theorems are created only by the rule methods here. Each rule invocation
/// appends exactly one trace node.
#[derive(Debug)]
pub struct Kernel {
    id: u64,
    version: KernelVersion,
    sig: Signature,
    trace: ProofTrace,
    assumptions: Vec<Sequent>,
}

/// Result of a type definition.
#[derive(Debug, Clone)]
pub struct TypeDefinition {
    pub op: Name,
    pub abs: Term,
    pub rep: Term,
    /// v5: `|- abs (rep a) = a`; v6: `|- (\a. abs (rep a)) = (\a. a)`
    pub abs_rep: Theorem,
    /// v5: `|- P r = (rep (abs r) = r)`; v6: `|- (\r. rep (abs r) = r) = (\r. P r)`
    pub rep_abs: Theorem,
}

fn dest_eq_thm<'a>(th: &'a Theorem, rule: &'static str) -> Result<(&'a Term, &'a Term)> {
    th.concl().dest_eq().ok_or_else(|| KernelError::RuleMismatch {
        rule,
        reason: format!("conclusion `{}` is not an equation", th.concl()),
    })
}

fn check_bool(t: &Term) -> Result<()> {
    if t.ty().is_bool() {
        Ok(())
    } else {
        Err(KernelError::NotBoolean(t.to_string()))
    }
}

fn remove_hyp(hyps: &[Term], t: &Term) -> Vec<Term> {
    hyps.iter().filter(|h| !h.alpha_eq(t)).cloned().collect()
}

impl Kernel {
    pub fn new(version: KernelVersion) -> Kernel {
        Kernel {
            id: NEXT_KERNEL.fetch_add(1, Ordering::Relaxed),
            version,
            sig: Signature::default(),
            trace: ProofTrace::new(),
            assumptions: Vec::new(),
        }
    }

    pub fn version(&self) -> KernelVersion {
        self.version
    }

    /// Changes the kernel mode. Only meaningful before any rule has run.
    pub fn set_version(&mut self, version: KernelVersion) {
        self.version = version;
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn trace(&self) -> &ProofTrace {
        &self.trace
    }

    pub fn trace_mut(&mut self) -> &mut ProofTrace {
        &mut self.trace
    }

    /// Distinct asserted axioms, in first-assertion order.
    pub fn assumptions(&self) -> &[Sequent] {
        &self.assumptions
    }

    pub fn into_trace(self) -> ProofTrace {
        self.trace
    }

    fn owns(&self, th: &Theorem, rule: &'static str) -> Result<()> {
        // theorems carry the id of the kernel that produced them
        if th.kernel_id() == self.id {
            Ok(())
        } else {
            Err(KernelError::RuleMismatch { rule, reason: "theorem belongs to another kernel context".into() })
        }
    }

    fn record(&mut self, rule: Rule, premises: &[&Theorem], payload: Payload, outputs: Vec<Sequent>) -> Vec<Theorem> {
        let prem = premises.iter().map(|t| t.proof()).collect();
        let id = self.trace.push(rule, prem, payload, outputs.clone());
        outputs
            .into_iter()
            .enumerate()
            .map(|(i, s)| Theorem::new(s, ProofRef { node: id, output: i as u8 }, self.id))
            .collect()
    }

    fn record1(&mut self, rule: Rule, premises: &[&Theorem], payload: Payload, out: Sequent) -> Theorem {
        self.record(rule, premises, payload, vec![out]).pop().expect("one output")
    }

    /// Type operator application, checking arity against the signature.
    /// Unknown operators are registered as imported with this arity.
    pub fn type_app(&mut self, op: Name, args: Vec<Type>) -> Result<Type> {
        match self.sig.type_ops.get(&op) {
            Some(info) if info.arity != args.len() => {
                return Err(KernelError::ArityMismatch { op, expected: info.arity, got: args.len() })
            }
            Some(_) => {}
            None => {
                self.sig.type_ops.insert(op.clone(), TypeOpInfo { arity: args.len(), defined: false });
            }
        }
        Ok(Type::app(op, args))
    }

    /// Checks every operator in `ty` against the signature.
    pub fn check_type(&mut self, ty: &Type) -> Result<()> {
        if let TypeKind::App(op, args) = ty.kind() {
            for a in args {
                self.check_type(a)?;
            }
            self.type_app(op.clone(), args.clone())?;
        }
        Ok(())
    }

    /// A constant term at `ty`, which must instantiate the declared generic
    /// type when the constant is known.
    pub fn const_term(&mut self, name: Name, ty: Type) -> Result<Term> {
        self.check_type(&ty)?;
        if let Some(info) = self.sig.consts.get(&name) {
            let mut m = HashMap::new();
            if !info.ty.match_onto(&ty, &mut m) {
                return Err(KernelError::ConstInstance { name, generic: info.ty.to_string(), got: ty.to_string() });
            }
        }
        Ok(Term::constant(name, ty))
    }

    pub fn refl(&mut self, t: &Term) -> Result<Theorem> {
        let eq = Term::mk_eq(t.clone(), t.clone())?;
        Ok(self.record1(Rule::Refl, &[], Payload::Term(t.clone()), Sequent::new([], eq)))
    }

    pub fn assume(&mut self, phi: &Term) -> Result<Theorem> {
        check_bool(phi)?;
        Ok(self.record1(Rule::Assume, &[], Payload::Term(phi.clone()), Sequent::new([phi.clone()], phi.clone())))
    }

    /// From `G |- p = q` and `D |- p'` with `p` alpha-equal to `p'`, derive `G u D |- q`.
    pub fn eq_mp(&mut self, d1: &Theorem, d2: &Theorem) -> Result<Theorem> {
        self.owns(d1, "eqMp")?;
        self.owns(d2, "eqMp")?;
        let (p, q) = dest_eq_thm(d1, "eqMp")?;
        if !p.ty().is_bool() {
            return Err(KernelError::RuleMismatch { rule: "eqMp", reason: format!("`{}` is not a boolean equation", d1.concl()) });
        }
        if !p.alpha_eq(d2.concl()) {
            return Err(KernelError::RuleMismatch {
                rule: "eqMp",
                reason: format!("`{p}` does not match `{}`", d2.concl()),
            });
        }
        let hyps = d1.hyps().iter().chain(d2.hyps()).cloned();
        let out = Sequent::new(hyps, q.clone());
        Ok(self.record1(Rule::EqMp, &[d1, d2], Payload::None, out))
    }

    /// From `G |- t = u` derive `G |- (\v. t) = (\v. u)`.
    pub fn abs_thm(&mut self, v: &Var, d: &Theorem) -> Result<Theorem> {
        self.owns(d, "absThm")?;
        let (t, u) = dest_eq_thm(d, "absThm")?;
        if d.hyps().iter().any(|h| h.occurs_free(v)) {
            return Err(KernelError::FreeVarInHyps(v.name().to_string()));
        }
        let eq = Term::mk_eq(Term::abs(v.clone(), t.clone()), Term::abs(v.clone(), u.clone()))?;
        let out = Sequent::new(d.hyps().iter().cloned(), eq);
        Ok(self.record1(Rule::AbsThm, &[d], Payload::Var(v.clone()), out))
    }

    /// From `G |- f = g` and `D |- x = y` derive `G u D |- f x = g y`.
    pub fn app_thm(&mut self, d1: &Theorem, d2: &Theorem) -> Result<Theorem> {
        self.owns(d1, "appThm")?;
        self.owns(d2, "appThm")?;
        let (f, g) = dest_eq_thm(d1, "appThm")?;
        let (x, y) = dest_eq_thm(d2, "appThm")?;
        match f.ty().dest_fun() {
            Some((dom, _)) if dom == x.ty() => {}
            _ => {
                return Err(KernelError::TypeMismatch(format!(
                    "cannot apply `{f}` : `{}` to `{x}` : `{}`",
                    f.ty(),
                    x.ty()
                )))
            }
        }
        let eq = Term::mk_eq(Term::app(f.clone(), x.clone())?, Term::app(g.clone(), y.clone())?)?;
        let hyps = d1.hyps().iter().chain(d2.hyps()).cloned();
        Ok(self.record1(Rule::AppThm, &[d1, d2], Payload::None, Sequent::new(hyps, eq)))
    }

    /// From `G |- p` and `D |- q` derive `(G - {q}) u (D - {p}) |- p = q`.
    pub fn deduct_antisym(&mut self, d1: &Theorem, d2: &Theorem) -> Result<Theorem> {
        self.owns(d1, "deductAntisym")?;
        self.owns(d2, "deductAntisym")?;
        let p = d1.concl();
        let q = d2.concl();
        let mut hyps = remove_hyp(d1.hyps(), q);
        hyps.extend(remove_hyp(d2.hyps(), p));
        let eq = Term::mk_eq(p.clone(), q.clone())?;
        Ok(self.record1(Rule::DeductAntisym, &[d1, d2], Payload::None, Sequent::new(hyps, eq)))
    }

    pub fn subst(&mut self, sigma: &Substitution, d: &Theorem) -> Result<Theorem> {
        self.owns(d, "subst")?;
        for ty in sigma.ty_map().values() {
            self.check_type(ty)?;
        }
        let hyps: Vec<Term> = d.hyps().iter().map(|h| sigma.apply(h)).collect();
        let concl = sigma.apply(d.concl());
        Ok(self.record1(Rule::Subst, &[d], Payload::Subst(sigma.clone()), Sequent::new(hyps, concl)))
    }

    /// `|- (\v. b) u = b[u/v]`
    pub fn beta_conv(&mut self, t: &Term) -> Result<Theorem> {
        let (f, u) = t.dest_app().ok_or_else(|| KernelError::NotARedex(t.to_string()))?;
        let (v, b) = f.dest_abs().ok_or_else(|| KernelError::NotARedex(t.to_string()))?;
        let reduct = b.subst_vars(&HashMap::from([(v.clone(), u.clone())]));
        let eq = Term::mk_eq(t.clone(), reduct)?;
        Ok(self.record1(Rule::BetaConv, &[], Payload::Term(t.clone()), Sequent::new([], eq)))
    }

    fn check_fresh_const(&self, name: &Name) -> Result<()> {
        if self.sig.consts.contains_key(name) {
            Err(KernelError::Redefinition(name.clone()))
        } else {
            Ok(())
        }
    }

    /// Defines `name` as the closed term `t`, returning the constant at its
    /// generic type and `|- name = t`.
    pub fn define_const(&mut self, name: Name, t: &Term) -> Result<(Term, Theorem)> {
        self.check_fresh_const(&name)?;
        let frees = t.frees();
        if !frees.is_empty() {
            let names: Vec<String> = frees.iter().map(|v| v.name().to_string()).collect();
            return Err(KernelError::OpenTerm(names.join(", ")));
        }
        let ty_vars = t.ty().type_vars();
        if let Some(extra) = t.type_vars().difference(&ty_vars).next() {
            return Err(KernelError::TyVarMismatch(format!(
                "type variable `{extra}` occurs in the definition of `{name}` but not in its type"
            )));
        }
        self.sig.consts.insert(name.clone(), ConstInfo { ty: t.ty().clone(), builtin: false });
        let c = Term::constant(name.clone(), t.ty().clone());
        let eq = Term::mk_eq(c.clone(), t.clone())?;
        let th = self.record1(
            Rule::DefineConst,
            &[],
            Payload::DefineConst { name, rhs: t.clone() },
            Sequent::new([], eq),
        );
        Ok((c, th))
    }

    /// Defines a new type operator from `|- P t`.
    pub fn define_type_op(
        &mut self,
        op: Name,
        abs: Name,
        rep: Name,
        ty_vars: Vec<Name>,
        d: &Theorem,
    ) -> Result<TypeDefinition> {
        self.owns(d, "defineTypeOp")?;
        if !d.hyps().is_empty() {
            return Err(KernelError::NonEmptyHyps);
        }
        let (pred, witness) = d.concl().dest_app().ok_or_else(|| KernelError::RuleMismatch {
            rule: "defineTypeOp",
            reason: format!("`{}` is not a predicate application", d.concl()),
        })?;
        if !pred.is_closed() {
            let names: Vec<String> = pred.frees().iter().map(|v| v.name().to_string()).collect();
            return Err(KernelError::OpenTerm(names.join(", ")));
        }
        let listed: BTreeSet<Name> = ty_vars.iter().cloned().collect();
        if listed.len() != ty_vars.len() {
            return Err(KernelError::TyVarMismatch("repeated type variable".into()));
        }
        let needed = d.concl().type_vars();
        if listed != needed {
            let show = |s: &BTreeSet<Name>| s.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ");
            return Err(KernelError::TyVarMismatch(format!("listed [{}], required [{}]", show(&listed), show(&needed))));
        }
        match self.sig.type_ops.get(&op) {
            Some(info) if info.defined => return Err(KernelError::Redefinition(op)),
            _ => {}
        }
        self.check_fresh_const(&abs)?;
        self.check_fresh_const(&rep)?;
        if abs == rep {
            return Err(KernelError::Redefinition(rep));
        }

        let old_ty = witness.ty().clone();
        let new_ty = Type::app(op.clone(), ty_vars.iter().map(|n| Type::var(n.clone())).collect());
        self.sig.type_ops.insert(op.clone(), TypeOpInfo { arity: ty_vars.len(), defined: true });
        let abs_ty = Type::fun(old_ty.clone(), new_ty.clone());
        let rep_ty = Type::fun(new_ty.clone(), old_ty.clone());
        self.sig.consts.insert(abs.clone(), ConstInfo { ty: abs_ty.clone(), builtin: false });
        self.sig.consts.insert(rep.clone(), ConstInfo { ty: rep_ty.clone(), builtin: false });
        let abs_c = Term::constant(abs.clone(), abs_ty);
        let rep_c = Term::constant(rep.clone(), rep_ty);

        let a = Var::new("a", new_ty);
        let r = Var::new("r", old_ty);
        let a_t = Term::var(a.clone());
        let r_t = Term::var(r.clone());
        let abs_rep_a = Term::app(abs_c.clone(), Term::app(rep_c.clone(), a_t.clone())?)?;
        let rep_abs_r = Term::app(rep_c.clone(), Term::app(abs_c.clone(), r_t.clone())?)?;
        let p_r = Term::app(pred.clone(), r_t.clone())?;
        let rep_abs_eq = Term::mk_eq(rep_abs_r, r_t)?;
        let (th1, th2) = match self.version {
            KernelVersion::V5 => (Term::mk_eq(abs_rep_a, a_t)?, Term::mk_eq(p_r, rep_abs_eq)?),
            KernelVersion::V6 => (
                Term::mk_eq(Term::abs(a.clone(), abs_rep_a), Term::abs(a, a_t))?,
                Term::mk_eq(Term::abs(r.clone(), rep_abs_eq), Term::abs(r, p_r))?,
            ),
        };
        let mut outs = self
            .record(
                Rule::DefineTypeOp,
                &[d],
                Payload::DefineTypeOp { op: op.clone(), abs, rep, ty_vars, version: self.version },
                vec![Sequent::new([], th1), Sequent::new([], th2)],
            )
            .into_iter();
        let abs_rep = outs.next().expect("two outputs");
        let rep_abs = outs.next().expect("two outputs");
        Ok(TypeDefinition { op, abs: abs_c, rep: rep_c, abs_rep, rep_abs })
    }

    /// Asserts `hyps |- concl` without proof and records it as an assumption.
    pub fn axiom(&mut self, hyps: &[Term], concl: &Term) -> Result<Theorem> {
        for h in hyps {
            check_bool(h)?;
        }
        check_bool(concl)?;
        let seq = Sequent::new(hyps.iter().cloned(), concl.clone());
        if !self.assumptions.iter().any(|s| s.alpha_eq(&seq)) {
            self.assumptions.push(seq.clone());
        }
        Ok(self.record1(Rule::Axiom, &[], Payload::None, seq))
    }

    /// From `G |- p = q` derive `G |- q = p`.
    pub fn sym(&mut self, d: &Theorem) -> Result<Theorem> {
        self.owns(d, "sym")?;
        let (p, q) = dest_eq_thm(d, "sym")?;
        let eq = Term::mk_eq(q.clone(), p.clone())?;
        Ok(self.record1(Rule::Sym, &[d], Payload::None, Sequent::new(d.hyps().iter().cloned(), eq)))
    }

    /// From `G |- s = t` and `D |- t' = u` with `t` alpha-equal to `t'`, derive `G u D |- s = u`.
    pub fn trans(&mut self, d1: &Theorem, d2: &Theorem) -> Result<Theorem> {
        self.owns(d1, "trans")?;
        self.owns(d2, "trans")?;
        let (s, t) = dest_eq_thm(d1, "trans")?;
        let (t2, u) = dest_eq_thm(d2, "trans")?;
        if !t.alpha_eq(t2) {
            return Err(KernelError::RuleMismatch { rule: "trans", reason: format!("`{t}` does not match `{t2}`") });
        }
        let eq = Term::mk_eq(s.clone(), u.clone())?;
        let hyps = d1.hyps().iter().chain(d2.hyps()).cloned();
        Ok(self.record1(Rule::Trans, &[d1, d2], Payload::None, Sequent::new(hyps, eq)))
    }

    /// From `G |- p` and `D |- q` derive `G u (D - {p}) |- q`.
    pub fn prove_hyp(&mut self, d1: &Theorem, d2: &Theorem) -> Result<Theorem> {
        self.owns(d1, "proveHyp")?;
        self.owns(d2, "proveHyp")?;
        let mut hyps: Vec<Term> = d1.hyps().to_vec();
        hyps.extend(remove_hyp(d2.hyps(), d1.concl()));
        let out = Sequent::new(canonical_hyps(hyps), d2.concl().clone());
        Ok(self.record1(Rule::ProveHyp, &[d1, d2], Payload::None, out))
    }
}

//! Re-derivation of a replayed trace in a fresh kernel of a chosen version.
//!
//! At version 5 the v6 rules are replaced by their primitive simulations.
//! Type definitions are re-run in the target mode and their theorems are
//! converted to the shape the rest of the trace was built against.

use std::collections::{BTreeMap, HashMap, HashSet};

use proofcloud_kernel::{
    prove_hyp_via_primitives, sym_via_primitives, trans_via_primitives, Kernel, KernelVersion, Payload, ProofRef,
    ProofTrace, Result, Rule, Term, TermKind, Theorem, TraceId, TypeDefinition, EQ,
};

use crate::vm::{ArticleResult, Export};

/// Definition and axiom nodes: always kept, whether or not an export uses them.
pub fn is_root_rule(rule: Rule) -> bool {
    matches!(rule, Rule::DefineConst | Rule::DefineTypeOp | Rule::Axiom)
}

struct Lowerer<'a> {
    src: &'a ProofTrace,
    k: Kernel,
    memo: HashMap<ProofRef, Theorem>,
    done: HashSet<TraceId>,
}

impl Lowerer<'_> {
    fn ensure(&mut self, root: TraceId) -> Result<()> {
        let mut stack = vec![(root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if self.done.contains(&id) {
                continue;
            }
            if expanded {
                self.process(id)?;
                self.done.insert(id);
            } else {
                stack.push((id, true));
                let needed = match self.collapse(id) {
                    Some((_, prem)) => prem,
                    None => self.src.node(id).premises.clone(),
                };
                for p in needed.iter().rev() {
                    if !self.done.contains(&p.node) {
                        stack.push((p.node, false));
                    }
                }
            }
        }
        Ok(())
    }

    fn prem(&self, id: TraceId, i: usize) -> Theorem {
        self.memo[&self.src.node(id).premises[i]].clone()
    }

    fn collapse(&self, id: TraceId) -> Option<(Rule, Vec<ProofRef>)> {
        if self.k.version() != KernelVersion::V6 {
            return None;
        }
        collapsible(self.src, id)
    }

    fn process(&mut self, id: TraceId) -> Result<()> {
        if let Some((rule, prem)) = self.collapse(id) {
            let ths: Vec<Theorem> = prem.iter().map(|r| self.memo[r].clone()).collect();
            let out = match rule {
                Rule::Sym => self.k.sym(&ths[0])?,
                Rule::Trans => self.k.trans(&ths[0], &ths[1])?,
                _ => self.k.prove_hyp(&ths[0], &ths[1])?,
            };
            self.memo.insert(ProofRef { node: id, output: 0 }, out);
            return Ok(());
        }
        let node = self.src.node(id);
        let v6 = self.k.version() == KernelVersion::V6;
        let out = match (&node.rule, &node.payload) {
            (Rule::Refl, Payload::Term(t)) => self.k.refl(t)?,
            (Rule::Assume, Payload::Term(t)) => self.k.assume(t)?,
            (Rule::BetaConv, Payload::Term(t)) => self.k.beta_conv(t)?,
            (Rule::AbsThm, Payload::Var(v)) => {
                let d = self.prem(id, 0);
                self.k.abs_thm(v, &d)?
            }
            (Rule::Subst, Payload::Subst(s)) => {
                let d = self.prem(id, 0);
                self.k.subst(s, &d)?
            }
            (Rule::EqMp, _) => {
                let (a, b) = (self.prem(id, 0), self.prem(id, 1));
                self.k.eq_mp(&a, &b)?
            }
            (Rule::AppThm, _) => {
                let (a, b) = (self.prem(id, 0), self.prem(id, 1));
                self.k.app_thm(&a, &b)?
            }
            (Rule::DeductAntisym, _) => {
                let (a, b) = (self.prem(id, 0), self.prem(id, 1));
                self.k.deduct_antisym(&a, &b)?
            }
            (Rule::Sym, _) => {
                let a = self.prem(id, 0);
                if v6 {
                    self.k.sym(&a)?
                } else {
                    sym_via_primitives(&mut self.k, &a)?
                }
            }
            (Rule::Trans, _) => {
                let (a, b) = (self.prem(id, 0), self.prem(id, 1));
                if v6 {
                    self.k.trans(&a, &b)?
                } else {
                    trans_via_primitives(&mut self.k, &a, &b)?
                }
            }
            (Rule::ProveHyp, _) => {
                let (a, b) = (self.prem(id, 0), self.prem(id, 1));
                if v6 {
                    self.k.prove_hyp(&a, &b)?
                } else {
                    prove_hyp_via_primitives(&mut self.k, &a, &b)?
                }
            }
            (Rule::Axiom, _) => {
                let s = &node.outputs[0];
                self.k.axiom(s.hyps(), s.concl())?
            }
            (Rule::DefineConst, Payload::DefineConst { name, rhs }) => self.k.define_const(name.clone(), rhs)?.1,
            (Rule::DefineTypeOp, Payload::DefineTypeOp { op, abs, rep, ty_vars, version }) => {
                let d = self.prem(id, 0);
                let def = self.k.define_type_op(op.clone(), abs.clone(), rep.clone(), ty_vars.clone(), &d)?;
                let (th1, th2) = match (version, self.k.version()) {
                    (a, b) if *a == b => (def.abs_rep.clone(), def.rep_abs.clone()),
                    (KernelVersion::V6, _) => self.to_v6_shape(&def)?,
                    _ => self.to_v5_shape(&def)?,
                };
                self.memo.insert(ProofRef { node: id, output: 1 }, th2);
                th1
            }
            (rule, payload) => unreachable!("{rule} node with payload {payload:?}"),
        };
        self.memo.insert(ProofRef { node: id, output: 0 }, out);
        Ok(())
    }

    /// v5 theorems `abs (rep a) = a` and `P r = (rep (abs r) = r)` to
    /// `(\a. abs (rep a)) = (\a. a)` and `(\r. rep (abs r) = r) = (\r. P r)`.
    fn to_v6_shape(&mut self, def: &TypeDefinition) -> Result<(Theorem, Theorem)> {
        let a = bound_of(def.abs_rep.concl(), false);
        let r = bound_of(def.rep_abs.concl(), true);
        let th1 = self.k.abs_thm(&a, &def.abs_rep)?;
        let flipped = self.k.abs_thm(&r, &def.rep_abs)?;
        let th2 = sym_via_primitives(&mut self.k, &flipped)?;
        Ok((th1, th2))
    }

    /// The converse of [`Self::to_v6_shape`], by applying both sides to the
    /// bound variable and beta-reducing.
    fn to_v5_shape(&mut self, def: &TypeDefinition) -> Result<(Theorem, Theorem)> {
        let th1 = self.apply_and_reduce(&def.abs_rep)?;
        let y = self.apply_and_reduce(&def.rep_abs)?;
        let th2 = self.k.sym(&y)?;
        Ok((th1, th2))
    }

    /// From `|- (\x. s) = (\x. t)` derive `|- s = t`.
    fn apply_and_reduce(&mut self, th: &Theorem) -> Result<Theorem> {
        let (lhs, _) = th.concl().dest_eq().expect("equation");
        let (x, _) = lhs.dest_abs().expect("abstraction");
        let refl = self.k.refl(&Term::var(x.clone()))?;
        let applied = self.k.app_thm(th, &refl)?;
        let (l, r) = applied.concl().dest_eq().expect("equation");
        let (l, r) = (l.clone(), r.clone());
        let b1 = self.k.beta_conv(&l)?;
        let b2 = self.k.beta_conv(&r)?;
        let b1 = self.k.sym(&b1)?;
        let t = self.k.trans(&b1, &applied)?;
        self.k.trans(&t, &b2)
    }
}

/// Recognises the primitive simulations of `sym`, `trans` and `proveHyp`
/// rooted at `id`, returning the rule and its premises.
pub fn collapsible(t: &ProofTrace, id: TraceId) -> Option<(Rule, Vec<ProofRef>)> {
    let n = t.node(id);
    if n.rule != Rule::EqMp {
        return None;
    }
    let (a, second) = (t.node(n.premises[0].node), n.premises[1]);
    let refl_of = |r: ProofRef| match (&t.node(r.node).rule, &t.node(r.node).payload) {
        (Rule::Refl, Payload::Term(tm)) => Some(tm.clone()),
        _ => None,
    };
    match a.rule {
        // eqMp (deductAntisym d1 d2) d1
        Rule::DeductAntisym if a.premises[0] == second => Some((Rule::ProveHyp, a.premises.clone())),
        Rule::AppThm => {
            let b = t.node(a.premises[0].node);
            if let Some(eq_s) = refl_of(a.premises[0]) {
                // eqMp (appThm (refl ((=) s)) d2) d1
                let (f, _) = eq_s.dest_app()?;
                return is_eq_const(f).then(|| (Rule::Trans, vec![second, a.premises[1]]));
            }
            // eqMp (appThm (appThm (refl (=)) d) (refl l)) (refl l)
            let l1 = refl_of(a.premises[1])?;
            let l2 = refl_of(second)?;
            let eq = refl_of(*b.premises.first()?)?;
            (b.rule == Rule::AppThm && is_eq_const(&eq) && l1 == l2).then(|| (Rule::Sym, vec![b.premises[1]]))
        }
        _ => None,
    }
}

/// True when some node is a v6-only rule or a primitive pattern that
/// version 6 states with one.
pub fn uses_v6_expressible_rules(t: &ProofTrace) -> bool {
    t.nodes().iter().enumerate().any(|(i, n)| n.rule.is_v6_only() || collapsible(t, TraceId(i as u32)).is_some())
}

fn is_eq_const(t: &Term) -> bool {
    matches!(t.kind(), TermKind::Const(n, _) if n.namespace().is_empty() && n.base() == EQ)
}

/// The variable `a` in `abs (rep a) = a`, or `r` in `P r = (rep (abs r) = r)`.
fn bound_of(concl: &Term, rep_abs: bool) -> proofcloud_kernel::Var {
    let (l, r) = concl.dest_eq().expect("equation");
    let t = if rep_abs { l.dest_app().expect("application").1 } else { r };
    t.as_var().expect("variable").clone()
}

pub fn lower(src: &ArticleResult, target: KernelVersion) -> Result<ArticleResult> {
    let mut l = Lowerer { src: &src.trace, k: Kernel::new(target), memo: HashMap::new(), done: HashSet::new() };
    for node in src.trace.nodes() {
        if is_root_rule(node.rule) {
            l.ensure(node.id)?;
        }
    }
    let mut exports = Vec::with_capacity(src.exports.len());
    for e in &src.exports {
        let r = e.theorem.proof();
        l.ensure(r.node)?;
        exports.push(Export { name: e.name.clone(), theorem: l.memo[&r].clone() });
    }
    let assumptions = l.k.assumptions().to_vec();
    Ok(ArticleResult {
        version: target,
        exports,
        assumptions,
        trace: l.k.into_trace(),
        signature: src.signature.clone(),
        command_count: BTreeMap::new(),
        warnings: Vec::new(),
    })
}

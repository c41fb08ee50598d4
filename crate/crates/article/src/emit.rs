//! Canonical article output.
//!
//! The trace is first lowered to the target version, then written in a
//! fixed order: definitions and axioms by trace position, then exports.
//! Objects used more than once go through the dictionary, released on their
//! last use. A version 6 header is written only when the output uses
//! version 6 rules or type definitions, whose shape depends on the version.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use proofcloud_kernel::{KernelVersion, Name, Payload, ProofRef, ProofTrace, Result, Rule, Term, TermKind, TraceId, Type, TypeKind, Var};

use crate::command::{Command, Opcode};
use crate::lower::{is_root_rule, lower};
use crate::vm::{ArticleResult, Export};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Ty(Type),
    Var(Var),
    Tm(Term),
    Thm(ProofRef),
}

struct Emitter<'a> {
    trace: &'a ProofTrace,
    counting: bool,
    counts: HashMap<Key, usize>,
    used: HashMap<Key, usize>,
    slots: HashMap<Key, i64>,
    free: BTreeSet<i64>,
    next_slot: i64,
    out: String,
}

impl<'a> Emitter<'a> {
    fn new(trace: &'a ProofTrace) -> Emitter<'a> {
        Emitter {
            trace,
            counting: true,
            counts: HashMap::new(),
            used: HashMap::new(),
            slots: HashMap::new(),
            free: BTreeSet::new(),
            next_slot: 0,
            out: String::new(),
        }
    }

    fn cmd(&mut self, c: Command) {
        if !self.counting {
            writeln!(self.out, "{c}").expect("write to string");
        }
    }

    fn op(&mut self, op: Opcode) {
        self.cmd(Command::Op(op));
    }

    fn num(&mut self, n: i64) {
        self.cmd(Command::Num(n));
    }

    fn name(&mut self, n: &Name) {
        self.cmd(Command::Name(n.clone()));
    }

    fn built_at_root(&self, key: &Key) -> bool {
        matches!(key, Key::Thm(r) if is_root_rule(self.trace.node(r.node).rule))
    }

    /// Records a use of `key`. Returns true when the caller must construct it.
    fn enter(&mut self, key: &Key) -> bool {
        if self.counting {
            let c = self.counts.entry(key.clone()).or_insert(0);
            *c += 1;
            return *c == 1 && !self.built_at_root(key);
        }
        let u = self.used.entry(key.clone()).or_insert(0);
        *u += 1;
        let u = *u;
        if u == 1 && !self.built_at_root(key) {
            return true;
        }
        let slot = self.slots[key];
        self.num(slot);
        if u == self.counts[key] {
            self.op(Opcode::Remove);
            self.slots.remove(key);
            self.free.insert(slot);
        } else {
            self.op(Opcode::Ref);
        }
        false
    }

    /// Stores a freshly built object that will be used again; it stays on the stack.
    fn store_if_shared(&mut self, key: Key, later_uses: usize) {
        if self.counting || later_uses == 0 {
            return;
        }
        let slot = self.free.pop_first().unwrap_or_else(|| {
            self.next_slot += 1;
            self.next_slot - 1
        });
        self.num(slot);
        self.op(Opcode::Def);
        self.slots.insert(key, slot);
    }

    fn after_build(&mut self, key: Key) {
        let n = self.counts.get(&key).copied().unwrap_or(0);
        self.store_if_shared(key, n.saturating_sub(1));
    }

    fn list<T>(&mut self, items: &[T], mut each: impl FnMut(&mut Self, &T)) {
        for x in items {
            each(self, x);
        }
        self.op(Opcode::Nil);
        for _ in items {
            self.op(Opcode::Cons);
        }
    }

    fn ty(&mut self, t: &Type) {
        let key = Key::Ty(t.clone());
        if !self.enter(&key) {
            return;
        }
        match t.kind() {
            TypeKind::Var(n) => {
                self.name(n);
                self.op(Opcode::VarType);
            }
            TypeKind::App(op, args) => {
                self.name(op);
                self.op(Opcode::TypeOp);
                self.list(args, |e, a| e.ty(a));
                self.op(Opcode::OpType);
            }
        }
        self.after_build(key);
    }

    fn var(&mut self, v: &Var) {
        let key = Key::Var(v.clone());
        if !self.enter(&key) {
            return;
        }
        self.name(v.name());
        self.ty(v.ty());
        self.op(Opcode::Var);
        self.after_build(key);
    }

    fn term(&mut self, t: &Term) {
        let key = Key::Tm(t.clone());
        if !self.enter(&key) {
            return;
        }
        match t.kind() {
            TermKind::Var(v) => {
                self.var(v);
                self.op(Opcode::VarTerm);
            }
            TermKind::Const(n, ty) => {
                self.name(n);
                self.op(Opcode::Const);
                self.ty(ty);
                self.op(Opcode::ConstTerm);
            }
            TermKind::App(f, x) => {
                self.term(f);
                self.term(x);
                self.op(Opcode::AppTerm);
            }
            TermKind::Abs(v, b) => {
                self.var(v);
                self.term(b);
                self.op(Opcode::AbsTerm);
            }
        }
        self.after_build(key);
    }

    fn thm(&mut self, r: ProofRef) {
        let key = Key::Thm(r);
        if !self.enter(&key) {
            return;
        }
        let node = self.trace.node(r.node);
        let prem = node.premises.clone();
        match (&node.rule, &node.payload) {
            (Rule::Refl | Rule::Assume | Rule::BetaConv, Payload::Term(t)) => {
                self.term(t);
                self.op(match node.rule {
                    Rule::Refl => Opcode::Refl,
                    Rule::Assume => Opcode::Assume,
                    _ => Opcode::BetaConv,
                });
            }
            (Rule::AbsThm, Payload::Var(v)) => {
                self.var(v);
                self.thm(prem[0]);
                self.op(Opcode::AbsThm);
            }
            (Rule::Subst, Payload::Subst(s)) => {
                let tys: Vec<(Name, Type)> = s.ty_map().iter().map(|(k, v)| (k.clone(), v.clone())).collect();
                let tms: Vec<(Var, Term)> = s.tm_map().iter().map(|(k, v)| (k.clone(), v.clone())).collect();
                self.list(&tys, |e, (n, t)| {
                    e.name(n);
                    e.ty(t);
                    e.op(Opcode::Nil);
                    e.op(Opcode::Cons);
                    e.op(Opcode::Cons);
                });
                self.list(&tms, |e, (v, t)| {
                    e.var(v);
                    e.term(t);
                    e.op(Opcode::Nil);
                    e.op(Opcode::Cons);
                    e.op(Opcode::Cons);
                });
                self.op(Opcode::Nil);
                self.op(Opcode::Cons);
                self.op(Opcode::Cons);
                self.thm(prem[0]);
                self.op(Opcode::Subst);
            }
            (Rule::Sym, _) => {
                self.thm(prem[0]);
                self.op(Opcode::Sym);
            }
            (rule @ (Rule::EqMp | Rule::AppThm | Rule::DeductAntisym | Rule::Trans | Rule::ProveHyp), _) => {
                self.thm(prem[0]);
                self.thm(prem[1]);
                self.op(match rule {
                    Rule::EqMp => Opcode::EqMp,
                    Rule::AppThm => Opcode::AppThm,
                    Rule::DeductAntisym => Opcode::DeductAntisym,
                    Rule::Trans => Opcode::Trans,
                    _ => Opcode::ProveHyp,
                });
            }
            (rule, payload) => unreachable!("{rule} node with payload {payload:?}"),
        }
        self.after_build(key);
    }

    /// Pops the theorem on top of the stack, keeping it in the dictionary
    /// if anything uses it later.
    fn park(&mut self, r: ProofRef) {
        let n = self.counts.get(&Key::Thm(r)).copied().unwrap_or(0);
        self.store_if_shared(Key::Thm(r), n);
        self.op(Opcode::Pop);
    }

    fn root(&mut self, id: TraceId) {
        let node = self.trace.node(id);
        let r0 = ProofRef { node: id, output: 0 };
        match (&node.rule, &node.payload) {
            (Rule::DefineConst, Payload::DefineConst { name, rhs }) => {
                self.name(name);
                self.term(rhs);
                self.op(Opcode::DefineConst);
                self.park(r0);
                self.op(Opcode::Pop);
            }
            (Rule::DefineTypeOp, Payload::DefineTypeOp { op, abs, rep, ty_vars, .. }) => {
                let witness = node.premises[0];
                self.name(op);
                self.name(abs);
                self.name(rep);
                self.list(ty_vars, |e, n| e.name(n));
                self.thm(witness);
                self.op(Opcode::DefineTypeOp);
                self.park(ProofRef { node: id, output: 1 });
                self.park(r0);
                for _ in 0..3 {
                    self.op(Opcode::Pop);
                }
            }
            (Rule::Axiom, _) => {
                let s = node.outputs[0].clone();
                self.list(s.hyps(), |e, h| e.term(h));
                self.term(s.concl());
                self.op(Opcode::Axiom);
                self.park(r0);
            }
            (rule, _) => unreachable!("{rule} is not a root rule"),
        }
    }

    fn export(&mut self, e: &Export) {
        let s = e.theorem.sequent();
        self.thm(e.theorem.proof());
        self.list(s.hyps(), |em, h| em.term(h));
        self.term(s.concl());
        self.op(Opcode::Thm);
    }

    fn run(&mut self, roots: &[TraceId], exports: &[Export]) {
        for id in roots {
            self.root(*id);
        }
        for e in exports {
            self.export(e);
        }
    }
}

/// Writes `result` as an article of the given version.
pub fn emit_article(result: &ArticleResult, version: KernelVersion) -> Result<String> {
    crate::with_large_stack(|| {
        let low = lower(result, version)?;
        let roots: Vec<TraceId> = low.trace.nodes().iter().filter(|n| is_root_rule(n.rule)).map(|n| n.id).collect();
        let mut e = Emitter::new(&low.trace);
        e.run(&roots, &low.exports);
        e.counting = false;
        // the header is only needed when the output differs from a v5 reading
        let needs_v6 = low.trace.nodes().iter().any(|n| n.rule.is_v6_only() || n.rule == Rule::DefineTypeOp);
        if version == KernelVersion::V6 && needs_v6 {
            e.num(6);
            e.op(Opcode::Version);
        }
        e.run(&roots, &low.exports);
        debug_assert!(e.slots.is_empty());
        Ok(e.out)
    })
}

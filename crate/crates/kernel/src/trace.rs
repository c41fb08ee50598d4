//! Append-only record of kernel rule applications.

use std::collections::BTreeSet;
use std::fmt;

use crate::name::Name;
use crate::sequent::Sequent;
use crate::subst::Substitution;
use crate::term::{Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceId(pub u32);

/// One theorem produced by a trace node. Most rules produce a single
/// theorem (`output == 0`); type definitions produce two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProofRef {
    pub node: TraceId,
    pub output: u8,
}

impl fmt::Display for ProofRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.output == 0 {
            write!(f, "#{}", self.node.0)
        } else {
            write!(f, "#{}.{}", self.node.0, self.output)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Refl,
    Assume,
    EqMp,
    AbsThm,
    AppThm,
    DeductAntisym,
    Subst,
    BetaConv,
    DefineConst,
    DefineTypeOp,
    Axiom,
    Sym,
    Trans,
    ProveHyp,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Refl => "refl",
            Rule::Assume => "assume",
            Rule::EqMp => "eqMp",
            Rule::AbsThm => "absThm",
            Rule::AppThm => "appThm",
            Rule::DeductAntisym => "deductAntisym",
            Rule::Subst => "subst",
            Rule::BetaConv => "betaConv",
            Rule::DefineConst => "defineConst",
            Rule::DefineTypeOp => "defineTypeOp",
            Rule::Axiom => "axiom",
            Rule::Sym => "sym",
            Rule::Trans => "trans",
            Rule::ProveHyp => "proveHyp",
        }
    }

    /// Rules only available in kernel version 6.
    pub fn is_v6_only(self) -> bool {
        matches!(self, Rule::Sym | Rule::Trans | Rule::ProveHyp)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelVersion {
    V5,
    V6,
}

impl KernelVersion {
    pub fn number(self) -> u32 {
        match self {
            KernelVersion::V5 => 5,
            KernelVersion::V6 => 6,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Payload {
    None,
    Term(Term),
    Var(Var),
    Subst(Substitution),
    DefineConst {
        name: Name,
        rhs: Term,
    },
    DefineTypeOp {
        op: Name,
        abs: Name,
        rep: Name,
        ty_vars: Vec<Name>,
        version: KernelVersion,
    },
}

#[derive(Debug, Clone)]
pub struct TraceNode {
    pub id: TraceId,
    pub rule: Rule,
    pub premises: Vec<ProofRef>,
    pub payload: Payload,
    pub outputs: Vec<Sequent>,
}

impl TraceNode {
    pub fn sequent(&self, output: u8) -> &Sequent {
        &self.outputs[output as usize]
    }
}

/// Free-form annotation attached after a node (article `pragma` payloads).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub after: Option<TraceId>,
    pub text: String,
}

#[derive(Debug, Clone, Default)]
pub struct ProofTrace {
    nodes: Vec<TraceNode>,
    annotations: Vec<Annotation>,
}

impl ProofTrace {
    pub fn new() -> ProofTrace {
        ProofTrace::default()
    }

    pub(crate) fn push(&mut self, rule: Rule, premises: Vec<ProofRef>, payload: Payload, outputs: Vec<Sequent>) -> TraceId {
        let id = TraceId(self.nodes.len() as u32);
        debug_assert!(premises.iter().all(|p| p.node < id));
        self.nodes.push(TraceNode { id, rule, premises, payload, outputs });
        id
    }

    pub fn annotate(&mut self, text: impl Into<String>) {
        let after = self.nodes.last().map(|n| n.id);
        self.annotations.push(Annotation { after, text: text.into() });
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: TraceId) -> &TraceNode {
        &self.nodes[id.0 as usize]
    }

    pub fn get(&self, id: TraceId) -> Option<&TraceNode> {
        self.nodes.get(id.0 as usize)
    }

    pub fn sequent(&self, r: ProofRef) -> &Sequent {
        self.node(r.node).sequent(r.output)
    }

    pub fn nodes(&self) -> &[TraceNode] {
        &self.nodes
    }

    pub fn annotations(&self) -> &[Annotation] {
        &self.annotations
    }

    /// Every premise refers to an earlier node and a valid output.
    pub fn is_acyclic(&self) -> bool {
        self.nodes.iter().enumerate().all(|(i, n)| {
            n.id.0 as usize == i
                && n.premises.iter().all(|p| {
                    p.node < n.id && (p.output as usize) < self.nodes[p.node.0 as usize].outputs.len()
                })
        })
    }

    /// Nodes reachable from `roots`, in ascending id order.
    pub fn reachable(&self, roots: impl IntoIterator<Item = TraceId>) -> BTreeSet<TraceId> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<TraceId> = roots.into_iter().collect();
        while let Some(id) = stack.pop() {
            if seen.insert(id) {
                stack.extend(self.node(id).premises.iter().map(|p| p.node));
            }
        }
        seen
    }
}

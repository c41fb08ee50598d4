//! Classical/constructive classification with lemma origins.

use std::collections::{BTreeMap, BTreeSet};

use proofcloud_kernel::{ProofRef, ProofTrace, Rule, Sequent, Term};

use crate::error::{AnalyzeError, Result};
use crate::pattern::{instance_of, sequent_instance_of};

/// An already classified theorem that later proofs may use.
#[derive(Debug, Clone)]
pub struct LemmaInfo {
    pub package: String,
    pub name: String,
    pub sequent: Sequent,
    /// Set for a theorem of the package being analysed: uses are found by
    /// trace identity rather than through an imported axiom.
    pub node: Option<ProofRef>,
    pub classical: bool,
    pub axioms: Vec<String>,
}

impl LemmaInfo {
    /// `package/name`, the id lemma lists use.
    pub fn id(&self) -> String {
        format!("{}/{}", self.package, self.name)
    }
}

#[derive(Debug, Clone, Default)]
pub struct LemmaTable {
    entries: Vec<LemmaInfo>,
}

impl LemmaTable {
    pub fn new() -> LemmaTable {
        LemmaTable::default()
    }

    pub fn insert(&mut self, l: LemmaInfo) {
        self.entries.push(l);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LemmaInfo> {
        self.entries.iter()
    }

    /// Imported lemma asserted by an axiom with sequent `s`: an exact
    /// match if there is one, else the first one `s` is an instance of.
    pub fn boundary(&self, s: &Sequent) -> Option<&LemmaInfo> {
        let imported = || self.entries.iter().filter(|l| l.node.is_none());
        imported().find(|l| l.sequent.alpha_eq(s)).or_else(|| imported().find(|l| sequent_instance_of(&l.sequent, s)))
    }

    fn local(&self, r: ProofRef) -> Option<&LemmaInfo> {
        self.entries.iter().find(|l| l.node == Some(r))
    }
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Conclusion of the axiom of choice, matched up to type instantiation.
    pub choice: Term,
    /// Other axioms that may appear as leaves without being lemmas.
    pub known_axioms: Vec<Term>,
    /// Fail on axiom leaves that are neither known axioms nor lemmas.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Classification {
    pub classical: bool,
    pub axioms_used: Vec<String>,
    pub classical_lemmas: Vec<String>,
    pub constructive_lemmas: Vec<String>,
}

fn push_unique(v: &mut Vec<String>, s: &str) {
    if !v.iter().any(|x| x == s) {
        v.push(s.to_string());
    }
}

/// Classifies the proof of `root`. Lemma uses are not descended into: the
/// lemma's own classification and axioms are inherited instead.
pub fn classify(trace: &ProofTrace, root: ProofRef, opts: &ClassifyOptions, lemmas: &LemmaTable) -> Result<Classification> {
    let mut out = Classification::default();
    let choice_text = opts.choice.to_string();
    let mut seen = BTreeSet::new();
    let mut stack = vec![root];
    let mut visit: BTreeMap<ProofRef, Option<&LemmaInfo>> = BTreeMap::new();
    while let Some(r) = stack.pop() {
        if !seen.insert(r) {
            continue;
        }
        if r != root {
            if let Some(l) = lemmas.local(r) {
                visit.insert(r, Some(l));
                continue;
            }
        }
        visit.insert(r, None);
        stack.extend(trace.node(r.node).premises.iter().copied());
    }
    // ascending node order keeps the lists independent of traversal order
    for (r, local) in visit {
        let lemma = match local {
            Some(l) => l,
            None => {
                let node = trace.node(r.node);
                if node.rule != Rule::Axiom {
                    continue;
                }
                let seq = &node.outputs[0];
                if seq.hyps().is_empty() && instance_of(&opts.choice, seq.concl()) {
                    push_unique(&mut out.axioms_used, &choice_text);
                    out.classical = true;
                    continue;
                }
                match lemmas.boundary(seq) {
                    Some(l) => l,
                    None => {
                        let known = seq.hyps().is_empty() && opts.known_axioms.iter().any(|a| instance_of(a, seq.concl()));
                        if opts.strict && !known {
                            return Err(AnalyzeError::UnknownLemma(seq.to_string()));
                        }
                        push_unique(&mut out.axioms_used, &seq.concl().to_string());
                        continue;
                    }
                }
            }
        };
        let l = lemma;
        for a in &l.axioms {
            push_unique(&mut out.axioms_used, a);
        }
        if l.classical {
            out.classical = true;
            push_unique(&mut out.classical_lemmas, &l.id());
        } else {
            push_unique(&mut out.constructive_lemmas, &l.id());
        }
    }
    Ok(out)
}

/// Number of distinct trace nodes the proof of `root` consists of.
pub fn proof_size(trace: &ProofTrace, root: ProofRef) -> usize {
    trace.reachable([root.node]).len()
}

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::name::Name;
use crate::term::{Term, Var};
use crate::trace::ProofRef;

/// Hypotheses and conclusion, with hypotheses sorted by [`Term::alpha_cmp`]
/// and free of alpha-duplicates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    hyps: Vec<Term>,
    concl: Term,
}

impl Sequent {
    pub fn new(hyps: impl IntoIterator<Item = Term>, concl: Term) -> Sequent {
        Sequent { hyps: canonical_hyps(hyps), concl }
    }

    pub fn hyps(&self) -> &[Term] {
        &self.hyps
    }

    pub fn concl(&self) -> &Term {
        &self.concl
    }

    pub fn alpha_cmp(&self, other: &Sequent) -> Ordering {
        self.concl.alpha_cmp(&other.concl).then_with(|| {
            self.hyps.len().cmp(&other.hyps.len()).then_with(|| {
                self.hyps
                    .iter()
                    .zip(&other.hyps)
                    .map(|(a, b)| a.alpha_cmp(b))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
        })
    }

    pub fn alpha_eq(&self, other: &Sequent) -> bool {
        self.alpha_cmp(other).is_eq()
    }

    pub fn has_hyp(&self, t: &Term) -> bool {
        self.hyps.binary_search_by(|h| h.alpha_cmp(t)).is_ok()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.hyps.iter().chain(std::iter::once(&self.concl))
    }

    pub fn frees(&self) -> BTreeSet<Var> {
        self.terms().flat_map(|t| t.frees()).collect()
    }

    pub fn type_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.terms().for_each(|t| t.collect_type_vars(&mut out));
        out
    }
}

/// Sorts by alpha order and drops alpha-duplicates.
pub fn canonical_hyps(hyps: impl IntoIterator<Item = Term>) -> Vec<Term> {
    let mut v: Vec<Term> = hyps.into_iter().collect();
    v.sort_by(|a, b| a.alpha_cmp(b));
    v.dedup_by(|a, b| a.alpha_eq(b));
    v
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.hyps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{h}")?;
        }
        if !self.hyps.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|- {}", self.concl)
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

/// A sequent proved by the kernel. Values of this type can only be created
/// by the inference rules in [`crate::Kernel`].
#[derive(Clone)]
pub struct Theorem {
    seq: Sequent,
    proof: ProofRef,
    kernel: u64,
}

impl Theorem {
    pub(crate) fn new(seq: Sequent, proof: ProofRef, kernel: u64) -> Theorem {
        Theorem { seq, proof, kernel }
    }

    pub(crate) fn kernel_id(&self) -> u64 {
        self.kernel
    }

    pub fn sequent(&self) -> &Sequent {
        &self.seq
    }

    pub fn hyps(&self) -> &[Term] {
        self.seq.hyps()
    }

    pub fn concl(&self) -> &Term {
        self.seq.concl()
    }

    pub fn proof(&self) -> ProofRef {
        self.proof
    }
}

impl fmt::Debug for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.seq, self.proof)
    }
}

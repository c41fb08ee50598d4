//! Higher-order logic kernel implementing the OpenTheory primitive inference
//! rules (kernel versions 5 and 6).
//!
//! [`Kernel`] is the only way to obtain a [`Theorem`]. Every rule invocation
//! appends one node to the kernel's [`ProofTrace`], which downstream crates
//! use for translation, proof size, and axiom-usage analysis.

mod derived;
mod error;
mod kernel;
mod name;
mod sequent;
mod subst;
mod term;
mod trace;
mod types;

pub use derived::{prove_hyp_via_primitives, sym_via_primitives, trans_via_primitives};
pub use error::{KernelError, Result};
pub use kernel::{ConstInfo, Kernel, Signature, TypeDefinition, TypeOpInfo};
pub use name::{Name, NameError};
pub use sequent::{canonical_hyps, Sequent, Theorem};
pub use subst::Substitution;
pub use term::{type_of, variant, Term, TermKind, Var, EQ, SELECT};
pub use trace::{Annotation, KernelVersion, Payload, ProofRef, ProofTrace, Rule, TraceId, TraceNode};
pub use types::{Type, TypeKind, BOOL, FUN, IND};

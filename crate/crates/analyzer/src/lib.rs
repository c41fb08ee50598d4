//! Per-proof and per-package analytics over replayed articles.
//!
//! A proof is classical when its trace reaches the axiom of choice, either
//! directly or through a lemma that does. Lemmas imported from required
//! packages show up as axioms in the consuming trace and are recognised by
//! their sequents.

mod analyze;
mod classify;
mod error;
mod graph;
mod meta;
mod pattern;
mod records;
mod stats;

pub use analyze::{analyze, analyze_package, corpus_options, load_corpus, standard_choice_axiom, Analysis};
pub use classify::{classify, proof_size, Classification, ClassifyOptions, LemmaInfo, LemmaTable};
pub use error::{AnalyzeError, Result};
pub use graph::{dependency_graph, levels};
pub use meta::{CorpusMeta, PackageMeta, VerificationMeta};
pub use pattern::{instance_of, sequent_instance_of};
pub use records::{DependencyGraph, Edge, PackageStats, ProofListEntry, ProofRecord, VerificationRecord};
pub use stats::{corpus_stats, package_stats, CorpusStats};

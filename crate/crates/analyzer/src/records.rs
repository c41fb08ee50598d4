//! Page records. Field names follow the attribute lists of the proof,
//! package and verification pages.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ProofRecord {
    pub theorem_name: String,
    pub theorem_conclusion: String,
    pub packagename: String,
    pub constructive_proof: bool,
    pub axioms: Vec<String>,
    pub constructive_lemmas: Vec<String>,
    pub classical_lemmas: Vec<String>,
    /// Page id of the owning package.
    pub package: String,
    pub comments: String,
    pub size: usize,
    pub trace_id: u32,
}

impl ProofRecord {
    pub fn classical(&self) -> bool {
        !self.constructive_proof
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ProofListEntry {
    pub name: String,
    pub conclusion: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct PackageStats {
    pub package_name: String,
    pub author_of_package: String,
    pub subpackages: Vec<String>,
    pub date_retrieved: String,
    pub total_number_of_proofs: usize,
    pub number_of_constructive_proofs: usize,
    pub number_of_classical_proofs: usize,
    pub percentage_of_constructive_proofs: f64,
    /// `null` when the package has no constructive proofs.
    pub size_of_constructive_proofs_on_average: Option<f64>,
    pub size_of_classical_proofs_on_average: Option<f64>,
    pub list_of_proofs: Vec<ProofListEntry>,
    pub comments: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct VerificationRecord {
    pub package_name: String,
    pub software_engineer_for_verification: String,
    pub software_for_verification: String,
    /// Seconds.
    pub translation_time: f64,
    pub verification_time: f64,
    pub pc_specification: String,
    pub comments: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Edge {
    pub from: String,
    pub to: String,
}

/// Edges point from a package to the packages it requires.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct DependencyGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
    /// Dependencies before their dependents.
    pub load_order: Vec<String>,
}

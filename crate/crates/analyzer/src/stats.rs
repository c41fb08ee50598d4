//! Package and corpus aggregates.

use serde::{Deserialize, Serialize};

use crate::meta::PackageMeta;
use crate::records::{PackageStats, ProofListEntry, ProofRecord};

fn mean(sizes: &[usize]) -> Option<f64> {
    if sizes.is_empty() {
        None
    } else {
        Some(sizes.iter().sum::<usize>() as f64 / sizes.len() as f64)
    }
}

/// Aggregates one package's records. An empty package is 100% constructive.
pub fn package_stats(records: &[ProofRecord], meta: &PackageMeta) -> PackageStats {
    let cons: Vec<usize> = records.iter().filter(|r| r.constructive_proof).map(|r| r.size).collect();
    let class: Vec<usize> = records.iter().filter(|r| !r.constructive_proof).map(|r| r.size).collect();
    let total = records.len();
    PackageStats {
        package_name: meta.name.clone(),
        author_of_package: meta.author.clone(),
        subpackages: meta.subpackages.clone(),
        date_retrieved: meta.date_retrieved.clone(),
        total_number_of_proofs: total,
        number_of_constructive_proofs: cons.len(),
        number_of_classical_proofs: class.len(),
        percentage_of_constructive_proofs: if total == 0 { 100.0 } else { 100.0 * cons.len() as f64 / total as f64 },
        size_of_constructive_proofs_on_average: mean(&cons),
        size_of_classical_proofs_on_average: mean(&class),
        list_of_proofs: records
            .iter()
            .map(|r| ProofListEntry { name: r.theorem_name.clone(), conclusion: r.theorem_conclusion.clone() })
            .collect(),
        comments: meta.comments.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct CorpusStats {
    pub number_of_packages: usize,
    pub total_number_of_proofs: usize,
    pub number_of_constructive_proofs: usize,
    pub number_of_classical_proofs: usize,
    pub percentage_of_constructive_proofs: f64,
}

pub fn corpus_stats(stats: &[PackageStats]) -> CorpusStats {
    let total: usize = stats.iter().map(|s| s.total_number_of_proofs).sum();
    let cons: usize = stats.iter().map(|s| s.number_of_constructive_proofs).sum();
    CorpusStats {
        number_of_packages: stats.len(),
        total_number_of_proofs: total,
        number_of_constructive_proofs: cons,
        number_of_classical_proofs: total - cons,
        percentage_of_constructive_proofs: if total == 0 { 100.0 } else { 100.0 * cons as f64 / total as f64 },
    }
}

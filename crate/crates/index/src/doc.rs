//! Search documents and page ids.

use std::collections::BTreeMap;

use proofcloud_analyzer::{PackageStats, ProofRecord};
use proofcloud_dedukti::{base_ident, Mangler};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocKind {
    Proof,
    Package,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Facets {
    /// Only for proofs.
    pub classical: Option<bool>,
    pub package: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct SearchDocument {
    pub doc_id: String,
    pub kind: DocKind,
    pub title: String,
    pub body: String,
    pub facets: Facets,
}

/// Page ids `<package>/<theorem-name>`, escaped as identifiers. Names that
/// escape to the same identifier within a package get numeric suffixes, in
/// record order.
#[derive(Debug, Clone, Default)]
pub struct PageIds {
    ids: BTreeMap<(String, String), String>,
}

impl PageIds {
    pub fn new(records: &[ProofRecord]) -> PageIds {
        let mut manglers: BTreeMap<&str, Mangler> = BTreeMap::new();
        let mut ids = BTreeMap::new();
        for r in records {
            let m = manglers.entry(&r.packagename).or_default();
            let local = m.mangle("proof", &r.theorem_name);
            ids.insert((r.packagename.clone(), r.theorem_name.clone()), format!("{}/{local}", package_id(&r.packagename)));
        }
        PageIds { ids }
    }

    pub fn get(&self, package: &str, name: &str) -> Option<&str> {
        self.ids.get(&(package.to_string(), name.to_string())).map(String::as_str)
    }

    /// Page id for a lemma written `package/name`.
    pub fn lemma(&self, id: &str) -> Option<&str> {
        let (p, n) = id.split_once('/')?;
        self.get(p, n)
    }
}

/// File-safe form of a package name.
pub fn package_id(name: &str) -> String {
    base_ident(name)
}

pub fn proof_document(r: &ProofRecord, id: &str) -> SearchDocument {
    let mut body = vec![r.theorem_conclusion.clone(), r.packagename.clone()];
    body.extend(r.classical_lemmas.iter().cloned());
    body.extend(r.constructive_lemmas.iter().cloned());
    SearchDocument {
        doc_id: format!("proofs/{id}"),
        kind: DocKind::Proof,
        title: r.theorem_name.clone(),
        body: body.join("\n"),
        facets: Facets { classical: Some(r.classical()), package: r.packagename.clone() },
    }
}

pub fn package_document(s: &PackageStats) -> SearchDocument {
    let mut body = vec![s.author_of_package.clone(), s.comments.clone()];
    body.extend(s.subpackages.iter().cloned());
    body.extend(s.list_of_proofs.iter().map(|p| p.name.clone()));
    SearchDocument {
        doc_id: format!("packages/{}", package_id(&s.package_name)),
        kind: DocKind::Package,
        title: s.package_name.clone(),
        body: body.join("\n"),
        facets: Facets { classical: None, package: s.package_name.clone() },
    }
}

/// Documents for every proof and package.
pub fn documents(records: &[ProofRecord], stats: &[PackageStats]) -> Vec<SearchDocument> {
    let ids = PageIds::new(records);
    let mut docs: Vec<SearchDocument> = records
        .iter()
        .map(|r| proof_document(r, ids.get(&r.packagename, &r.theorem_name).expect("id for every record")))
        .collect();
    docs.extend(stats.iter().map(package_document));
    docs
}

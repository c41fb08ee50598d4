//! Inverted index with field-weighted tf-idf.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::doc::{DocKind, SearchDocument};
use crate::error::{IndexError, Result};
use crate::tokenize::tokenize;

pub const TITLE_WEIGHT: u32 = 3;
pub const BODY_WEIGHT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Posting {
    /// Position in [`InvertedIndex::docs`], which is sorted by doc id.
    pub doc: u32,
    pub title_tf: u32,
    pub body_tf: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocEntry {
    pub doc_id: String,
    pub kind: DocKind,
    pub title: String,
    /// Weighted token count: title tokens times the title weight plus body
    /// tokens.
    pub length: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertedIndex {
    pub postings: BTreeMap<String, Vec<Posting>>,
    pub docs: Vec<DocEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hit {
    pub doc_id: String,
    pub title: String,
    pub kind: DocKind,
    pub score: f64,
}

pub fn build_index(docs: &[SearchDocument]) -> Result<InvertedIndex> {
    let mut sorted: Vec<&SearchDocument> = docs.iter().collect();
    sorted.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
    for w in sorted.windows(2) {
        if w[0].doc_id == w[1].doc_id {
            return Err(IndexError::DuplicateDocId(w[0].doc_id.clone()));
        }
    }
    let mut index = InvertedIndex::default();
    for (i, d) in sorted.iter().enumerate() {
        let title = tokenize(&d.title);
        let body = tokenize(&d.body);
        let mut counts: BTreeMap<&str, (u32, u32)> = BTreeMap::new();
        for t in &title {
            counts.entry(t).or_default().0 += 1;
        }
        for t in &body {
            counts.entry(t).or_default().1 += 1;
        }
        for (t, (title_tf, body_tf)) in counts {
            index.postings.entry(t.to_string()).or_default().push(Posting { doc: i as u32, title_tf, body_tf });
        }
        index.docs.push(DocEntry {
            doc_id: d.doc_id.clone(),
            kind: d.kind,
            title: d.title.clone(),
            length: TITLE_WEIGHT * title.len() as u32 + BODY_WEIGHT * body.len() as u32,
        });
    }
    Ok(index)
}

impl InvertedIndex {
    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    /// `ln(1 + N / df)`; positive for every indexed token.
    pub fn idf(&self, token: &str) -> f64 {
        match self.postings.get(token) {
            Some(p) if !p.is_empty() => (1.0 + self.docs.len() as f64 / p.len() as f64).ln(),
            _ => 0.0,
        }
    }

    /// Top `k` documents. A document's score sums, over the distinct query
    /// tokens, idf times its weighted term frequency divided by its
    /// weighted length. Equal scores go by ascending doc id.
    pub fn search(&self, query: &str, k: usize) -> Vec<Hit> {
        let tokens: BTreeSet<String> = tokenize(query).into_iter().collect();
        let mut scores: HashMap<u32, f64> = HashMap::new();
        for t in &tokens {
            let Some(postings) = self.postings.get(t) else { continue };
            let idf = self.idf(t);
            for p in postings {
                let len = self.docs[p.doc as usize].length as f64;
                let tf = (TITLE_WEIGHT * p.title_tf + BODY_WEIGHT * p.body_tf) as f64 / len;
                *scores.entry(p.doc).or_default() += idf * tf;
            }
        }
        let mut ranked: Vec<(u32, f64)> = scores.into_iter().collect();
        // doc positions follow doc id order, so the position breaks ties
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        ranked
            .into_iter()
            .take(k)
            .map(|(i, score)| {
                let d = &self.docs[i as usize];
                Hit { doc_id: d.doc_id.clone(), title: d.title.clone(), kind: d.kind, score }
            })
            .collect()
    }
}

//! Full-text search over proof and package pages, the static page export,
//! and the JSON service that serves both.

mod doc;
mod error;
mod index;
mod serve;
mod site;
mod tokenize;

pub use doc::{documents, package_document, package_id, proof_document, DocKind, Facets, PageIds, SearchDocument};
pub use error::{IndexError, Result};
pub use index::{build_index, DocEntry, Hit, InvertedIndex, Posting, BODY_WEIGHT, TITLE_WEIGHT};
pub use serve::{router, serve, Service, ServiceHandle, Snapshot, DEFAULT_K};
pub use site::{
    export_site, package_page, proof_page, site_path, Manifest, ManifestEntry, API_DOC, PACKAGE_SCHEMA, PROOF_SCHEMA,
    VERIFICATION_SCHEMA,
};
pub use tokenize::tokenize;

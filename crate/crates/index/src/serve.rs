//! Read-only HTTP service over an exported site.

use std::collections::{BTreeMap, HashMap};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use axum::extract::{Path as UrlPath, RawQuery, State};
use axum::http::{header, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use proofcloud_analyzer::{corpus_stats, CorpusStats, DependencyGraph, PackageStats, ProofRecord};
use serde_json::{json, Value};
use tokio::sync::oneshot;

use crate::doc::{package_document, proof_document, SearchDocument};
use crate::error::{IndexError, Result};
use crate::index::{build_index, InvertedIndex};
use crate::site::site_path;

pub const DEFAULT_K: usize = 10;

/// An immutable view of one exported site.
#[derive(Debug)]
pub struct Snapshot {
    pub root: PathBuf,
    pub index: InvertedIndex,
    pub proofs: BTreeMap<String, Value>,
    /// Keyed by package id.
    pub packages: BTreeMap<String, Value>,
    pub verifications: BTreeMap<String, Value>,
    /// Package name to package id.
    pub package_names: HashMap<String, String>,
    pub stats: CorpusStats,
    pub graph: DependencyGraph,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| IndexError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| IndexError::Page { path: path.to_path_buf(), message: e.to_string() })
}

fn json_files(dir: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    if !dir.exists() {
        return Ok(());
    }
    for e in std::fs::read_dir(dir).map_err(|e| IndexError::io(dir, e))? {
        let p = e.map_err(|e| IndexError::io(dir, e))?.path();
        if p.is_dir() {
            json_files(&p, out)?;
        } else if p.extension().is_some_and(|x| x == "json") {
            out.push(p);
        }
    }
    out.sort();
    Ok(())
}

fn page<T: serde::de::DeserializeOwned>(path: &Path, v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| IndexError::Page { path: path.to_path_buf(), message: e.to_string() })
}

fn id_of(path: &Path, v: &Value) -> Result<String> {
    v.get("id")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| IndexError::Page { path: path.to_path_buf(), message: "missing `id`".into() })
}

impl Snapshot {
    /// Loads the pages under `root` and indexes them. Corpus totals are
    /// recounted from the package pages.
    pub fn load(root: &Path) -> Result<Snapshot> {
        let mut docs: Vec<SearchDocument> = Vec::new();
        let mut proofs = BTreeMap::new();
        let mut files = Vec::new();
        json_files(&root.join("proofs"), &mut files)?;
        for p in &files {
            let v = read_json(p)?;
            let id = id_of(p, &v)?;
            let r: ProofRecord = page(p, &v)?;
            docs.push(proof_document(&r, &id));
            proofs.insert(id, v);
        }
        let mut packages = BTreeMap::new();
        let mut package_names = HashMap::new();
        let mut stats = Vec::new();
        files.clear();
        json_files(&root.join("packages"), &mut files)?;
        for p in &files {
            let v = read_json(p)?;
            let id = id_of(p, &v)?;
            let s: PackageStats = page(p, &v)?;
            docs.push(package_document(&s));
            package_names.insert(s.package_name.clone(), id.clone());
            stats.push(s);
            packages.insert(id, v);
        }
        let mut verifications = BTreeMap::new();
        files.clear();
        json_files(&root.join("verification"), &mut files)?;
        for p in &files {
            let stem = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            verifications.insert(stem, read_json(p)?);
        }
        let graph_path = root.join("graph.json");
        let graph = if graph_path.exists() {
            page(&graph_path, &read_json(&graph_path)?)?
        } else {
            DependencyGraph { nodes: Vec::new(), edges: Vec::new(), load_order: Vec::new() }
        };
        Ok(Snapshot {
            root: root.to_path_buf(),
            index: build_index(&docs)?,
            proofs,
            packages,
            verifications,
            package_names,
            stats: corpus_stats(&stats),
            graph,
        })
    }

    fn package(&self, key: &str) -> Option<&Value> {
        self.packages.get(key).or_else(|| self.package_names.get(key).and_then(|id| self.packages.get(id)))
    }

    fn verification(&self, key: &str) -> Option<&Value> {
        self.verifications
            .get(key)
            .or_else(|| self.package_names.get(key).and_then(|id| self.verifications.get(id)))
    }
}

/// Holds the current snapshot; [`Service::replace`] swaps in a rebuilt one
/// without disturbing requests already holding the old one.
#[derive(Debug, Clone)]
pub struct Service {
    current: Arc<RwLock<Arc<Snapshot>>>,
}

impl Service {
    pub fn new(s: Snapshot) -> Service {
        Service { current: Arc::new(RwLock::new(Arc::new(s))) }
    }

    pub fn snapshot(&self) -> Arc<Snapshot> {
        self.current.read().expect("snapshot lock").clone()
    }

    pub fn replace(&self, s: Snapshot) {
        *self.current.write().expect("snapshot lock") = Arc::new(s);
    }
}

fn json_response(status: StatusCode, v: &Value) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], serde_json::to_string(v).expect("serializable")).into_response()
}

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    json_response(status, &json!({ "error": message.into() }))
}

fn found(v: Option<&Value>, what: &str, key: &str) -> Response {
    match v {
        Some(v) => json_response(StatusCode::OK, v),
        None => error(StatusCode::NOT_FOUND, format!("no {what} `{key}`")),
    }
}

fn parse_query(raw: Option<&str>) -> std::result::Result<(String, usize), String> {
    let mut q = None;
    let mut k = DEFAULT_K;
    for pair in raw.unwrap_or("").split('&').filter(|p| !p.is_empty()) {
        let (key, value) = pair.split_once('=').unwrap_or((pair, ""));
        let value = decode(value).ok_or_else(|| format!("bad percent-encoding in `{key}`"))?;
        match key {
            "q" => q = Some(value),
            "k" => {
                k = value.parse().map_err(|_| format!("`k` must be a positive integer, got `{value}`"))?;
                if k == 0 {
                    return Err("`k` must be at least 1".into());
                }
            }
            _ => {}
        }
    }
    Ok((q.ok_or("missing query parameter `q`")?, k))
}

/// Decodes `application/x-www-form-urlencoded` text.
fn decode(s: &str) -> Option<String> {
    let mut bytes = Vec::with_capacity(s.len());
    let mut it = s.bytes();
    while let Some(b) = it.next() {
        match b {
            b'+' => bytes.push(b' '),
            b'%' => {
                let h = [it.next()?, it.next()?];
                bytes.push(u8::from_str_radix(std::str::from_utf8(&h).ok()?, 16).ok()?);
            }
            b => bytes.push(b),
        }
    }
    String::from_utf8(bytes).ok()
}

async fn search(State(svc): State<Service>, RawQuery(raw): RawQuery) -> Response {
    match parse_query(raw.as_deref()) {
        Err(m) => error(StatusCode::BAD_REQUEST, m),
        Ok((q, k)) => {
            let hits = svc.snapshot().index.search(&q, k);
            let results: Vec<Value> = hits
                .iter()
                .map(|h| json!({ "doc-id": h.doc_id, "title": h.title, "kind": h.kind, "score": h.score }))
                .collect();
            json_response(StatusCode::OK, &json!({ "query": q, "k": k, "results": results }))
        }
    }
}

async fn proof(State(svc): State<Service>, UrlPath(id): UrlPath<String>) -> Response {
    found(svc.snapshot().proofs.get(&id), "proof", &id)
}

async fn package(State(svc): State<Service>, UrlPath(name): UrlPath<String>) -> Response {
    found(svc.snapshot().package(&name), "package", &name)
}

async fn verification(State(svc): State<Service>, UrlPath(name): UrlPath<String>) -> Response {
    found(svc.snapshot().verification(&name), "verification page for", &name)
}

async fn stats(State(svc): State<Service>) -> Response {
    json_response(StatusCode::OK, &serde_json::to_value(&svc.snapshot().stats).expect("serializable"))
}

async fn graph(State(svc): State<Service>) -> Response {
    json_response(StatusCode::OK, &serde_json::to_value(&svc.snapshot().graph).expect("serializable"))
}

fn content_type(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("html") => "text/html; charset=utf-8",
        Some("json") => "application/json",
        Some("js") => "text/javascript; charset=utf-8",
        Some("css") => "text/css; charset=utf-8",
        Some("svg") => "image/svg+xml",
        Some("png") => "image/png",
        Some("md") => "text/markdown; charset=utf-8",
        _ => "application/octet-stream",
    }
}

async fn static_file(State(svc): State<Service>, uri: Uri) -> Response {
    let rel = uri.path().trim_start_matches('/');
    if rel.starts_with("api/") || rel == "api" {
        return error(StatusCode::NOT_FOUND, format!("no endpoint `{}`", uri.path()));
    }
    let rel = if rel.is_empty() || rel.ends_with('/') { format!("{rel}index.html") } else { rel.to_string() };
    if rel.split('/').any(|c| c == ".." || c.is_empty()) {
        return error(StatusCode::NOT_FOUND, format!("no file `{}`", uri.path()));
    }
    let path = site_path(&svc.snapshot().root, &rel);
    match tokio::fs::read(&path).await {
        Ok(bytes) => ([(header::CONTENT_TYPE, content_type(&path))], bytes).into_response(),
        Err(_) => error(StatusCode::NOT_FOUND, format!("no file `{}`", uri.path())),
    }
}

pub fn router(svc: Service) -> Router {
    Router::new()
        .route("/api/search", get(search))
        .route("/api/proof/{*id}", get(proof))
        .route("/api/package/{name}", get(package))
        .route("/api/verification/{name}", get(verification))
        .route("/api/stats", get(stats))
        .route("/api/graph", get(graph))
        .fallback(static_file)
        .with_state(svc)
}

pub struct ServiceHandle {
    pub addr: SocketAddr,
    pub service: Service,
    shutdown: Option<oneshot::Sender<()>>,
    task: tokio::task::JoinHandle<()>,
}

impl ServiceHandle {
    pub async fn shutdown(mut self) {
        if let Some(tx) = self.shutdown.take() {
            let _ = tx.send(());
        }
        let _ = self.task.await;
    }

    /// Serves until the process is stopped.
    pub async fn wait(self) {
        let _ = self.task.await;
    }
}

/// Binds `addr` and serves `svc` on the current runtime.
pub async fn serve(svc: Service, addr: &str) -> Result<ServiceHandle> {
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|e| IndexError::Bind { addr: addr.to_string(), message: e.to_string() })?;
    let local = listener.local_addr().map_err(|e| IndexError::Bind { addr: addr.to_string(), message: e.to_string() })?;
    let (tx, rx) = oneshot::channel();
    let app = router(svc.clone());
    let task = tokio::spawn(async move {
        let _ = axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = rx.await;
            })
            .await;
    });
    Ok(ServiceHandle { addr: local, service: svc, shutdown: Some(tx), task })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_parsing() {
        assert_eq!(parse_query(Some("q=stream&k=5")), Ok(("stream".into(), 5)));
        assert_eq!(parse_query(Some("q=a+b%3D")), Ok(("a b=".into(), DEFAULT_K)));
        assert_eq!(parse_query(Some("q=")), Ok((String::new(), DEFAULT_K)));
        assert!(parse_query(None).is_err());
        assert!(parse_query(Some("q=x&k=zero")).is_err());
        assert!(parse_query(Some("q=x&k=0")).is_err());
        assert!(parse_query(Some("q=%G1")).is_err());
    }
}

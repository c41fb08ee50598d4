mod common;

use axum::body::{to_bytes, Body};
use axum::http::{header, Request, StatusCode};
use proofcloud_analyzer::corpus_stats;
use proofcloud_index::*;
use serde_json::Value;
use tower::ServiceExt;

struct Fixture {
    _dir: tempfile::TempDir,
    svc: Service,
}

fn synthetic_site() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let (records, stats, graph) = common::synthetic();
    export_site(&records, &stats, &[], &graph, dir.path()).unwrap();
    let svc = Service::new(Snapshot::load(dir.path()).unwrap());
    Fixture { _dir: dir, svc }
}

async fn get(svc: &Service, uri: &str) -> (StatusCode, String, Vec<u8>) {
    let res = router(svc.clone()).oneshot(Request::get(uri).body(Body::empty()).unwrap()).await.unwrap();
    let status = res.status();
    let ct = res.headers().get(header::CONTENT_TYPE).map(|v| v.to_str().unwrap().to_string()).unwrap_or_default();
    let body = to_bytes(res.into_body(), usize::MAX).await.unwrap().to_vec();
    (status, ct, body)
}

async fn get_json(svc: &Service, uri: &str) -> (StatusCode, Value) {
    let (s, ct, body) = get(svc, uri).await;
    assert_eq!(ct, "application/json", "{uri}");
    (s, serde_json::from_slice(&body).unwrap())
}

#[tokio::test]
async fn search_stream() {
    let f = synthetic_site();
    let (s, v) = get_json(&f.svc, "/api/search?q=stream&k=5").await;
    assert_eq!(s, StatusCode::OK);
    let results = v["results"].as_array().unwrap();
    assert!(!results.is_empty() && results.len() <= 5);
    assert!(results[0]["title"].as_str().unwrap().contains("stream"));
}

#[tokio::test]
async fn unknown_proof_and_paths_are_404_json() {
    let f = synthetic_site();
    for uri in ["/api/proof/unknown", "/api/package/nowhere", "/api/nothing", "/no/such/file.html"] {
        let (s, v) = get_json(&f.svc, uri).await;
        assert_eq!(s, StatusCode::NOT_FOUND, "{uri}");
        assert!(v["error"].is_string());
    }
}

#[tokio::test]
async fn malformed_queries_are_400() {
    let f = synthetic_site();
    for uri in ["/api/search", "/api/search?k=3", "/api/search?q=x&k=abc", "/api/search?q=x&k=0", "/api/search?q=%ZZ"] {
        let (s, v) = get_json(&f.svc, uri).await;
        assert_eq!(s, StatusCode::BAD_REQUEST, "{uri}");
        assert!(v["error"].is_string());
    }
    let (s, v) = get_json(&f.svc, "/api/search?q=").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["results"], serde_json::json!([]));
}

#[tokio::test]
async fn stats_match_a_recount() {
    let f = synthetic_site();
    let (records, stats, _) = common::synthetic();
    let (_, v) = get_json(&f.svc, "/api/stats").await;
    assert_eq!(v, serde_json::to_value(corpus_stats(&stats)).unwrap());
    assert_eq!(v["total-number-of-proofs"], records.len());
    assert_eq!(v["number-of-classical-proofs"], records.iter().filter(|r| r.classical()).count());
}

#[tokio::test]
async fn pages_and_graph() {
    let f = synthetic_site();
    let (records, _, graph) = common::synthetic();
    let ids = PageIds::new(&records);
    let r = &records[10];
    let id = ids.get(&r.packagename, &r.theorem_name).unwrap();
    let (s, v) = get_json(&f.svc, &format!("/api/proof/{id}")).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["theorem-name"], r.theorem_name.as_str());
    let (s, v) = get_json(&f.svc, "/api/package/natural-prime").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["package-name"], "natural-prime");
    let (_, by_id) = get_json(&f.svc, &format!("/api/package/{}", package_id("natural-prime"))).await;
    assert_eq!(by_id, v);
    let (_, g) = get_json(&f.svc, "/api/graph").await;
    assert_eq!(g, serde_json::to_value(&graph).unwrap());
    let (s, v) = get_json(&f.svc, "/api/verification/stream").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["package-name"], "stream");
}

#[tokio::test]
async fn static_files_have_content_types() {
    let f = synthetic_site();
    let (s, ct, body) = get(&f.svc, "/").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(ct, "text/html; charset=utf-8");
    assert!(String::from_utf8(body).unwrap().contains("natural-prime"));
    let (s, ct, _) = get(&f.svc, "/manifest.json").await;
    assert_eq!((s, ct.as_str()), (StatusCode::OK, "application/json"));
    let (s, _, _) = get(&f.svc, "/../Cargo.toml").await;
    assert_eq!(s, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn concurrent_identical_queries_agree() {
    let f = synthetic_site();
    let mut tasks = Vec::new();
    for _ in 0..16 {
        let svc = f.svc.clone();
        tasks.push(tokio::spawn(async move { get(&svc, "/api/search?q=prime+divides&k=20").await.2 }));
    }
    let mut bodies = Vec::new();
    for t in tasks {
        bodies.push(t.await.unwrap());
    }
    assert!(bodies.windows(2).all(|w| w[0] == w[1]));
}

#[tokio::test]
async fn snapshot_swap_and_real_socket() {
    let f = synthetic_site();
    let h = serve(f.svc.clone(), "127.0.0.1:0").await.unwrap();
    let addr = h.addr;
    // a second bind on the same port fails
    assert!(matches!(serve(f.svc.clone(), &addr.to_string()).await, Err(IndexError::Bind { .. })));

    let fetch = |path: &'static str| async move {
        use tokio::io::{AsyncReadExt, AsyncWriteExt};
        let mut s = tokio::net::TcpStream::connect(addr).await.unwrap();
        s.write_all(format!("GET {path} HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n").as_bytes()).await.unwrap();
        let mut out = String::new();
        s.read_to_string(&mut out).await.unwrap();
        out
    };
    let before = fetch("/api/stats").await;
    assert!(before.starts_with("HTTP/1.1 200"));
    assert!(before.contains("\"total-number-of-proofs\":1687"));

    let dir = tempfile::tempdir().unwrap();
    let a = common::fixture_analysis();
    export_site(&a.records, &a.stats, &[], &a.graph, dir.path()).unwrap();
    h.service.replace(Snapshot::load(dir.path()).unwrap());
    let after = fetch("/api/stats").await;
    assert!(after.contains("\"total-number-of-proofs\":16"));
    h.shutdown().await;
}

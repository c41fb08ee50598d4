mod common;

use std::collections::{BTreeSet, HashMap};

use proofcloud_analyzer::*;

const FIGURE3: [(&str, &str); 9] = [
    ("stream", "base"),
    ("natural-divides", "base"),
    ("natural-prime", "natural-divides"),
    ("natural-prime", "stream"),
    ("natural-fibonacci", "stream"),
    ("probability", "stream"),
    ("gfp", "natural-fibonacci"),
    ("natural-list", "probability"),
    ("modular", "natural-divides"),
];

fn meta(pairs: &[(&str, &[&str])]) -> Vec<PackageMeta> {
    pairs
        .iter()
        .map(|(n, r)| PackageMeta { requires: r.iter().map(|s| s.to_string()).collect(), ..PackageMeta::named(*n) })
        .collect()
}

fn valid_order(g: &DependencyGraph) -> bool {
    let pos: HashMap<&str, usize> = g.load_order.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    pos.len() == g.nodes.len() && g.edges.iter().all(|e| pos[e.to.as_str()] < pos[e.from.as_str()])
}

#[test]
fn figure3_edges_and_order() {
    let m = CorpusMeta::load(&common::figure3_meta()).unwrap();
    let g = dependency_graph(&m.packages).unwrap();
    assert_eq!(g.nodes.len(), 9);
    let got: BTreeSet<(String, String)> = g.edges.iter().map(|e| (e.from.clone(), e.to.clone())).collect();
    let want: BTreeSet<(String, String)> = FIGURE3.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(g.edges.len(), 9);
    assert_eq!(got, want);
    assert!(valid_order(&g));
    assert_eq!(g.load_order[0], "base");
}

#[test]
fn single_package() {
    let g = dependency_graph(&meta(&[("solo", &[])])).unwrap();
    assert_eq!(g.nodes, ["solo"]);
    assert!(g.edges.is_empty());
    assert_eq!(g.load_order, ["solo"]);
}

#[test]
fn two_cycle_is_reported() {
    let err = dependency_graph(&meta(&[("a", &["b"]), ("b", &["a"])])).unwrap_err();
    match err {
        AnalyzeError::CyclicDependency(c) => {
            assert_eq!(c.len(), 2);
            assert!(c.contains(&"a".to_string()) && c.contains(&"b".to_string()));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn longer_cycle_behind_an_acyclic_prefix() {
    let err = dependency_graph(&meta(&[("top", &["x"]), ("x", &["y"]), ("y", &["z"]), ("z", &["x"])])).unwrap_err();
    let AnalyzeError::CyclicDependency(c) = err else { panic!() };
    let set: BTreeSet<_> = c.iter().map(String::as_str).collect();
    assert_eq!(set, BTreeSet::from(["x", "y", "z"]));
}

#[test]
fn unknown_and_duplicate_packages() {
    assert!(matches!(
        dependency_graph(&meta(&[("a", &["ghost"])])),
        Err(AnalyzeError::UnknownPackage { .. })
    ));
    assert!(matches!(dependency_graph(&meta(&[("a", &[]), ("a", &[])])), Err(AnalyzeError::DuplicatePackage(_))));
}

#[test]
fn levels_respect_edges() {
    let m = CorpusMeta::load(&common::figure3_meta()).unwrap();
    let g = dependency_graph(&m.packages).unwrap();
    let lv = levels(&g);
    assert_eq!(lv[0], ["base"]);
    let at: HashMap<&str, usize> =
        lv.iter().enumerate().flat_map(|(i, l)| l.iter().map(move |n| (n.as_str(), i))).collect();
    for e in &g.edges {
        assert!(at[e.to.as_str()] < at[e.from.as_str()]);
    }
    assert_eq!(lv.iter().map(Vec::len).sum::<usize>(), 9);
}

#[test]
fn graph_json_shape() {
    let g = dependency_graph(&meta(&[("a", &[]), ("b", &["a"])])).unwrap();
    let v = serde_json::to_value(&g).unwrap();
    assert_eq!(v["edges"][0], serde_json::json!({"from": "b", "to": "a"}));
    assert_eq!(v["load-order"], serde_json::json!(["a", "b"]));
}

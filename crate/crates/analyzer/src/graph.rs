//! Package dependency graph.

use std::collections::HashMap;

use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{AnalyzeError, Result};
use crate::meta::PackageMeta;
use crate::records::{DependencyGraph, Edge};

/// One edge per direct requirement, from the package to what it requires.
pub fn dependency_graph(packages: &[PackageMeta]) -> Result<DependencyGraph> {
    let mut g: DiGraph<&str, ()> = DiGraph::new();
    let mut ix: HashMap<&str, NodeIndex> = HashMap::new();
    for p in packages {
        if ix.insert(&p.name, g.add_node(&p.name)).is_some() {
            return Err(AnalyzeError::DuplicatePackage(p.name.clone()));
        }
    }
    let mut edges = Vec::new();
    for p in packages {
        for r in &p.requires {
            let to = *ix
                .get(r.as_str())
                .ok_or_else(|| AnalyzeError::UnknownPackage { package: p.name.clone(), required: r.clone() })?;
            g.add_edge(ix[p.name.as_str()], to, ());
            edges.push(Edge { from: p.name.clone(), to: r.clone() });
        }
    }
    let order = match toposort(&g, None) {
        Ok(o) => o,
        Err(_) => return Err(AnalyzeError::CyclicDependency(find_cycle(&g))),
    };
    Ok(DependencyGraph {
        nodes: packages.iter().map(|p| p.name.clone()).collect(),
        edges,
        load_order: order.into_iter().rev().map(|n| g[n].to_string()).collect(),
    })
}

/// A cycle as a list of package names whose last element requires the first.
fn find_cycle(g: &DiGraph<&str, ()>) -> Vec<String> {
    for scc in tarjan_scc(g) {
        let start = scc[0];
        let self_loop = g.find_edge(start, start).is_some();
        if scc.len() == 1 && !self_loop {
            continue;
        }
        // walk inside the component until a node repeats
        let mut path = vec![start];
        let mut cur = start;
        loop {
            let next = g.neighbors(cur).find(|n| scc.contains(n)).expect("strongly connected");
            if let Some(pos) = path.iter().position(|n| *n == next) {
                return path[pos..].iter().map(|n| g[*n].to_string()).collect();
            }
            path.push(next);
            cur = next;
        }
    }
    Vec::new()
}

/// Packages grouped so that each group depends only on earlier groups.
pub fn levels(graph: &DependencyGraph) -> Vec<Vec<String>> {
    let mut depth: HashMap<&str, usize> = HashMap::new();
    for n in &graph.load_order {
        let d = graph
            .edges
            .iter()
            .filter(|e| &e.from == n)
            .map(|e| depth[e.to.as_str()] + 1)
            .max()
            .unwrap_or(0);
        depth.insert(n, d);
    }
    let mut out: Vec<Vec<String>> = Vec::new();
    for n in &graph.load_order {
        let d = depth[n.as_str()];
        if out.len() <= d {
            out.resize(d + 1, Vec::new());
        }
        out[d].push(n.clone());
    }
    out
}

//! Whole-corpus analysis in dependency order.

use std::collections::{BTreeSet, HashMap};

use proofcloud_article::{replay_path, with_large_stack, ArticleResult, ReplayOptions};
use proofcloud_kernel::{Name, Term, Type, Var, SELECT};
use rayon::prelude::*;

use crate::classify::{classify, proof_size, ClassifyOptions, LemmaInfo, LemmaTable};
use crate::error::{AnalyzeError, Result};
use crate::graph::{dependency_graph, levels};
use crate::meta::{CorpusMeta, PackageMeta};
use crate::records::{DependencyGraph, PackageStats, ProofRecord};
use crate::stats::package_stats;

#[derive(Debug, Clone)]
pub struct Analysis {
    /// Grouped by package in load order, then in export order.
    pub records: Vec<ProofRecord>,
    pub stats: Vec<PackageStats>,
    pub graph: DependencyGraph,
}

/// `!P. !x. P x ==> P (select P)` over `A`, with the standard library's
/// names for the quantifier and implication.
pub fn standard_choice_axiom() -> Term {
    let a = Type::var(Name::simple("A"));
    let pred = Type::fun(a.clone(), Type::bool());
    let forall = |ty: &Type| {
        Term::constant(Name::new(["Data", "Bool"], "!"), Type::fun(Type::fun(ty.clone(), Type::bool()), Type::bool()))
    };
    let imp = Term::constant(Name::new(["Data", "Bool"], "==>"), Type::fun_n([Type::bool(), Type::bool()], Type::bool()));
    let p = Var::new(Name::simple("P"), pred.clone());
    let x = Var::new(Name::simple("x"), a.clone());
    let select = Term::constant(Name::simple(SELECT), Type::fun(pred.clone(), a.clone()));
    let app = |f: Term, x: Term| Term::app(f, x).expect("well-typed");
    let px = app(Term::var(p.clone()), Term::var(x.clone()));
    let psel = app(Term::var(p.clone()), app(select, Term::var(p.clone())));
    let body = app(app(imp, px), psel);
    let inner = app(forall(&a), Term::abs(x, body));
    app(forall(&pred), Term::abs(p, inner))
}

impl ClassifyOptions {
    pub fn standard() -> ClassifyOptions {
        ClassifyOptions { choice: standard_choice_axiom(), known_axioms: Vec::new(), strict: false }
    }
}

/// Export names: from metadata where given, else the replay's `proof #k`.
fn export_names(meta: &PackageMeta, result: &ArticleResult) -> Vec<String> {
    result
        .exports
        .iter()
        .enumerate()
        .map(|(i, e)| meta.theorem_names.get(i).cloned().unwrap_or_else(|| e.name.clone()))
        .collect()
}

/// Records for one package, given the lemmas of everything it requires.
pub fn analyze_package(
    meta: &PackageMeta,
    result: &ArticleResult,
    imported: &LemmaTable,
    opts: &ClassifyOptions,
) -> Result<(Vec<ProofRecord>, Vec<LemmaInfo>)> {
    let mut table = imported.clone();
    let mut records = Vec::new();
    let mut own = Vec::new();
    for (e, name) in result.exports.iter().zip(export_names(meta, result)) {
        let root = e.theorem.proof();
        let c = classify(&result.trace, root, opts, &table)?;
        let lemma = LemmaInfo {
            package: meta.name.clone(),
            name: name.clone(),
            sequent: e.theorem.sequent().clone(),
            node: Some(root),
            classical: c.classical,
            axioms: c.axioms_used.clone(),
        };
        table.insert(lemma.clone());
        own.push(LemmaInfo { node: None, ..lemma });
        records.push(ProofRecord {
            theorem_name: name,
            theorem_conclusion: e.theorem.concl().to_string(),
            packagename: meta.name.clone(),
            constructive_proof: !c.classical,
            axioms: c.axioms_used,
            constructive_lemmas: c.constructive_lemmas,
            classical_lemmas: c.classical_lemmas,
            package: format!("packages/{}", meta.name),
            comments: String::new(),
            size: proof_size(&result.trace, root),
            trace_id: root.node.0,
        });
    }
    Ok((records, own))
}

/// Analyses packages in dependency order. Packages whose requirements are
/// all done run in parallel; each sees the lemmas of its transitive
/// requirements only.
pub fn analyze(packages: &[(PackageMeta, ArticleResult)], opts: &ClassifyOptions) -> Result<Analysis> {
    let metas: Vec<PackageMeta> = packages.iter().map(|(m, _)| m.clone()).collect();
    let graph = dependency_graph(&metas)?;
    let by_name: HashMap<&str, &(PackageMeta, ArticleResult)> = packages.iter().map(|p| (p.0.name.as_str(), p)).collect();
    let mut deps: HashMap<String, BTreeSet<String>> = HashMap::new();
    for n in &graph.load_order {
        let mut all = BTreeSet::new();
        for e in graph.edges.iter().filter(|e| &e.from == n) {
            all.insert(e.to.clone());
            all.extend(deps[&e.to].iter().cloned());
        }
        deps.insert(n.clone(), all);
    }

    let mut exported: HashMap<String, Vec<LemmaInfo>> = HashMap::new();
    let mut done: HashMap<String, Vec<ProofRecord>> = HashMap::new();
    for level in levels(&graph) {
        let results: Vec<Result<(String, Vec<ProofRecord>, Vec<LemmaInfo>)>> = level
            .par_iter()
            .map(|name| {
                let (meta, result) = by_name[name.as_str()];
                let mut table = LemmaTable::new();
                for d in &deps[name] {
                    for l in &exported[d] {
                        table.insert(l.clone());
                    }
                }
                let (records, own) = analyze_package(meta, result, &table, opts)?;
                Ok((name.clone(), records, own))
            })
            .collect();
        for r in results {
            let (name, records, own) = r?;
            exported.insert(name.clone(), own);
            done.insert(name, records);
        }
    }

    let mut records = Vec::new();
    let mut stats = Vec::new();
    for n in &graph.load_order {
        let recs = done.remove(n).unwrap_or_default();
        stats.push(package_stats(&recs, &by_name[n.as_str()].0));
        records.extend(recs);
    }
    Ok(Analysis { records, stats, graph })
}

/// Replays every package article named in `meta`. Packages without an
/// article get an empty result.
pub fn load_corpus(meta: &CorpusMeta, opts: &ReplayOptions) -> Result<Vec<(PackageMeta, ArticleResult)>> {
    meta.packages
        .iter()
        .map(|p| {
            let result = match &p.article {
                Some(rel) => {
                    let path = meta.resolve(rel);
                    with_large_stack(|| replay_path(&path, opts))
                        .map_err(|e| AnalyzeError::Replay { package: p.name.clone(), message: e.to_string() })?
                }
                None => empty_result(),
            };
            Ok((p.clone(), result))
        })
        .collect()
}

fn empty_result() -> ArticleResult {
    proofcloud_article::replay("", &ReplayOptions::default()).expect("empty article replays")
}

/// Classification options for a corpus: the choice axiom is the first
/// export of the metadata's choice article when there is one.
pub fn corpus_options(meta: &CorpusMeta) -> Result<ClassifyOptions> {
    let mut opts = ClassifyOptions::standard();
    if let Some(rel) = &meta.choice_axiom {
        let r = with_large_stack(|| replay_path(&meta.resolve(rel), &ReplayOptions::default()))
            .map_err(|e| AnalyzeError::Replay { package: rel.clone(), message: e.to_string() })?;
        let e = r.exports.first().ok_or_else(|| AnalyzeError::Meta(format!("{rel}: no export")))?;
        opts.choice = e.theorem.concl().clone();
    }
    Ok(opts)
}

//! The pipeline stages. Each returns diagnostics instead of printing them.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use proofcloud_analyzer::{
    analyze, corpus_options, corpus_stats, dependency_graph, load_corpus, Analysis, CorpusMeta, CorpusStats,
    DependencyGraph, PackageMeta, PackageStats, ProofRecord, VerificationRecord,
};
use proofcloud_article::{lower, replay_path, with_large_stack, ArticleResult, ReplayOptions};
use proofcloud_dedukti::{emit_module, translate_article, Symbols, PRELUDE_NAME, PRELUDE_TEXT};
use proofcloud_index::{export_site, Manifest};
use proofcloud_lp::{parse_module, Checker, LpError, Module};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::config::{Settings, VersionMode};
use crate::diag::{Diag, Failure};

pub fn stem(p: &Path) -> String {
    let s = p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let s = s.strip_suffix(".gz").unwrap_or(&s);
    s.strip_suffix(".art").unwrap_or(s).to_string()
}

fn write(path: &Path, text: &str, stage: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Failure::domain(Diag::new(stage, Some(dir), None, e.to_string())))?;
    }
    std::fs::write(path, text).map_err(|e| Failure::domain(Diag::new(stage, Some(path), None, e.to_string())))
}

/// Replays every article, in parallel, keeping input order.
pub fn replay_all(paths: &[PathBuf], mode: VersionMode) -> Result<Vec<ArticleResult>, Failure> {
    let opts = ReplayOptions { force_version: mode.forced(), ..ReplayOptions::default() };
    let results: Vec<_> = paths.par_iter().map(|p| with_large_stack(|| replay_path(p, &opts))).collect();
    let mut out = Vec::new();
    let mut diags = Vec::new();
    for (p, r) in paths.iter().zip(results) {
        match r {
            Ok(r) => out.push(r),
            Err(e) => diags.push(Diag::new("check", Some(p), Some(e.line), e.kind.to_string())),
        }
    }
    if diags.is_empty() {
        Ok(out)
    } else {
        Err(Failure::Domain(diags))
    }
}

/// Writes the prelude and one module per article into `out`, each module
/// importing the ones before it. Returns the written files.
pub fn translate(
    named: &[(String, PathBuf, ArticleResult)],
    mode: VersionMode,
    out: &Path,
) -> Result<Vec<PathBuf>, Failure> {
    let mut imports = Symbols::new();
    let mut ts = Vec::new();
    for (name, path, r) in named {
        let fail = |m: String| Failure::domain(Diag::new("translate", Some(path), None, m));
        let lowered = match mode.forced() {
            Some(v) if v != r.version => Some(lower(r, v).map_err(|e| fail(e.to_string()))?),
            _ => None,
        };
        let t = translate_article(lowered.as_ref().unwrap_or(r), name, &imports).map_err(|e| fail(e.to_string()))?;
        imports.import(&t.module.name, &t.symbols);
        ts.push(t);
    }
    let mut seen = BTreeSet::new();
    let mut files = vec![out.join(format!("{PRELUDE_NAME}.dk"))];
    write(&files[0], PRELUDE_TEXT, "translate")?;
    for ((_, path, _), t) in named.iter().zip(&ts) {
        if t.module.name == PRELUDE_NAME || !seen.insert(t.module.name.clone()) {
            return Err(Failure::Usage(Diag::new(
                "translate",
                Some(path),
                None,
                format!("module name `{}` is already taken", t.module.name),
            )));
        }
        let f = out.join(format!("{}.dk", t.module.name));
        write(&f, &emit_module(&t.module), "translate")?;
        files.push(f);
    }
    Ok(files)
}

/// Line of the declaration named `local` in module text, 1-based.
pub fn decl_line(text: &str, local: &str) -> Option<usize> {
    text.lines().position(|l| {
        let mut words = l.split_whitespace().skip_while(|w| matches!(*w, "def" | "thm" | "injective"));
        words.next().map(|w| w.trim_end_matches(':') == local).unwrap_or(false)
    })
    .map(|i| i + 1)
}

pub struct VerifiedModule {
    pub name: String,
    pub file: PathBuf,
    pub decls: usize,
    pub failed: usize,
}

/// Checks every `.dk` file in `dir` against one signature, dependencies first.
pub fn verify(dir: &Path) -> Result<Vec<VerifiedModule>, Failure> {
    let entries = std::fs::read_dir(dir).map_err(|e| Failure::Usage(Diag::new("verify", Some(dir), None, e.to_string())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "dk"))
        .collect();
    paths.sort();
    let mut diags = Vec::new();
    let mut modules: BTreeMap<String, (PathBuf, String, Module)> = BTreeMap::new();
    for p in paths {
        let text = std::fs::read_to_string(&p).map_err(|e| Failure::domain(Diag::new("verify", Some(&p), None, e.to_string())))?;
        match parse_module(&text) {
            Ok(m) => {
                if let Some((other, _, _)) = modules.get(&m.name) {
                    diags.push(Diag::new("verify", Some(&p), None, format!("module `{}` is also in {}", m.name, other.display())));
                } else {
                    modules.insert(m.name.clone(), (p, text, m));
                }
            }
            Err(LpError::Syntax { line, col, message }) => {
                diags.push(Diag::new("verify", Some(&p), Some(line), format!("syntax error at column {col}: {message}")))
            }
            Err(e) => diags.push(Diag::new("verify", Some(&p), None, e.to_string())),
        }
    }
    let mut order = Vec::new();
    let mut state: BTreeMap<&str, bool> = BTreeMap::new();
    fn visit<'a>(
        n: &'a str,
        modules: &'a BTreeMap<String, (PathBuf, String, Module)>,
        state: &mut BTreeMap<&'a str, bool>,
        order: &mut Vec<&'a str>,
    ) -> Result<(), String> {
        match state.get(n) {
            Some(true) => return Ok(()),
            Some(false) => return Err(n.to_string()),
            None => {}
        }
        state.insert(n, false);
        for r in &modules[n].2.requires {
            if modules.contains_key(r) {
                visit(r.as_str(), modules, state, order)?;
            }
        }
        state.insert(n, true);
        order.push(n);
        Ok(())
    }
    for n in modules.keys() {
        if let Err(c) = visit(n, &modules, &mut state, &mut order) {
            let (p, _, _) = &modules[&c];
            return Err(Failure::domain(Diag::new("verify", Some(p), None, format!("module `{c}` requires itself"))));
        }
    }
    let mut checker = Checker::new();
    let mut out = Vec::new();
    for n in order {
        let (p, text, m) = &modules[n];
        let report = checker.check_module(m);
        let mut failed = 0;
        for d in report.failures() {
            failed += 1;
            let local = d.name.strip_prefix(&format!("{n}.")).unwrap_or(&d.name);
            let msg = d.error.clone().unwrap_or_else(|| "failed".into());
            diags.push(Diag::new("verify", Some(p), decl_line(text, local), format!("{}: {msg}", d.name)));
        }
        out.push(VerifiedModule { name: n.to_string(), file: p.clone(), decls: report.decls.len(), failed });
    }
    if diags.is_empty() {
        Ok(out)
    } else {
        Err(Failure::Domain(diags))
    }
}

/// Everything `analyze` writes.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct AnalysisOutput {
    pub records: Vec<ProofRecord>,
    pub stats: Vec<PackageStats>,
    pub graph: DependencyGraph,
    pub verification: Vec<VerificationRecord>,
    pub corpus: CorpusStats,
}

pub const ANALYSIS_FILES: [&str; 5] = ["records.json", "stats.json", "graph.json", "verification.json", "corpus.json"];

/// Points packages at the given articles, matched by file name. Articles
/// the metadata does not mention become packages of their own.
pub fn override_articles(meta: &mut CorpusMeta, articles: &[PathBuf]) {
    for a in articles {
        let file = a.file_name().map(|s| s.to_os_string());
        let abs = std::path::absolute(a).unwrap_or_else(|_| a.clone());
        let slot = meta.packages.iter_mut().find(|p| p.article.as_ref().and_then(|r| Path::new(r).file_name().map(|s| s.to_os_string())) == file);
        match slot {
            Some(p) => p.article = Some(abs.display().to_string()),
            None => {
                let mut p = PackageMeta::named(stem(a));
                p.article = Some(abs.display().to_string());
                meta.packages.push(p);
            }
        }
    }
}

pub fn analyze_corpus(meta: &CorpusMeta, settings: &Settings) -> Result<AnalysisOutput, Failure> {
    let fail = |e: proofcloud_analyzer::AnalyzeError| Failure::domain(Diag::new("analyze", None, None, e.to_string()));
    let ropts = ReplayOptions { force_version: settings.version_mode.forced(), ..ReplayOptions::default() };
    let pkgs = load_corpus(meta, &ropts).map_err(fail)?;
    let mut copts = corpus_options(meta).map_err(fail)?;
    copts.strict = settings.strict;
    let Analysis { records, stats, graph } = analyze(&pkgs, &copts).map_err(fail)?;
    let v = &meta.verification;
    let verification = stats
        .iter()
        .map(|s| VerificationRecord {
            package_name: s.package_name.clone(),
            software_engineer_for_verification: v.software_engineer_for_verification.clone(),
            software_for_verification: v.software_for_verification.clone(),
            translation_time: 0.0,
            verification_time: 0.0,
            pc_specification: v.pc_specification.clone(),
            comments: v.comments.clone(),
        })
        .collect();
    let corpus = corpus_stats(&stats);
    Ok(AnalysisOutput { records, stats, graph, verification, corpus })
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

impl AnalysisOutput {
    pub fn to_json(&self) -> String {
        pretty(self)
    }

    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>, Failure> {
        let texts = [
            pretty(&self.records),
            pretty(&self.stats),
            pretty(&self.graph),
            pretty(&self.verification),
            pretty(&self.corpus),
        ];
        let mut out = Vec::new();
        for (name, text) in ANALYSIS_FILES.iter().zip(texts) {
            let p = dir.join(name);
            write(&p, &text, "analyze")?;
            out.push(p);
        }
        Ok(out)
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::domain(Diag::new("index", Some(path), None, e.to_string())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::domain(Diag::new("index", Some(path), Some(e.line()), e.to_string())))
}

/// Builds the site from an `analyze` output directory.
pub fn index(input: &Path, out: &Path) -> Result<Manifest, Failure> {
    let records: Vec<ProofRecord> = read_json(&input.join("records.json"))?;
    let stats: Vec<PackageStats> = read_json(&input.join("stats.json"))?;
    let graph: DependencyGraph = read_json(&input.join("graph.json"))?;
    let vpath = input.join("verification.json");
    let verification: Vec<VerificationRecord> = if vpath.exists() { read_json(&vpath)? } else { Vec::new() };
    export_site(&records, &stats, &verification, &graph, out)
        .map_err(|e| Failure::domain(Diag::new("index", Some(out), None, e.to_string())))
}

/// Packages in dependency order, for translation.
pub fn load_order(meta: &CorpusMeta) -> Result<Vec<PackageMeta>, Failure> {
    let g = dependency_graph(&meta.packages)
        .map_err(|e| Failure::domain(Diag::new("analyze", None, None, e.to_string())))?;
    Ok(g.load_order.iter().filter_map(|n| meta.package(n).cloned()).collect())
}

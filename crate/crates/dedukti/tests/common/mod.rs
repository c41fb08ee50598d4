#![allow(dead_code)]

use std::path::PathBuf;

use proofcloud_article::{replay_path, ArticleResult, ReplayOptions};
use proofcloud_dedukti::{prelude_module, translate_article, Symbols, Translation};
use proofcloud_lp::{parse_module, CheckReport, Checker, Module};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/articles")
}

/// Every fixture article, replayed, sorted by file name.
pub fn fixtures() -> Vec<(String, ArticleResult)> {
    let mut paths: Vec<_> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "art"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let r = replay_path(&p, &ReplayOptions::default()).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, r)
        })
        .collect()
}

pub fn translate(name: &str, r: &ArticleResult) -> Translation {
    translate_article(r, name, &Symbols::new()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn checker() -> Checker {
    let mut c = Checker::new();
    assert!(c.check_module(&prelude_module()).passed());
    c
}

/// Checks `m` through its printed text, as a file on disk would be.
pub fn check_text(m: &Module) -> CheckReport {
    let text = proofcloud_dedukti::emit_module(m);
    let parsed = parse_module(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    checker().check_module(&parsed)
}

/// Wraps a kernel session as a replay result with the given exports.
pub fn from_kernel(
    k: proofcloud_kernel::Kernel,
    exports: Vec<(&str, proofcloud_kernel::Theorem)>,
) -> ArticleResult {
    let version = k.version();
    let assumptions = k.assumptions().to_vec();
    let signature = k.signature().clone();
    ArticleResult {
        version,
        exports: exports
            .into_iter()
            .map(|(n, th)| proofcloud_article::Export { name: n.to_string(), theorem: th })
            .collect(),
        assumptions,
        trace: k.into_trace(),
        signature,
        command_count: Default::default(),
        warnings: Vec::new(),
    }
}

#![allow(dead_code)]

use std::path::PathBuf;

use proofcloud_analyzer::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const PACKAGES: [&str; 6] = ["base", "stream", "natural-divides", "natural-prime", "probability", "modular"];
pub const PROOFS: usize = 1687;

const WORDS: &[&str] = &[
    "add", "mult", "suc", "zero", "prime", "divides", "stream", "take", "drop", "append", "reverse", "length", "map",
    "filter", "fold", "random", "bit", "mod", "exp", "le", "lt", "min", "max", "even", "odd", "sum", "list", "set",
    "finite", "inj", "surj", "comm", "assoc", "cancel", "mono", "distrib", "gcd", "factor", "head", "tail", "nth",
];

const SYMBOLS: &[&str] = &["=", "==>", "!", "?", "\\", "/\\", "\\/", "~", "<=", "<", "+", "*"];

/// A deterministic corpus of 1687 proof records in six packages.
pub fn synthetic() -> (Vec<ProofRecord>, Vec<PackageStats>, DependencyGraph) {
    let mut rng = StdRng::seed_from_u64(2015);
    let mut records = Vec::new();
    for i in 0..PROOFS {
        let pkg = PACKAGES[i % PACKAGES.len()];
        let n = rng.gen_range(1..4);
        let mut name: Vec<&str> = (0..n).map(|_| *WORDS.choose(&mut rng).unwrap()).collect();
        if pkg == "stream" && rng.gen_bool(0.3) {
            name.insert(0, "stream");
        }
        let theorem_name = format!("{}-{i}", name.join("-"));
        let concl: Vec<String> = (0..rng.gen_range(3..8))
            .map(|_| {
                if rng.gen_bool(0.3) {
                    SYMBOLS.choose(&mut rng).unwrap().to_string()
                } else {
                    format!("Number.Natural.{}", WORDS.choose(&mut rng).unwrap())
                }
            })
            .collect();
        let classical = rng.gen_bool(0.15);
        records.push(ProofRecord {
            theorem_name,
            theorem_conclusion: concl.join(" "),
            packagename: pkg.to_string(),
            constructive_proof: !classical,
            axioms: Vec::new(),
            constructive_lemmas: Vec::new(),
            classical_lemmas: Vec::new(),
            package: format!("packages/{pkg}"),
            comments: String::new(),
            size: rng.gen_range(1..400),
            trace_id: i as u32,
        });
    }
    // a few cross-package lemma references
    for i in (7..PROOFS).step_by(97) {
        let lemma = &records[i - 7];
        let id = format!("{}/{}", lemma.packagename, lemma.theorem_name);
        if lemma.classical() {
            records[i].classical_lemmas.push(id);
            records[i].constructive_proof = false;
        } else {
            records[i].constructive_lemmas.push(id);
        }
    }
    let metas: Vec<PackageMeta> = PACKAGES
        .iter()
        .map(|p| PackageMeta {
            requires: match *p {
                "base" => vec![],
                "natural-prime" => vec!["natural-divides".into(), "stream".into()],
                "probability" => vec!["stream".into()],
                "modular" => vec!["natural-divides".into()],
                _ => vec!["base".into()],
            },
            author: "fixture author".into(),
            date_retrieved: "2015-07-01".into(),
            ..PackageMeta::named(*p)
        })
        .collect();
    let graph = dependency_graph(&metas).unwrap();
    let stats = metas
        .iter()
        .map(|m| {
            let mine: Vec<ProofRecord> = records.iter().filter(|r| r.packagename == m.name).cloned().collect();
            package_stats(&mine, m)
        })
        .collect();
    (records, stats, graph)
}

pub fn packages_meta() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/packages/meta.json")
}

/// The six-package fixture corpus, analysed.
pub fn fixture_analysis() -> Analysis {
    let meta = CorpusMeta::load(&packages_meta()).unwrap();
    let pkgs = load_corpus(&meta, &Default::default()).unwrap();
    analyze(&pkgs, &corpus_options(&meta).unwrap()).unwrap()
}

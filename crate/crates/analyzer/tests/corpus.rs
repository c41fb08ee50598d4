mod common;

use std::collections::BTreeSet;

use proofcloud_analyzer::*;

/// The checked-in corpus is what the generator produces. Set
/// `PROOFCLOUD_REGEN=1` to rewrite it.
#[test]
fn fixture_files_match_generator() {
    let g = common::generate();
    let dir = common::packages_dir();
    let meta_text = serde_json::to_string_pretty(&g.meta).unwrap() + "\n";
    if std::env::var_os("PROOFCLOUD_REGEN").is_some() {
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("meta.json"), &meta_text).unwrap();
        for (f, t) in &g.files {
            std::fs::write(dir.join(f), t).unwrap();
        }
    }
    assert_eq!(std::fs::read_to_string(dir.join("meta.json")).unwrap(), meta_text);
    for (f, t) in &g.files {
        assert_eq!(&std::fs::read_to_string(dir.join(f)).unwrap(), t, "{f}");
    }
}

#[test]
fn six_package_counts() {
    let (meta, pkgs) = common::load();
    let opts = corpus_options(&meta).unwrap();
    let a = analyze(&pkgs, &opts).unwrap();
    let total = corpus_stats(&a.stats);
    assert_eq!(total.number_of_packages, 6);
    assert_eq!(total.total_number_of_proofs, 16);
    assert_eq!(total.number_of_classical_proofs, 6);
    assert_eq!(total.percentage_of_constructive_proofs, 100.0 * 10.0 / 16.0);

    // recount from the records themselves
    assert_eq!(a.records.len(), 16);
    assert_eq!(a.records.iter().filter(|r| r.classical()).count(), 6);
    for s in &a.stats {
        let mine: Vec<_> = a.records.iter().filter(|r| r.packagename == s.package_name).collect();
        assert_eq!(s.total_number_of_proofs, mine.len());
        assert_eq!(s.number_of_classical_proofs, mine.iter().filter(|r| r.classical()).count());
    }

    let classical: BTreeSet<String> =
        a.records.iter().filter(|r| r.classical()).map(|r| format!("{}/{}", r.packagename, r.theorem_name)).collect();
    let expected: BTreeSet<String> = common::generate().classical.iter().map(|s| s.to_string()).collect();
    assert_eq!(classical, expected);
}

#[test]
fn transitive_cases_name_their_lemmas() {
    let (meta, pkgs) = common::load();
    let a = analyze(&pkgs, &corpus_options(&meta).unwrap()).unwrap();
    let rec = |p: &str, n: &str| a.records.iter().find(|r| r.packagename == p && r.theorem_name == n).unwrap();
    let choice = corpus_options(&meta).unwrap().choice.to_string();

    let s1 = rec("sets", "select-spec-app");
    assert!(s1.classical());
    assert_eq!(s1.classical_lemmas, ["logic/select-spec"]);
    assert_eq!(s1.axioms, [choice.clone()]);

    let l1 = rec("lists", "select-spec-app-app");
    assert_eq!(l1.classical_lemmas, ["sets/select-spec-app"]);
    assert_eq!(l1.axioms, [choice.clone()]);

    let o3 = rec("order", "choice-direct-app");
    assert_eq!(o3.classical_lemmas, ["arith/choice-direct"]);

    let a1 = rec("arith", "choice-direct");
    assert!(a1.classical() && a1.classical_lemmas.is_empty());
    assert_eq!(a1.axioms, [choice.clone()]);

    let m1 = rec("misc", "choice-ind");
    assert!(m1.classical());
    assert_eq!(m1.axioms, [choice]);

    let s2 = rec("sets", "refl-bool-app");
    assert!(!s2.classical());
    assert_eq!(s2.constructive_lemmas, ["logic/refl-bool"]);
    assert!(s2.axioms.is_empty());

    let t3 = rec("logic", "beta-bool");
    assert!(!t3.classical() && t3.constructive_lemmas.is_empty() && t3.classical_lemmas.is_empty());
}

#[test]
fn records_satisfy_their_invariants() {
    let (meta, pkgs) = common::load();
    let opts = corpus_options(&meta).unwrap();
    let choice = opts.choice.to_string();
    let a = analyze(&pkgs, &opts).unwrap();
    for r in &a.records {
        assert_eq!(r.classical(), r.axioms.contains(&choice) || !r.classical_lemmas.is_empty(), "{}", r.theorem_name);
        assert!(r.size >= 1);
    }
}

#[test]
fn analysis_is_deterministic() {
    let (meta, pkgs) = common::load();
    let opts = corpus_options(&meta).unwrap();
    let a = serde_json::to_string(&analyze(&pkgs, &opts).unwrap().records).unwrap();
    for _ in 0..5 {
        assert_eq!(serde_json::to_string(&analyze(&pkgs, &opts).unwrap().records).unwrap(), a);
    }
}

#[test]
fn strict_mode_rejects_lemmas_without_their_package() {
    let (meta, pkgs) = common::load();
    let mut opts = corpus_options(&meta).unwrap();
    opts.strict = true;
    assert!(analyze(&pkgs, &opts).is_ok());
    let sets = pkgs.iter().find(|(m, _)| m.name == "sets").unwrap();
    let err = analyze_package(&sets.0, &sets.1, &LemmaTable::new(), &opts).unwrap_err();
    assert!(matches!(err, AnalyzeError::UnknownLemma(_)));
}

#[test]
fn built_in_pattern_matches_the_shipped_choice_axiom() {
    let (meta, _) = common::load();
    let shipped = corpus_options(&meta).unwrap().choice;
    assert!(shipped.alpha_eq(&standard_choice_axiom()));
}

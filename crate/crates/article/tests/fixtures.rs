mod common;

use std::collections::BTreeSet;
use std::io::Write;

use common::*;
use proofcloud_article::{
    emit_article, parse_line, read_article, replay, replay_path, Command, Line, Machine, Opcode, ReplayOptions,
};
use proofcloud_kernel::KernelVersion;

fn opts() -> ReplayOptions {
    ReplayOptions::default()
}

/// Exported sequents and assumption counts, worked out by hand from each
/// fixture's command listing.
const EXPECTED: &[(&str, u32, usize, &[&str])] = &[
    ("abs_app_thm.art", 5, 0, &["|- (\\y : A. f y) = (\\y : A. f y)"]),
    ("assume_eqmp.art", 5, 0, &["p |- p"]),
    ("axiom_two_exports.art", 5, 1, &["|- p = q", "p |- q"]),
    ("beta.art", 5, 0, &["|- (\\x : A. x) y = y"]),
    ("capture.art", 5, 1, &["|- (\\y' : A. y) z = y"]),
    ("deduct_antisym.art", 5, 2, &["|- p = q", "|- p = p"]),
    ("define_const.art", 5, 0, &["|- true-ish = ((\\p : bool. p) = (\\p : bool. p))"]),
    (
        "define_const_list.art",
        6,
        0,
        &["|- (c1 = ((\\p : bool. p) = (\\p : bool. p))) = (c2 = (\\q : bool. q))"],
    ),
    (
        "define_type_v5.art",
        5,
        0,
        &[
            "|- (((\\p : bool. p) = (\\p : bool. p)) = r) = (dest_unit (mk_unit r) = r)",
            "|- mk_unit (dest_unit a) = a",
        ],
    ),
    (
        "define_type_v6.art",
        6,
        0,
        &[
            "|- (\\r : bool. dest_unit (mk_unit r) = r) = (\\r : bool. (\\x : bool. x) r)",
            "|- (\\a : unit. mk_unit (dest_unit a)) = (\\a : unit. a)",
        ],
    ),
    (
        "dictionary.art",
        5,
        0,
        &[
            "|- (\\p : bool. \\q : bool. (p = q) = (q = p)) = (\\p : bool. \\q : bool. (p = q) = (q = p))",
            "|- (\\w : A. \\p : bool. \\q : bool. (p = q) = (q = p)) = (\\w : A. \\p : bool. \\q : bool. (p = q) = (q = p))",
        ],
    ),
    ("empty.art", 5, 0, &[]),
    ("eq_sym_eq.art", 6, 0, &["|- (x = y) = (y = x)", "|- (x = y) = (x = y)"]),
    ("extensionality.art", 5, 1, &["|- (\\x : A. (\\x : A. x = x) x) = (\\x : A. x = x)"]),
    ("hdtl_pragma.art", 6, 0, &["|- y = y"]),
    ("polymorphic_const.art", 5, 0, &["|- Data.Function.id x = Data.Function.id x"]),
    ("prove_hyp.art", 6, 3, &["r |- q = q"]),
    ("prove_hyp_v5.art", 5, 2, &["r |- q"]),
    ("refl.art", 5, 0, &["|- x = x"]),
    ("subst.art", 5, 0, &["|- (\\y : bool. y) = (\\y : bool. y)"]),
    ("sym_trans.art", 6, 2, &["|- b = a", "|- a = c"]),
    ("sym_v5.art", 5, 1, &["|- q = p"]),
    ("trans_v5.art", 5, 3, &["|- a = d"]),
    ("type_ops.art", 5, 0, &["|- (\\l : (list bool). l) = (\\l : (list bool). l)"]),
];

#[test]
fn fixtures_replay_to_hand_computed_sequents() {
    let paths = fixture_paths();
    assert!(paths.len() >= 15);
    assert_eq!(paths.len(), EXPECTED.len(), "every fixture has an expectation");
    for (file, version, assumptions, exports) in EXPECTED {
        let r = replay(&fixture(file), &opts()).unwrap_or_else(|e| panic!("{file}: {e}"));
        assert_eq!(r.version.number(), *version, "{file}");
        assert_eq!(r.assumptions.len(), *assumptions, "{file}");
        let got: Vec<String> = r.exports.iter().map(|e| e.theorem.sequent().to_string()).collect();
        assert_eq!(got, *exports, "{file}");
    }
}

#[test]
fn fixtures_cover_every_opcode() {
    let mut seen = BTreeSet::new();
    for p in fixture_paths() {
        for (i, l) in std::fs::read_to_string(&p).unwrap().lines().enumerate() {
            if let Line::Command(Command::Op(op)) = parse_line(l, i + 1).unwrap() {
                seen.insert(op);
            }
        }
    }
    let missing: Vec<&str> = Opcode::ALL.iter().filter(|o| !seen.contains(o)).map(|o| o.word()).collect();
    assert!(missing.is_empty(), "opcodes not exercised: {missing:?}");
}

#[test]
fn command_counts_match_line_tally() {
    for p in fixture_paths() {
        let text = std::fs::read_to_string(&p).unwrap();
        let lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')).count();
        let r = replay(&text, &opts()).unwrap();
        assert_eq!(r.command_total(), lines, "{}", p.display());
    }
    // one axiom and two exports, tallied by hand
    let r = replay(&fixture("axiom_two_exports.art"), &opts()).unwrap();
    assert_eq!(r.command_count["axiom"], 1);
    assert_eq!(r.command_count["thm"], 2);
    assert_eq!(r.exports.len(), 2);
}

#[test]
fn stack_depth_follows_arity_table() {
    for p in fixture_paths() {
        let text = std::fs::read_to_string(&p).unwrap();
        let mut m = Machine::new(&opts());
        for (i, l) in text.lines().enumerate() {
            let Line::Command(cmd) = parse_line(l, i + 1).unwrap() else { continue };
            let before = m.stack().len() as isize;
            m.step(&cmd, i + 1).unwrap();
            let delta = m.stack().len() as isize - before;
            let want = match &cmd {
                Command::Op(op) => {
                    let (pops, pushes) = op.arity();
                    pushes as isize - pops as isize
                }
                _ => 1,
            };
            assert_eq!(delta, want, "{}:{} `{cmd}`", p.display(), i + 1);
        }
    }
}

#[test]
fn refl_fixture_trace_node() {
    let r = replay(&fixture("refl.art"), &opts()).unwrap();
    assert_eq!(r.trace.len(), 1);
    let node = &r.trace.nodes()[0];
    assert_eq!(node.rule.name(), "refl");
    assert!(node.premises.is_empty());
}

#[test]
fn round_trip_preserves_exports_and_is_a_fixpoint() {
    for p in fixture_paths() {
        let r = replay(&std::fs::read_to_string(&p).unwrap(), &opts()).unwrap();
        for v in [KernelVersion::V5, KernelVersion::V6] {
            let e1 = emit_article(&r, v).unwrap();
            let r2 = replay(&e1, &opts()).unwrap_or_else(|e| panic!("{} v{}: {e}\n{e1}", p.display(), v.number()));
            assert!(r2.version == v || !e1.contains("version"));
            assert_eq!(r2.exports.len(), r.exports.len(), "{}", p.display());
            for (a, b) in r.exports.iter().zip(&r2.exports) {
                assert!(a.theorem.sequent().alpha_eq(b.theorem.sequent()), "{}", p.display());
            }
            assert_eq!(r2.assumptions.len(), r.assumptions.len());
            let e2 = emit_article(&r2, v).unwrap();
            assert_eq!(e1, e2, "{} v{} not a fixpoint", p.display(), v.number());
        }
    }
}

#[test]
fn version_five_output_has_no_v6_commands() {
    for p in fixture_paths() {
        let r = replay_path(&p, &opts()).unwrap();
        let text = emit_article(&r, KernelVersion::V5).unwrap();
        for l in text.lines() {
            if let Ok(op) = l.parse::<Opcode>() {
                assert!(!op.is_v6_only(), "{}: `{op}` at version 5", p.display());
            }
        }
    }
    let r = replay(&fixture("sym_trans.art"), &opts()).unwrap();
    let v6 = emit_article(&r, KernelVersion::V6).unwrap();
    assert!(v6.lines().any(|l| l == "sym"));
}

fn gzip_len(s: &str) -> usize {
    let mut enc = flate2::write::GzEncoder::new(Vec::new(), flate2::Compression::default());
    enc.write_all(s.as_bytes()).unwrap();
    enc.finish().unwrap().len()
}

#[test]
fn version_six_output_is_not_larger_on_the_corpus() {
    let (mut v5, mut v6) = (0, 0);
    for p in fixture_paths() {
        let r = replay_path(&p, &opts()).unwrap();
        let a = emit_article(&r, KernelVersion::V5).unwrap();
        let b = emit_article(&r, KernelVersion::V6).unwrap();
        v5 += gzip_len(&a);
        v6 += gzip_len(&b);
        if r.trace.nodes().iter().any(|n| n.rule.is_v6_only()) {
            assert!(b.len() < a.len(), "{}", p.display());
        }
    }
    assert!(v6 <= v5, "gzip v6 {v6} > v5 {v5}");
}

#[test]
fn replay_is_deterministic() {
    for p in fixture_paths() {
        let text = std::fs::read_to_string(&p).unwrap();
        let a = replay(&text, &opts()).unwrap();
        let b = replay(&text, &opts()).unwrap();
        assert_eq!(a.trace.len(), b.trace.len());
        for (x, y) in a.trace.nodes().iter().zip(b.trace.nodes()) {
            assert_eq!(x.rule, y.rule);
            assert_eq!(x.premises, y.premises);
            assert_eq!(x.outputs.len(), y.outputs.len());
            assert!(x.outputs.iter().zip(&y.outputs).all(|(s, t)| s == t));
        }
        assert_eq!(a.command_count, b.command_count);
    }
}

#[test]
fn gzipped_articles_are_read_transparently() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sym_trans.art.gz");
    let text = fixture("sym_trans.art");
    let mut enc = flate2::write::GzEncoder::new(std::fs::File::create(&path).unwrap(), flate2::Compression::best());
    enc.write_all(text.as_bytes()).unwrap();
    enc.finish().unwrap();
    assert_eq!(read_article(&path).unwrap(), text);
    assert_eq!(replay_path(&path, &opts()).unwrap().exports.len(), 2);
}

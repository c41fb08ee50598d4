//! Checker properties over the translated fixture corpus.

mod common;

use common::*;
use proofcloud_dedukti::emit_module;
use proofcloud_lp::{parse_module, qualify, Decl, Term};

/// True if `t` has no de Bruijn index escaping `depth` binders.
fn closed(t: &Term, depth: u32) -> bool {
    match t {
        Term::Bound(i) => *i < depth,
        Term::App(f, x) => closed(f, depth) && closed(x, depth),
        Term::Lam(_, a, b) | Term::Pi(_, a, b) => closed(a, depth) && closed(b, depth + 1),
        _ => true,
    }
}

fn closed_subterms<'t>(t: &'t Term, out: &mut Vec<&'t Term>) {
    if closed(t, 0) {
        out.push(t);
    }
    match t {
        Term::App(f, x) => {
            closed_subterms(f, out);
            closed_subterms(x, out);
        }
        Term::Lam(_, a, b) | Term::Pi(_, a, b) => {
            closed_subterms(a, out);
            closed_subterms(b, out);
        }
        _ => {}
    }
}

#[test]
fn weak_head_reduction_preserves_types() {
    let mut checked = 0;
    let mut redexes = 0;
    for (name, r) in fixtures() {
        let m = parse_module(&emit_module(&translate(&name, &r).module)).unwrap();
        let mut c = checker();
        assert!(c.check_module(&m).passed());
        for d in &m.decls {
            let (ty, body) = match d {
                Decl::Def { ty, body, .. } => (ty, Some(body)),
                Decl::Const { ty, .. } => (ty, None),
                Decl::Rule { .. } => continue,
            };
            let mut subs = Vec::new();
            closed_subterms(ty, &mut subs);
            if let Some(b) = body {
                closed_subterms(b, &mut subs);
            }
            for s in subs {
                let s = qualify(s, &m.name);
                let Ok(t1) = c.infer_closed(&s) else { continue };
                let w = c.whnf(&s).unwrap();
                if w != s {
                    redexes += 1;
                }
                let t2 = c.infer_closed(&w).unwrap_or_else(|e| panic!("{name}: {e}"));
                assert!(c.convertible(&t1, &t2).unwrap(), "{name}: {s} : {t1} reduced to {w} : {t2}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000, "{checked}");
    assert!(redexes > 20, "{redexes}");
}

#[test]
fn checking_is_deterministic() {
    for (name, r) in fixtures() {
        let m = translate(&name, &r).module;
        let a = check_text(&m);
        let b = check_text(&m);
        let strip = |rep: &proofcloud_lp::CheckReport| {
            rep.decls.iter().map(|d| (d.name.clone(), d.ok, d.error.clone())).collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b), "{name}");
    }
}

#[test]
fn checking_does_not_depend_on_declaration_names() {
    for (name, r) in fixtures() {
        let m = translate(&name, &r).module;
        let text = emit_module(&m);
        let mut renamed = text.clone();
        for d in &m.decls {
            if !matches!(d, Decl::Rule { .. }) {
                renamed = rename_ident(&renamed, d.name(), &format!("zz_{}", d.name()));
            }
        }
        let a = checker().check_module(&parse_module(&text).unwrap());
        let b = checker().check_module(&parse_module(&renamed).unwrap());
        assert!(a.passed() && b.passed(), "{name}: {:?}\n{renamed}", b.failures().collect::<Vec<_>>());
        assert_eq!(a.decls.len(), b.decls.len());
    }
}

/// Replaces whole-identifier occurrences of `from`.
fn rename_ident(text: &str, from: &str, to: &str) -> String {
    let is_id = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '.';
    let mut out = String::new();
    let mut cur = String::new();
    for ch in text.chars().chain(std::iter::once('\n')) {
        if is_id(ch) {
            cur.push(ch);
        } else {
            let word = cur.trim_end_matches('.');
            out.push_str(if word == from { to } else { word });
            out.push_str(&cur[word.len()..]);
            cur.clear();
            out.push(ch);
        }
    }
    out.pop();
    out
}

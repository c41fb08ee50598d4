//! Dedukti concrete syntax.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::sync::Arc;

use crate::syntax::{Decl, Module};
use crate::term::Term;

const KEYWORDS: &[&str] = &["def", "thm", "Type", "_"];

struct Printer {
    out: String,
    scope: Vec<Arc<str>>,
}

impl Printer {
    fn pick(&self, hint: &str, body: &Term) -> Arc<str> {
        let mut consts = BTreeSet::new();
        body.consts(&mut consts);
        let base: String = hint.chars().filter(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
        let base = if base.is_empty() || base == "_" || base.starts_with(|c: char| c.is_ascii_digit()) {
            format!("x{base}")
        } else {
            base
        };
        let taken = |n: &str| {
            KEYWORDS.contains(&n) || self.scope.iter().any(|s| &**s == n) || consts.iter().any(|c| &**c == n)
        };
        let mut name = base.clone();
        let mut k = 0;
        while taken(&name) {
            k += 1;
            name = format!("{base}{k}");
        }
        Arc::from(name)
    }

    fn term(&mut self, t: &Term, prec: u8) {
        match t {
            Term::Type => self.out.push_str("Type"),
            Term::Kind => self.out.push_str("Kind"),
            Term::Const(c) => self.out.push_str(c),
            Term::Free(v) => self.out.push_str(&v.hint),
            Term::Bound(i) => {
                let n = self.scope.len().checked_sub(*i as usize + 1).map(|k| self.scope[k].clone());
                match n {
                    Some(n) => self.out.push_str(&n),
                    None => write!(self.out, "#{i}").expect("write to string"),
                }
            }
            Term::App(..) => {
                let (head, args) = t.spine();
                self.open(prec > 1);
                self.term(head, 2);
                for a in args {
                    self.out.push(' ');
                    self.term(a, 2);
                }
                self.close(prec > 1);
            }
            Term::Pi(hint, a, b) if !b.has_bound(0) => {
                self.open(prec > 0);
                self.term(a, 1);
                self.out.push_str(" -> ");
                self.scope.push(hint.clone());
                self.term(b, 0);
                self.scope.pop();
                self.close(prec > 0);
            }
            Term::Pi(hint, a, b) | Term::Lam(hint, a, b) => {
                let arrow = if matches!(t, Term::Pi(..)) { " -> " } else { " => " };
                let name = self.pick(hint, b);
                self.open(prec > 0);
                write!(self.out, "{name} : ").expect("write to string");
                self.term(a, 1);
                self.out.push_str(arrow);
                self.scope.push(name);
                self.term(b, 0);
                self.scope.pop();
                self.close(prec > 0);
            }
        }
    }

    fn open(&mut self, yes: bool) {
        if yes {
            self.out.push('(');
        }
    }

    fn close(&mut self, yes: bool) {
        if yes {
            self.out.push(')');
        }
    }

    fn decl(&mut self, d: &Decl) {
        match d {
            Decl::Const { name, ty, definable } => {
                if *definable {
                    self.out.push_str("def ");
                }
                write!(self.out, "{name} : ").expect("write to string");
                self.term(ty, 0);
            }
            Decl::Def { name, ty, body, opaque } => {
                write!(self.out, "{} {name} : ", if *opaque { "thm" } else { "def" }).expect("write to string");
                self.term(ty, 0);
                self.out.push_str(" := ");
                self.term(body, 0);
            }
            Decl::Rule { ctx, lhs, rhs } => {
                self.out.push('[');
                for (i, (n, ty)) in ctx.iter().enumerate() {
                    if i > 0 {
                        self.out.push_str(", ");
                    }
                    write!(self.out, "{n} : ").expect("write to string");
                    self.term(ty, 0);
                    self.scope.push(n.clone());
                }
                self.out.push_str("] ");
                self.term(lhs, 0);
                self.out.push_str(" --> ");
                self.term(rhs, 0);
                self.scope.clear();
            }
        }
        self.out.push_str(".\n");
    }
}

pub fn term_to_string(t: &Term) -> String {
    let mut p = Printer { out: String::new(), scope: Vec::new() };
    p.term(t, 0);
    p.out
}

/// Prints a term whose loose indices refer to `scope` (innermost last).
pub fn term_in_scope(t: &Term, scope: &[Arc<str>]) -> String {
    let mut p = Printer { out: String::new(), scope: scope.to_vec() };
    p.term(t, 0);
    p.out
}

pub fn decl_to_string(d: &Decl) -> String {
    let mut p = Printer { out: String::new(), scope: Vec::new() };
    p.decl(d);
    p.out
}

/// Module text: a `#NAME` line, one `#REQUIRE` line per dependency, then
/// one declaration per line.
pub fn print_module(m: &Module) -> String {
    let mut p = Printer { out: String::new(), scope: Vec::new() };
    writeln!(p.out, "#NAME {}.", m.name).expect("write to string");
    for r in &m.requires {
        writeln!(p.out, "#REQUIRE {r}.").expect("write to string");
    }
    if !m.decls.is_empty() {
        p.out.push('\n');
    }
    for d in &m.decls {
        p.decl(d);
    }
    p.out
}

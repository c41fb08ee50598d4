//! A minimal λΠ-calculus modulo checker.
//!
//! Supports dependent products, beta, definition unfolding, and left-linear
//! first-order rewrite rules headed by a constant, which is all the HOL
//! encoding needs. Modules are written and read in the Dedukti syntax
//! subset produced by the translator.

mod check;
mod error;
mod parse;
mod print;
mod syntax;
mod term;

pub use check::{qualify, CheckReport, Checker, DeclReport, Entry, DEFAULT_FUEL};
pub use error::LpError;
pub use parse::{parse_module, parse_term};
pub use print::{decl_to_string, print_module, term_in_scope, term_to_string};
pub use syntax::{Decl, Module};
pub use term::{FreeVar, Term};

/// Parses and checks modules in order against one shared signature.
pub fn check_texts<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Vec<CheckReport>, LpError> {
    let mut c = Checker::new();
    let mut out = Vec::new();
    for t in texts {
        let m = parse_module(t)?;
        out.push(c.check_module(&m));
    }
    Ok(out)
}

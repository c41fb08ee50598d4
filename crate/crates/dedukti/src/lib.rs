//! HOL to λΠ-calculus modulo translation.
//!
//! A replayed article becomes one module depending on the `hol` prelude and
//! on the modules translated before it. Types become `type`-sorted terms,
//! HOL terms inhabit `term |A|`, and theorems inhabit `proof |concl|` closed
//! over their type variables, free variables and hypotheses.

mod mangle;
mod prelude;
mod symbols;
mod translate;

pub use mangle::{base_ident, Mangler};
pub use prelude::{prelude_module, COMBINATORS, PRELUDE_NAME, PRELUDE_TEXT};
pub use symbols::{lgg, ConstSym, Symbols, TypeSym};
pub use translate::{translate_all, translate_article, translate_term, translate_type, Result, TranslateError, Translation};

/// Module text in the emitted Dedukti subset.
pub fn emit_module(m: &proofcloud_lp::Module) -> String {
    proofcloud_lp::print_module(m)
}

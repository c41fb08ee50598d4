//! Identifier mangling.

use std::collections::{BTreeMap, HashMap};

const RESERVED: &[&str] = &["def", "thm", "Type", "Kind", "_"];

/// Escapes a dotted name into the identifier alphabet without looking at any
/// table: dots become `_`, other characters outside `[A-Za-z0-9_]` become
/// `_uXXXX_`, and a leading digit is prefixed with `_`.
pub fn base_ident(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for c in raw.chars() {
        match c {
            '.' | '_' => out.push('_'),
            c if c.is_ascii_alphanumeric() => out.push(c),
            c => out.push_str(&format!("_u{:04X}_", c as u32)),
        }
    }
    if out.is_empty() || out.starts_with(|c: char| c.is_ascii_digit()) {
        out.insert(0, '_');
    }
    out
}

/// Per-module mangling table. The same `(kind, raw)` pair always gets the
/// same identifier; distinct pairs never share one.
#[derive(Debug, Clone, Default)]
pub struct Mangler {
    table: HashMap<(&'static str, String), String>,
    back: BTreeMap<String, (&'static str, String)>,
}

impl Mangler {
    pub fn new() -> Mangler {
        Mangler::default()
    }

    /// Identifier for a name of the given kind (constants, type operators
    /// and theorems live in one namespace but may share raw names).
    pub fn mangle(&mut self, kind: &'static str, raw: &str) -> String {
        let key = (kind, raw.to_string());
        if let Some(id) = self.table.get(&key) {
            return id.clone();
        }
        let base = base_ident(raw);
        let mut id = base.clone();
        let mut k = 0;
        while RESERVED.contains(&id.as_str()) || self.back.contains_key(&id) {
            k += 1;
            id = format!("{base}_{k}");
        }
        self.table.insert(key.clone(), id.clone());
        self.back.insert(id.clone(), key);
        id
    }

    /// Reserves an identifier that is not derived from a source name.
    pub fn reserve(&mut self, ident: &str) -> String {
        self.mangle("reserved", ident)
    }

    pub fn unmangle(&self, ident: &str) -> Option<(&'static str, &str)> {
        self.back.get(ident).map(|(k, r)| (*k, r.as_str()))
    }

    pub fn len(&self) -> usize {
        self.back.len()
    }

    pub fn is_empty(&self) -> bool {
        self.back.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dots_become_underscores() {
        assert_eq!(Mangler::new().mangle("const", "Data.Bool.T"), "Data_Bool_T");
    }

    #[test]
    fn collisions_get_suffixes() {
        let mut m = Mangler::new();
        assert_eq!(m.mangle("const", "a.b"), "a_b");
        assert_eq!(m.mangle("const", "a_b"), "a_b_1");
        assert_eq!(m.mangle("type", "a.b"), "a_b_2");
        assert_eq!(m.mangle("const", "a.b"), "a_b");
    }

    #[test]
    fn escapes_round_trip_through_the_table() {
        let mut m = Mangler::new();
        let id = m.mangle("const", "\u{2200}x");
        assert_eq!(id, "_u2200_x");
        assert_eq!(m.unmangle(&id), Some(("const", "\u{2200}x")));
    }

    #[test]
    fn reserved_words_and_digits() {
        let mut m = Mangler::new();
        assert_eq!(m.mangle("const", "def"), "def_1");
        assert_eq!(m.mangle("const", "1"), "_1");
        assert_eq!(m.mangle("const", ""), "__1");
    }
}

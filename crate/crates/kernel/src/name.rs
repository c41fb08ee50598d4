//! Namespaced symbols such as `Data.Bool.T`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq, Hash)]
struct NameData {
    namespace: Vec<String>,
    base: String,
}

/// A namespaced symbol: a list of namespace components plus a base name.
///
/// Cloning is cheap. Names compare component-wise over the full component
/// list, so `A.z` sorts after `A.b.c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Name(Arc<NameData>);

impl Name {
    pub fn new<I, S>(namespace: I, base: impl Into<String>) -> Name
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Name(Arc::new(NameData {
            namespace: namespace.into_iter().map(Into::into).collect(),
            base: base.into(),
        }))
    }

    /// A name with an empty namespace.
    pub fn simple(base: impl Into<String>) -> Name {
        Name::new(Vec::<String>::new(), base)
    }

    pub fn namespace(&self) -> &[String] {
        &self.0.namespace
    }

    pub fn base(&self) -> &str {
        &self.0.base
    }

    pub fn components(&self) -> impl Iterator<Item = &str> {
        self.0.namespace.iter().map(String::as_str).chain(std::iter::once(self.0.base.as_str()))
    }

    /// Same namespace, base name with a prime appended.
    pub fn primed(&self) -> Name {
        Name::new(self.0.namespace.clone(), format!("{}'", self.0.base))
    }

    /// Parses the escaped (unquoted) form: components separated by unescaped
    /// `.`, with `\` escaping the following character.
    pub fn parse_escaped(s: &str) -> Result<Name, NameError> {
        let mut parts = Vec::new();
        let mut cur = String::new();
        let mut chars = s.chars();
        while let Some(c) = chars.next() {
            match c {
                '\\' => match chars.next() {
                    Some(e @ ('\\' | '"' | '.')) => cur.push(e),
                    Some(other) => return Err(NameError::BadEscape(other)),
                    None => return Err(NameError::TrailingBackslash),
                },
                '.' => parts.push(std::mem::take(&mut cur)),
                c => cur.push(c),
            }
        }
        let base = cur;
        Ok(Name::new(parts, base))
    }

    /// The escaped form accepted by [`Name::parse_escaped`].
    pub fn escaped(&self) -> String {
        let mut out = String::new();
        for (i, comp) in self.components().enumerate() {
            if i > 0 {
                out.push('.');
            }
            for c in comp.chars() {
                if matches!(c, '\\' | '"' | '.') {
                    out.push('\\');
                }
                out.push(c);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NameError {
    #[error("invalid escape `\\{0}` in name")]
    BadEscape(char),
    #[error("name ends with a lone backslash")]
    TrailingBackslash,
}

impl Ord for Name {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.components().cmp(other.components())
    }
}

impl PartialOrd for Name {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(comp)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.escaped())
    }
}

impl From<&str> for Name {
    /// Splits on `.`; use [`Name::parse_escaped`] for names with escapes.
    fn from(s: &str) -> Name {
        Name::parse_escaped(s).unwrap_or_else(|_| Name::simple(s))
    }
}

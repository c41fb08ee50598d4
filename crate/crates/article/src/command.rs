//! Article lines and the opcode table.

use std::fmt;
use std::str::FromStr;

use proofcloud_kernel::Name;

use crate::error::{ArticleError, ErrorKind};

macro_rules! opcodes {
    ($($variant:ident => $word:literal, $pops:literal, $pushes:literal, $v6:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Opcode {
            $($variant,)*
        }

        impl Opcode {
            pub const ALL: &'static [Opcode] = &[$(Opcode::$variant,)*];

            pub fn word(self) -> &'static str {
                match self {
                    $(Opcode::$variant => $word,)*
                }
            }

            /// Objects popped and pushed by a successful execution.
            pub fn arity(self) -> (usize, usize) {
                match self {
                    $(Opcode::$variant => ($pops, $pushes),)*
                }
            }

            pub fn is_v6_only(self) -> bool {
                match self {
                    $(Opcode::$variant => $v6,)*
                }
            }
        }

        impl FromStr for Opcode {
            type Err = ();

            fn from_str(s: &str) -> Result<Opcode, ()> {
                match s {
                    $($word => Ok(Opcode::$variant),)*
                    _ => Err(()),
                }
            }
        }
    };
}

opcodes! {
    AbsTerm => "absTerm", 2, 1, false;
    AbsThm => "absThm", 2, 1, false;
    AppTerm => "appTerm", 2, 1, false;
    AppThm => "appThm", 2, 1, false;
    Assume => "assume", 1, 1, false;
    Axiom => "axiom", 2, 1, false;
    BetaConv => "betaConv", 1, 1, false;
    Cons => "cons", 2, 1, false;
    Const => "const", 1, 1, false;
    ConstTerm => "constTerm", 2, 1, false;
    Def => "def", 2, 1, false;
    DeductAntisym => "deductAntisym", 2, 1, false;
    DefineConst => "defineConst", 2, 2, false;
    DefineConstList => "defineConstList", 2, 2, true;
    DefineTypeOp => "defineTypeOp", 5, 5, false;
    EqMp => "eqMp", 2, 1, false;
    HdTl => "hdTl", 1, 2, true;
    Nil => "nil", 0, 1, false;
    OpType => "opType", 2, 1, false;
    Pop => "pop", 1, 0, false;
    Pragma => "pragma", 1, 0, true;
    ProveHyp => "proveHyp", 2, 1, true;
    Ref => "ref", 1, 1, false;
    Refl => "refl", 1, 1, false;
    Remove => "remove", 1, 1, false;
    Subst => "subst", 2, 1, false;
    Sym => "sym", 1, 1, true;
    Thm => "thm", 3, 0, false;
    Trans => "trans", 2, 1, true;
    TypeOp => "typeOp", 1, 1, false;
    Var => "var", 2, 1, false;
    VarTerm => "varTerm", 1, 1, false;
    VarType => "varType", 1, 1, false;
    Version => "version", 1, 0, true;
}

impl fmt::Display for Opcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Num(i64),
    Name(Name),
    Op(Opcode),
}

impl Command {
    /// Key under which the command is tallied in opcode counts.
    pub fn count_key(&self) -> &'static str {
        match self {
            Command::Num(_) => "num",
            Command::Name(_) => "name",
            Command::Op(op) => op.word(),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Num(n) => write!(f, "{n}"),
            Command::Name(n) => write!(f, "\"{}\"", n.escaped()),
            Command::Op(op) => write!(f, "{op}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Line {
    Command(Command),
    Comment,
    Blank,
}

pub fn parse_line(line: &str, line_no: usize) -> Result<Line, ArticleError> {
    let s = line.trim_end_matches(['\r', '\n']).trim();
    if s.is_empty() {
        return Ok(Line::Blank);
    }
    if s.starts_with('#') {
        return Ok(Line::Comment);
    }
    if let Some(rest) = s.strip_prefix('"') {
        let inner = rest.strip_suffix('"').ok_or_else(|| ArticleError::new(line_no, ErrorKind::BadQuote))?;
        // the closing quote must not be escaped, and no bare quote may appear inside
        let mut escaped = false;
        for c in inner.chars() {
            match (escaped, c) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => return Err(ArticleError::new(line_no, ErrorKind::BadQuote)),
                _ => {}
            }
        }
        if escaped {
            return Err(ArticleError::new(line_no, ErrorKind::BadQuote));
        }
        let name = Name::parse_escaped(inner).map_err(|_| ArticleError::new(line_no, ErrorKind::BadQuote))?;
        return Ok(Line::Command(Command::Name(name)));
    }
    let first = s.as_bytes()[0];
    if first.is_ascii_digit() || (first == b'-' && s.len() > 1) {
        return s
            .parse::<i64>()
            .map(|n| Line::Command(Command::Num(n)))
            .map_err(|_| ArticleError::new(line_no, ErrorKind::UnknownCommand(s.to_string())));
    }
    s.parse::<Opcode>()
        .map(|op| Line::Command(Command::Op(op)))
        .map_err(|_| ArticleError::new(line_no, ErrorKind::UnknownCommand(s.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opcode_table() {
        assert_eq!(Opcode::ALL.len(), 34);
        for op in Opcode::ALL {
            assert_eq!(op.word().parse::<Opcode>(), Ok(*op));
        }
        let v6: Vec<&str> = Opcode::ALL.iter().filter(|o| o.is_v6_only()).map(|o| o.word()).collect();
        assert_eq!(v6, ["defineConstList", "hdTl", "pragma", "proveHyp", "sym", "trans", "version"]);
    }

    #[test]
    fn lines() {
        assert_eq!(parse_line("refl", 1).unwrap(), Line::Command(Command::Op(Opcode::Refl)));
        assert_eq!(parse_line("# comment", 1).unwrap(), Line::Comment);
        assert_eq!(parse_line("   ", 1).unwrap(), Line::Blank);
        assert_eq!(parse_line("42", 1).unwrap(), Line::Command(Command::Num(42)));
        let Line::Command(Command::Name(n)) = parse_line("\"Data.Bool.T\"", 1).unwrap() else { panic!() };
        assert_eq!(n.namespace(), ["Data", "Bool"]);
        assert_eq!(n.base(), "T");
        let Line::Command(Command::Name(n)) = parse_line(r#""a\.b\"c\\""#, 1).unwrap() else { panic!() };
        assert_eq!(n.base(), r#"a.b"c\"#);
        assert!(n.namespace().is_empty());
    }

    #[test]
    fn bad_lines() {
        assert_eq!(parse_line("frob", 7).unwrap_err().kind, ErrorKind::UnknownCommand("frob".into()));
        assert_eq!(parse_line("\"open", 3).unwrap_err().kind, ErrorKind::BadQuote);
        assert_eq!(parse_line(r#""x\""#, 3).unwrap_err().kind, ErrorKind::BadQuote);
        assert_eq!(parse_line(r#""a"b""#, 3).unwrap_err().kind, ErrorKind::BadQuote);
    }

    #[test]
    fn name_display_reparses() {
        for raw in ["Data.Bool.T", "x", r#"we\"ird"#, r#"a\.b.c"#, "+", "∀"] {
            let n = Name::parse_escaped(raw).unwrap();
            let shown = Command::Name(n.clone()).to_string();
            assert_eq!(parse_line(&shown, 1).unwrap(), Line::Command(Command::Name(n)));
        }
    }
}

//! Parser for the emitted Dedukti subset.

use std::sync::Arc;

use crate::error::LpError;
use crate::syntax::{Decl, Module};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Directive(String),
    Colon,
    Dot,
    Comma,
    Arrow,
    FatArrow,
    Defeq,
    Rewrite,
    LParen,
    RParen,
    LBrack,
    RBrack,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Spanned>, LpError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let bump = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let (l, cl) = (line, col);
        let at = |s: &str| chars[i..].iter().take(s.len()).copied().eq(s.chars());
        if c.is_whitespace() {
            bump(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if at("(;") {
            bump(&mut i, &mut line, &mut col, 2);
            while i < chars.len() && !(chars[i] == ';' && chars.get(i + 1) == Some(&')')) {
                bump(&mut i, &mut line, &mut col, 1);
            }
            if i >= chars.len() {
                return Err(LpError::Syntax { line: l, col: cl, message: "unterminated comment".into() });
            }
            bump(&mut i, &mut line, &mut col, 2);
            continue;
        }
        let fixed = [
            ("-->", Tok::Rewrite),
            ("->", Tok::Arrow),
            ("=>", Tok::FatArrow),
            (":=", Tok::Defeq),
            (":", Tok::Colon),
            (".", Tok::Dot),
            (",", Tok::Comma),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("[", Tok::LBrack),
            ("]", Tok::RBrack),
        ];
        if let Some((s, t)) = fixed.iter().find(|(s, _)| at(s)) {
            toks.push(Spanned { tok: t.clone(), line: l, col: cl });
            bump(&mut i, &mut line, &mut col, s.len());
            continue;
        }
        if c == '#' || is_ident_char(c) {
            let start = i;
            bump(&mut i, &mut line, &mut col, 1);
            loop {
                while i < chars.len() && is_ident_char(chars[i]) {
                    bump(&mut i, &mut line, &mut col, 1);
                }
                // `m.x` with no space is a qualified name; a dot before
                // whitespace ends the declaration
                if c != '#' && i + 1 < chars.len() && chars[i] == '.' && is_ident_char(chars[i + 1]) {
                    bump(&mut i, &mut line, &mut col, 1);
                } else {
                    break;
                }
            }
            let word: String = chars[start..i].iter().collect();
            let tok = if let Some(d) = word.strip_prefix('#') { Tok::Directive(d.to_string()) } else { Tok::Ident(word) };
            toks.push(Spanned { tok, line: l, col: cl });
            continue;
        }
        return Err(LpError::Syntax { line: l, col: cl, message: format!("unexpected character `{c}`") });
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    scope: Vec<Arc<str>>,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|s| &s.tok)
    }

    fn err(&self, message: impl Into<String>) -> LpError {
        let (line, col) = self.toks.get(self.pos).map(|s| (s.line, s.col)).unwrap_or(self.end);
        LpError::Syntax { line, col, message: message.into() }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), LpError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn ident(&mut self) -> Result<String, LpError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !is_keyword(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected identifier")),
        }
    }

    fn term(&mut self) -> Result<Term, LpError> {
        if let (Some(Tok::Ident(n)), Some(Tok::Colon)) = (self.peek(), self.peek2()) {
            if n.contains('.') || is_keyword(n) {
                return Err(self.err("binder names cannot be qualified"));
            }
            let name: Arc<str> = Arc::from(n.as_str());
            self.pos += 2;
            let dom = self.app()?;
            let lam = match self.peek() {
                Some(Tok::Arrow) => false,
                Some(Tok::FatArrow) => true,
                _ => return Err(self.err("expected `->` or `=>`")),
            };
            self.pos += 1;
            self.scope.push(name.clone());
            let body = self.term();
            self.scope.pop();
            let body = Arc::new(body?);
            return Ok(if lam { Term::Lam(name, Arc::new(dom), body) } else { Term::Pi(name, Arc::new(dom), body) });
        }
        let a = self.app()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            self.scope.push(Arc::from("_"));
            let b = self.term();
            self.scope.pop();
            return Ok(Term::Pi(Arc::from("_"), Arc::new(a), Arc::new(b?)));
        }
        Ok(a)
    }

    fn app(&mut self) -> Result<Term, LpError> {
        let mut t = self.atom()?.ok_or_else(|| self.err("expected a term"))?;
        while let Some(a) = self.atom()? {
            t = Term::app(t, a);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Option<Term>, LpError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "Type" => {
                self.pos += 1;
                Ok(Some(Term::Type))
            }
            Some(Tok::Ident(s)) if is_keyword(s) => Err(self.err(format!("unexpected keyword `{s}`"))),
            Some(Tok::Ident(s)) => {
                // an identifier followed by `:` starts a binder, not an argument
                if self.peek2() == Some(&Tok::Colon) {
                    return Ok(None);
                }
                let s = s.clone();
                self.pos += 1;
                let bound = self.scope.iter().rev().position(|n| **n == *s);
                Ok(Some(match bound {
                    Some(i) => Term::Bound(i as u32),
                    None => Term::cnst(s),
                }))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Some(t))
            }
            _ => Ok(None),
        }
    }

    fn decl(&mut self) -> Result<Decl, LpError> {
        match self.peek() {
            Some(Tok::LBrack) => self.rule(),
            Some(Tok::Ident(k)) if k == "def" || k == "thm" => {
                let opaque = k == "thm";
                self.pos += 1;
                let name = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.term()?;
                match self.peek() {
                    Some(Tok::Defeq) => {
                        self.pos += 1;
                        let body = self.term()?;
                        self.expect(Tok::Dot, "`.`")?;
                        Ok(Decl::Def { name: Arc::from(name), ty, body, opaque })
                    }
                    Some(Tok::Dot) if !opaque => {
                        self.pos += 1;
                        Ok(Decl::Const { name: Arc::from(name), ty, definable: true })
                    }
                    _ => Err(self.err("expected `:=`")),
                }
            }
            _ => {
                let name = self.ident()?;
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.term()?;
                self.expect(Tok::Dot, "`.`")?;
                Ok(Decl::Const { name: Arc::from(name), ty, definable: false })
            }
        }
    }

    fn rule(&mut self) -> Result<Decl, LpError> {
        let start = self.pos;
        self.expect(Tok::LBrack, "`[`")?;
        let mut ctx = Vec::new();
        while self.peek() != Some(&Tok::RBrack) {
            if !ctx.is_empty() {
                self.expect(Tok::Comma, "`,`")?;
            }
            let n: Arc<str> = Arc::from(self.ident()?);
            self.expect(Tok::Colon, "`:` (rule variables carry types)")?;
            let ty = self.term()?;
            self.scope.push(n.clone());
            ctx.push((n, ty));
        }
        self.pos += 1;
        let lhs = self.term();
        let rhs = lhs.and_then(|lhs| {
            self.expect(Tok::Rewrite, "`-->`")?;
            Ok((lhs, self.term()?))
        });
        self.scope.clear();
        let (lhs, rhs) = rhs?;
        self.expect(Tok::Dot, "`.`")?;
        if let Err(m) = check_pattern(&lhs, ctx.len()) {
            self.pos = start;
            return Err(self.err(m));
        }
        Ok(Decl::Rule { ctx, lhs, rhs })
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "def" | "thm" | "Type")
}

/// Left-linear, head-constant, first-order: every context variable appears
/// exactly once, only as an argument.
fn check_pattern(lhs: &Term, n: usize) -> Result<(), String> {
    let (head, args) = lhs.spine();
    if !matches!(head, Term::Const(_)) {
        return Err("rule left-hand side must start with a constant".into());
    }
    let mut seen = vec![false; n];
    fn walk(t: &Term, seen: &mut [bool]) -> Result<(), String> {
        let (head, args) = t.spine();
        match head {
            Term::Bound(i) if args.is_empty() => {
                let slot = seen.len().checked_sub(*i as usize + 1).ok_or("unbound pattern variable")?;
                if std::mem::replace(&mut seen[slot], true) {
                    return Err("non-linear rule left-hand side".into());
                }
                Ok(())
            }
            Term::Const(_) => args.iter().try_for_each(|a| walk(a, seen)),
            _ => Err("only constants and rule variables may appear in patterns".into()),
        }
    }
    for a in args {
        walk(a, &mut seen)?;
    }
    if seen.iter().all(|s| *s) {
        Ok(())
    } else {
        Err("rule variable missing from left-hand side".into())
    }
}

pub fn parse_term(text: &str) -> Result<Term, LpError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, scope: Vec::new(), end: end_of(text) };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

fn end_of(text: &str) -> (usize, usize) {
    let line = text.lines().count().max(1);
    let col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    (line, col)
}

pub fn parse_module(text: &str) -> Result<Module, LpError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, scope: Vec::new(), end: end_of(text) };
    let mut m = Module::default();
    while let Some(t) = p.peek() {
        if let Tok::Directive(d) = t {
            let d = d.clone();
            p.pos += 1;
            let arg = p.ident()?;
            p.expect(Tok::Dot, "`.`")?;
            match d.as_str() {
                "NAME" => m.name = arg,
                "REQUIRE" => m.requires.push(arg),
                _ => {
                    p.pos -= 3;
                    return Err(p.err(format!("unknown directive #{d}")));
                }
            }
            continue;
        }
        m.decls.push(p.decl()?);
    }
    Ok(m)
}

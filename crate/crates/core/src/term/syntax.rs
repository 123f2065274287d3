//! Lexer and recursive-descent parser for the concrete syntax.
//!
//! ```text
//! term   ::= \x[:T].term | if term then term else term | let x = term in term | par
//! par    ::= sum ('||' sum)*
//! sum    ::= scaled (('+' | '-') scaled)*
//! scaled ::= scalar '.' scaled | app
//! app    ::= atom atom* [tail]          tail = a lambda, if or let
//! atom   ::= x | zero | |bits> | * | pi_n | (term) | (term, term) | [term] | {term}
//!          | dpar(term, [x]term, [y]term) | dmeas(term, [x]term, [y]term)
//! scalar ::= number | (expr) | 1/sqrt2 | sqrt3/2 | ...   expr over + - * / i sqrtN sqrt(e)
//! ```
//!
//! `[t]` is the thunk `\z.t` (fresh `z`), `{t}` releases it as `t (\x.x)`.
//! `let x = t in r` is expanded at parse time into `(t/x)r`.

use std::fmt;

use thiserror::Error;

use super::{canonicalize, fresh_name, subst::subst_raw, Dialect, Term};
use crate::lambda_s::TypeExpr;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    Ket(String),
    Lambda,
    Dot,
    Colon,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Plus,
    Minus,
    Star,
    Slash,
    Bars,
    Arrow,
    Equals,
    OdotTy,
    TopTy,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(n) => write!(f, "number {n}"),
            Tok::Ket(b) => write!(f, "`|{b}>`"),
            Tok::Lambda => f.write_str("`\\`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Bars => f.write_str("`||`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::OdotTy => f.write_str("`(.)`"),
            Tok::TopTy => f.write_str("`⊤`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

/// What went wrong, and where (1-based line and column).
#[derive(Clone, Debug, PartialEq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: {construct} is not part of the {dialect} dialect")]
    Dialect {
        line: usize,
        col: usize,
        construct: String,
        dialect: Dialect,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. } | ParseError::Dialect { line, col, .. } => {
                (*line, *col)
            }
        }
    }
}

const KEYWORDS: &[&str] = &["if", "then", "else", "let", "in", "zero", "dpar", "dmeas"];

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.chars().count(), |i| before[i + 1..].chars().count()) + 1;
    (line, col)
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let at = |j: usize| chars.get(j).map(|c| c.1);
    while i < chars.len() {
        let (off, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '-' && at(i + 1) == Some('-') {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        let simple = match c {
            '\\' | 'λ' => Some(Tok::Lambda),
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '=' => Some(Tok::Equals),
            '⊙' => Some(Tok::OdotTy),
            '⊤' => Some(Tok::TopTy),
            '∥' => Some(Tok::Bars),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, off));
            i += 1;
            continue;
        }
        match c {
            '(' => {
                if at(i + 1) == Some('.') && at(i + 2) == Some(')') {
                    out.push((Tok::OdotTy, off));
                    i += 3;
                } else {
                    out.push((Tok::LParen, off));
                    i += 1;
                }
            }
            '-' => {
                if at(i + 1) == Some('>') {
                    out.push((Tok::Arrow, off));
                    i += 2;
                } else {
                    out.push((Tok::Minus, off));
                    i += 1;
                }
            }
            '|' => {
                if at(i + 1) == Some('|') {
                    out.push((Tok::Bars, off));
                    i += 2;
                    continue;
                }
                let mut j = i + 1;
                let mut bits = String::new();
                while let Some(b @ ('0' | '1')) = at(j) {
                    bits.push(b);
                    j += 1;
                }
                if bits.is_empty() || at(j) != Some('>') {
                    let (line, col) = line_col(src, off);
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        msg: "malformed ket, expected `|0>`, `|1>`, `|01>`, ...".into(),
                    });
                }
                out.push((Tok::Ket(bits), off));
                i = j + 1;
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while at(j).is_some_and(|c| c.is_ascii_digit()) {
                    j += 1;
                }
                if at(j) == Some('.') && at(j + 1).is_some_and(|c| c.is_ascii_digit()) {
                    j += 1;
                    while at(j).is_some_and(|c| c.is_ascii_digit()) {
                        j += 1;
                    }
                }
                let end = chars.get(j).map_or(src.len(), |c| c.0);
                let text = &src[off..end];
                out.push((Tok::Number(text.parse().expect("digits parse as f64")), off));
                i = j;
            }
            a if a.is_alphabetic() || a == '_' => {
                let mut j = i;
                while at(j).is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                    j += 1;
                }
                let end = chars.get(j).map_or(src.len(), |c| c.0);
                out.push((Tok::Ident(src[off..end].to_string()), off));
                i = j;
            }
            other => {
                let (line, col) = line_col(src, off);
                return Err(ParseError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

fn sqrt_ident(s: &str) -> Option<f64> {
    let digits = s.strip_prefix("sqrt")?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    digits.parse::<f64>().ok().map(f64::sqrt)
}

struct Parser<'s> {
    src: &'s str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    dialect: Dialect,
}

type PResult<T> = Result<T, ParseError>;

impl<'s> Parser<'s> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (line, col) = line_col(self.src, self.offset());
        Err(ParseError::Syntax { line, col, msg: msg.into() })
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {t}, found {}", self.peek()))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(x) if !KEYWORDS.contains(&x.as_str()) => {
                self.bump();
                Ok(x)
            }
            other => self.err(format!("expected an identifier, found {other}")),
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == kw)
    }

    /// Rejects `t` when its constructor is not in the current dialect.
    fn check(&self, t: Term, offset: usize) -> PResult<Term> {
        if t.legal_in(self.dialect) {
            Ok(t)
        } else {
            let (line, col) = line_col(self.src, offset);
            Err(ParseError::Dialect {
                line,
                col,
                construct: t.construct_name().to_string(),
                dialect: self.dialect,
            })
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let start = self.offset();
        match self.peek() {
            Tok::Lambda => {
                self.bump();
                let x = self.ident()?;
                let ty = if *self.peek() == Tok::Colon {
                    self.bump();
                    Some(self.ty()?)
                } else {
                    None
                };
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                self.check(Term::Abs(x, ty, Box::new(body)), start)
            }
            _ if self.is_kw("if") => {
                self.bump();
                let c = self.term()?;
                if !self.is_kw("then") {
                    return self.err(format!("expected `then`, found {}", self.peek()));
                }
                self.bump();
                let a = self.term()?;
                if !self.is_kw("else") {
                    return self.err(format!("expected `else`, found {}", self.peek()));
                }
                self.bump();
                let b = self.term()?;
                self.check(Term::ite(c, a, b), start)
            }
            _ if self.is_kw("let") => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Equals)?;
                let def = self.term()?;
                if !self.is_kw("in") {
                    return self.err(format!("expected `in`, found {}", self.peek()));
                }
                self.bump();
                let body = self.term()?;
                Ok(subst_raw(&body, &x, &def, &def.free_vars()))
            }
            _ => self.par(),
        }
    }

    fn starts_tail(&self) -> bool {
        *self.peek() == Tok::Lambda || self.is_kw("if") || self.is_kw("let")
    }

    fn par(&mut self) -> PResult<Term> {
        let start = self.offset();
        let first = self.sum()?;
        if *self.peek() != Tok::Bars {
            return Ok(first);
        }
        let mut parts = vec![first];
        while *self.peek() == Tok::Bars {
            self.bump();
            parts.push(self.sum()?);
        }
        self.check(Term::Parallel(parts), start)
    }

    fn sum(&mut self) -> PResult<Term> {
        let start = self.offset();
        let mut acc = self.scaled()?;
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            let op = self.offset();
            self.bump();
            let mut rhs = self.scaled()?;
            if neg {
                rhs = Term::scale(-1.0, rhs);
            }
            acc = if self.dialect == Dialect::Odot {
                self.check(Term::sup(acc, rhs), op)?
            } else {
                let t = Term::sum([acc, rhs]);
                self.check(t, start)?
            };
        }
    }

    fn scaled(&mut self) -> PResult<Term> {
        let start = self.offset();
        let save = self.pos;
        if let Some(s) = self.try_scalar_prefix() {
            if *self.peek() == Tok::Dot {
                self.bump();
                let body = self.scaled()?;
                return self.check(Term::scale(s, body), start);
            }
        }
        self.pos = save;
        self.app()
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(x) => !matches!(x.as_str(), "then" | "else" | "in" | "if" | "let"),
            Tok::LParen | Tok::LBracket | Tok::LBrace | Tok::Ket(_) | Tok::Star => true,
            _ => false,
        }
    }

    fn app(&mut self) -> PResult<Term> {
        if self.starts_tail() {
            return self.term();
        }
        let start = self.offset();
        let mut f = self.atom()?;
        loop {
            if self.starts_tail() {
                let arg = self.term()?;
                return self.check(Term::app(f, arg), start);
            }
            if !self.starts_atom() {
                return Ok(f);
            }
            let arg = self.atom()?;
            f = self.check(Term::app(f, arg), start)?;
        }
    }

    fn atom(&mut self) -> PResult<Term> {
        let start = self.offset();
        match self.peek().clone() {
            Tok::Ident(x) if x == "zero" => {
                self.bump();
                self.check(Term::Zero, start)
            }
            Tok::Ident(x) if x == "pi" || x.starts_with("pi_") => {
                let n = if x == "pi" {
                    1
                } else {
                    match x[3..].parse::<usize>() {
                        Ok(n) if n >= 1 => n,
                        _ => return self.err(format!("bad measurement arity in `{x}`")),
                    }
                };
                let t = self.check(Term::Meas(n), start)?;
                self.bump();
                Ok(t)
            }
            Tok::Ident(x) if x == "dpar" || x == "dmeas" => {
                let probe = if x == "dpar" {
                    Term::dpar(Term::Star, "x", Term::Star, "y", Term::Star)
                } else {
                    Term::dmeas(Term::Star, "x", Term::Star, "y", Term::Star)
                };
                self.check(probe, start)?;
                self.bump();
                self.expect(Tok::LParen)?;
                let s = self.term()?;
                self.expect(Tok::Comma)?;
                self.expect(Tok::LBracket)?;
                let bx = self.ident()?;
                self.expect(Tok::RBracket)?;
                let r = self.term()?;
                self.expect(Tok::Comma)?;
                self.expect(Tok::LBracket)?;
                let by = self.ident()?;
                self.expect(Tok::RBracket)?;
                let q = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(if x == "dpar" {
                    Term::dpar(s, bx, r, by, q)
                } else {
                    Term::dmeas(s, bx, r, by, q)
                })
            }
            Tok::Ident(_) => Ok(Term::Var(self.ident()?)),
            Tok::Ket(bits) => {
                self.bump();
                Ok(match self.dialect {
                    Dialect::Lineal => crate::encodings::church_ket(&bits),
                    Dialect::LambdaS => crate::encodings::constant_ket(&bits),
                    Dialect::Odot => crate::odot::odot_ket(&bits),
                })
            }
            Tok::Star => {
                self.bump();
                self.check(Term::Star, start)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                if *self.peek() == Tok::Comma {
                    self.bump();
                    let u = self.term()?;
                    self.expect(Tok::RParen)?;
                    return self.check(Term::pair(t, u), start);
                }
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::LBracket => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RBracket)?;
                let z = fresh_name("z", &t.free_vars());
                Ok(Term::abs(z, t))
            }
            Tok::LBrace => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RBrace)?;
                Ok(Term::app(t, Term::abs("x", Term::var("x"))))
            }
            other => self.err(format!("expected a term, found {other}")),
        }
    }

    // ----- scalars -----

    fn try_scalar_prefix(&mut self) -> Option<Scalar> {
        match self.peek() {
            Tok::LParen => {
                self.bump();
                let s = self.scalar_expr().ok()?;
                (self.bump() == Tok::RParen).then_some(s)
            }
            Tok::Minus | Tok::Number(_) => self.scalar_bare(),
            Tok::Ident(x) if x == "i" || sqrt_ident(x).is_some() => self.scalar_bare(),
            _ => None,
        }
    }

    /// `[-] primary (('*' | '/') primary)*` without parentheses.
    fn scalar_bare(&mut self) -> Option<Scalar> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.scalar_primary_bare()?;
        loop {
            match self.peek() {
                Tok::Star if !matches!(self.peek_at(1), Tok::Dot) => {
                    self.bump();
                    acc = acc * self.scalar_primary_bare()?;
                }
                Tok::Slash => {
                    self.bump();
                    acc = acc / self.scalar_primary_bare()?;
                }
                _ => break,
            }
        }
        Some(if neg { -acc } else { acc })
    }

    fn scalar_primary_bare(&mut self) -> Option<Scalar> {
        match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                if matches!(self.peek(), Tok::Ident(x) if x == "i") {
                    self.bump();
                    return Some(Scalar::new(0.0, n));
                }
                Some(Scalar::real(n))
            }
            Tok::Ident(x) if x == "i" => {
                self.bump();
                Some(Scalar::I)
            }
            Tok::Ident(x) => {
                let v = sqrt_ident(&x)?;
                self.bump();
                Some(Scalar::real(v))
            }
            _ => None,
        }
    }

    fn scalar_expr(&mut self) -> PResult<Scalar> {
        let mut acc = self.scalar_term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.scalar_term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.scalar_term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn scalar_term(&mut self) -> PResult<Scalar> {
        let mut acc = self.scalar_unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc * self.scalar_unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    acc = acc / self.scalar_unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn scalar_unary(&mut self) -> PResult<Scalar> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.scalar_unary()?);
        }
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let s = self.scalar_expr()?;
                self.expect(Tok::RParen)?;
                Ok(s)
            }
            Tok::Ident(x) if x == "sqrt" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let s = self.scalar_expr()?;
                self.expect(Tok::RParen)?;
                Ok(s.to_complex().sqrt().into())
            }
            _ => match self.scalar_primary_bare() {
                Some(s) => Ok(s),
                None => self.err(format!("expected a scalar, found {}", self.peek())),
            },
        }
    }

    // ----- types -----

    fn ty(&mut self) -> PResult<TypeExpr> {
        let lhs = self.ty_prod()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.ty()?;
            return Ok(TypeExpr::arrow(lhs, rhs));
        }
        Ok(lhs)
    }

    fn ty_prod(&mut self) -> PResult<TypeExpr> {
        let lhs = self.ty_unary()?;
        match self.peek() {
            Tok::Star => {
                self.bump();
                Ok(TypeExpr::prod(lhs, self.ty_prod()?))
            }
            Tok::OdotTy => {
                self.bump();
                Ok(TypeExpr::odot(lhs, self.ty_prod()?))
            }
            _ => Ok(lhs),
        }
    }

    fn ty_unary(&mut self) -> PResult<TypeExpr> {
        match self.peek().clone() {
            Tok::Ident(x) if x == "S" => {
                self.bump();
                Ok(TypeExpr::s(self.ty_unary()?))
            }
            Tok::Ident(x) if x == "B" => {
                self.bump();
                Ok(TypeExpr::B)
            }
            Tok::Ident(x) if x == "Top" => {
                self.bump();
                Ok(TypeExpr::Top)
            }
            Tok::TopTy => {
                self.bump();
                Ok(TypeExpr::Top)
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => self.err(format!("expected a type, found {other}")),
        }
    }
}

/// A parsed source file: its `-- key: value` header lines and its term.
#[derive(Clone, Debug)]
pub struct Program {
    pub dialect: Dialect,
    pub headers: Vec<(String, String)>,
    pub term: Term,
}

impl Program {
    pub fn header(&self, key: &str) -> Option<&str> {
        self.headers
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn headers(src: &str) -> Vec<(String, String)> {
    src.lines()
        .map(str::trim)
        .take_while(|l| l.is_empty() || l.starts_with("--"))
        .filter_map(|l| {
            let body = l.strip_prefix("--")?.trim();
            let (k, v) = body.split_once(':')?;
            let k = k.trim();
            (!k.is_empty() && !k.contains(' ')).then(|| (k.to_string(), v.trim().to_string()))
        })
        .collect()
}

/// Parses a whole source text in `dialect`, returning a canonical term.
pub fn parse(src: &str, dialect: Dialect) -> Result<Term, ParseError> {
    parse_program(src, dialect).map(|p| p.term)
}

pub fn parse_program(src: &str, dialect: Dialect) -> Result<Program, ParseError> {
    let mut p = Parser { src, toks: lex(src)?, pos: 0, dialect };
    let term = p.term()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {} after the end of the term", p.peek()));
    }
    if let Some(bad) = term.dialect_violation(dialect) {
        return Err(ParseError::Dialect {
            line: 1,
            col: 1,
            construct: bad.construct_name().to_string(),
            dialect,
        });
    }
    Ok(Program { dialect, headers: headers(src), term: canonicalize(&term) })
}

/// Parses a type such as `B -> S B` or `Top (.) Top`.
pub fn parse_type(src: &str) -> Result<TypeExpr, ParseError> {
    let mut p = Parser { src, toks: lex(src)?, pos: 0, dialect: Dialect::LambdaS };
    let t = p.ty()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {} after the type", p.peek()));
    }
    Ok(t)
}

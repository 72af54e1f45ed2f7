//! Textual polynomial syntax: integer literals, identifiers, `+ - * / ^` and
//! parentheses. `^` binds tighter than `*` and `/`, which bind tighter than
//! `+` and `-`. Division is only allowed by a nonzero constant, so `1/4*x`
//! and `x/2` are polynomials.
//!
//! The lexer is shared with the session language, which is why it knows
//! about `;`, `:`, `->`, brackets and comments.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{MonomialOrder, Polynomial};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Arrow,
    Eq,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "`{s}`"),
            TokenKind::Int(n) => write!(f, "`{n}`"),
            TokenKind::Plus => f.write_str("`+`"),
            TokenKind::Minus => f.write_str("`-`"),
            TokenKind::Star => f.write_str("`*`"),
            TokenKind::Slash => f.write_str("`/`"),
            TokenKind::Caret => f.write_str("`^`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::LBracket => f.write_str("`[`"),
            TokenKind::RBracket => f.write_str("`]`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Semi => f.write_str("`;`"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::Arrow => f.write_str("`->`"),
            TokenKind::Eq => f.write_str("`=`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub col: usize,
}

impl ParseError {
    pub fn at(span: Span, message: impl Into<String>) -> Self {
        ParseError { message: message.into(), line: span.line, col: span.col }
    }
}

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut line_start) = (0usize, 1usize, 0usize);
    while i < bytes.len() {
        let c = bytes[i];
        let span_at = |start: usize, end: usize| Span { line, col: start - line_start + 1, start, end };
        if c == b'\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' || (c == b'/' && bytes.get(i + 1) == Some(&b'/')) {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let kind = if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            TokenKind::Ident(src[start..i].to_string())
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            TokenKind::Int(src[start..i].parse().expect("digits"))
        } else {
            i += 1;
            match c {
                b'+' => TokenKind::Plus,
                b'-' if bytes.get(i) == Some(&b'>') => {
                    i += 1;
                    TokenKind::Arrow
                }
                b'-' => TokenKind::Minus,
                b'*' => TokenKind::Star,
                b'/' => TokenKind::Slash,
                b'^' => TokenKind::Caret,
                b'(' => TokenKind::LParen,
                b')' => TokenKind::RParen,
                b'[' => TokenKind::LBracket,
                b']' => TokenKind::RBracket,
                b',' => TokenKind::Comma,
                b';' => TokenKind::Semi,
                b':' => TokenKind::Colon,
                b'=' => TokenKind::Eq,
                _ => {
                    let ch = src[start..].chars().next().unwrap_or('?');
                    return Err(ParseError::at(span_at(start, i), format!("unexpected character {ch:?}")));
                }
            }
        };
        out.push(Token { kind, span: span_at(start, i) });
    }
    let end = Span { line, col: bytes.len() - line_start + 1, start: bytes.len(), end: bytes.len() };
    out.push(Token { kind: TokenKind::Eof, span: end });
    Ok(out)
}

/// Unresolved expression; identifiers are bound to variables later.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String, Span),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Span),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `O(t^k)`: truncation marker, only meaningful in series.
    BigO(Box<Expr>, Span),
}

/// Recursive-descent parser over a token slice.
pub struct ExprParser<'t> {
    tokens: &'t [Token],
    pos: usize,
}

impl<'t> ExprParser<'t> {
    pub fn new(tokens: &'t [Token], pos: usize) -> Self {
        ExprParser { tokens, pos }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> &Token {
        let t = &self.tokens[self.pos.min(self.tokens.len() - 1)];
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    /// Parses one expression; `allow_div` controls whether a top-level `/`
    /// is read as division (parenthesized subexpressions always allow it).
    pub fn expr(&mut self, allow_div: bool) -> Result<Expr, ParseError> {
        let mut lhs = self.term(allow_div)?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term(allow_div)?));
                }
                TokenKind::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term(allow_div)?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self, allow_div: bool) -> Result<Expr, ParseError> {
        let mut lhs = self.unary(allow_div)?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary(allow_div)?));
                }
                TokenKind::Slash if allow_div => {
                    let span = self.bump().span;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary(allow_div)?), span);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self, allow_div: bool) -> Result<Expr, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary(allow_div)?)));
        }
        if self.peek().kind == TokenKind::Plus {
            self.bump();
            return self.unary(allow_div);
        }
        let base = self.atom()?;
        if self.peek().kind == TokenKind::Caret {
            self.bump();
            let tok = self.bump().clone();
            let e = match tok.kind {
                TokenKind::Int(n) => n
                    .to_u32()
                    .ok_or_else(|| ParseError::at(tok.span, "exponent too large"))?,
                other => return Err(ParseError::at(tok.span, format!("expected integer exponent, found {other}"))),
            };
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.bump().clone();
        match tok.kind {
            TokenKind::Int(n) => Ok(Expr::Int(n)),
            TokenKind::Ident(name) if name == "O" && self.peek().kind == TokenKind::LParen => {
                self.bump();
                let inner = self.expr(true)?;
                self.expect_rparen()?;
                Ok(Expr::BigO(Box::new(inner), tok.span))
            }
            TokenKind::Ident(name) => Ok(Expr::Var(name, tok.span)),
            TokenKind::LParen => {
                let inner = self.expr(true)?;
                self.expect_rparen()?;
                Ok(inner)
            }
            other => Err(ParseError::at(tok.span, format!("expected expression, found {other}"))),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        let tok = self.bump().clone();
        if tok.kind != TokenKind::RParen {
            return Err(ParseError::at(tok.span, format!("expected `)`, found {}", tok.kind)));
        }
        Ok(())
    }
}

impl Expr {
    /// Resolves identifiers against `names`.
    pub fn to_polynomial<S: AsRef<str>>(&self, names: &[S], order: MonomialOrder) -> Result<Polynomial, ParseError> {
        let n = names.len();
        Ok(match self {
            Expr::Int(v) => Polynomial::constant(n, order, Rational::from_integer(v.clone())),
            Expr::Var(name, span) => {
                let idx = names
                    .iter()
                    .position(|s| s.as_ref() == name)
                    .ok_or_else(|| ParseError::at(*span, format!("unknown variable `{name}`")))?;
                Polynomial::var(n, order, idx)
            }
            Expr::Add(a, b) => &a.to_polynomial(names, order)? + &b.to_polynomial(names, order)?,
            Expr::Sub(a, b) => &a.to_polynomial(names, order)? - &b.to_polynomial(names, order)?,
            Expr::Mul(a, b) => &a.to_polynomial(names, order)? * &b.to_polynomial(names, order)?,
            Expr::Div(a, b, span) => {
                let den = b.to_polynomial(names, order)?;
                match den.constant_value() {
                    Some(c) if !c.is_zero() => a.to_polynomial(names, order)?.scale(&c.recip()),
                    _ => return Err(ParseError::at(*span, "division is only allowed by a nonzero constant")),
                }
            }
            Expr::Neg(a) => -&a.to_polynomial(names, order)?,
            Expr::Pow(a, e) => a.to_polynomial(names, order)?.pow(*e),
            Expr::BigO(_, span) => return Err(ParseError::at(*span, "`O(...)` is only allowed in branch components")),
        })
    }

    /// Splits a trailing `+ O(t^k)` off a series expression. Returns the
    /// polynomial part and `k` when present.
    pub fn split_truncation(&self) -> Result<(Expr, Option<u32>), ParseError> {
        match self {
            Expr::Add(a, b) => match b.as_ref() {
                Expr::BigO(inner, span) => Ok(((**a).clone(), Some(big_o_exponent(inner, *span)?))),
                _ => {
                    check_no_big_o(b)?;
                    let (rest, k) = a.split_truncation()?;
                    Ok((Expr::Add(Box::new(rest), b.clone()), k))
                }
            },
            Expr::BigO(inner, span) => Ok((Expr::Int(BigInt::zero()), Some(big_o_exponent(inner, *span)?))),
            other => {
                check_no_big_o(other)?;
                Ok((other.clone(), None))
            }
        }
    }
}

fn big_o_exponent(inner: &Expr, span: Span) -> Result<u32, ParseError> {
    match inner {
        Expr::Pow(base, e) if matches!(base.as_ref(), Expr::Var(..)) => Ok(*e),
        Expr::Var(..) => Ok(1),
        Expr::Int(v) if v.is_one() => Ok(0),
        _ => Err(ParseError::at(span, "expected `O(t^k)`")),
    }
}

fn check_no_big_o(e: &Expr) -> Result<(), ParseError> {
    match e {
        Expr::BigO(_, span) => Err(ParseError::at(*span, "`O(...)` must be the last summand")),
        Expr::Int(_) | Expr::Var(..) => Ok(()),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            check_no_big_o(a)?;
            check_no_big_o(b)
        }
        Expr::Neg(a) | Expr::Pow(a, _) => check_no_big_o(a),
    }
}

/// Parses a complete polynomial over the given variable names.
pub fn parse_polynomial<S: AsRef<str>>(text: &str, names: &[S], order: MonomialOrder) -> Result<Polynomial, ParseError> {
    let tokens = lex(text)?;
    let mut p = ExprParser::new(&tokens, 0);
    let e = p.expr(true)?;
    let tok = &tokens[p.position()];
    if tok.kind != TokenKind::Eof {
        return Err(ParseError::at(tok.span, format!("unexpected {}", tok.kind)));
    }
    e.to_polynomial(names, order)
}

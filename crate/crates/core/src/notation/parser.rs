//! Recursive-descent parser for the linear expression grammar:
//!
//! ```text
//! expr    := ["-"] term (("+" | "-") term)*
//! term    := factor (("*" | "/") factor)*
//! factor  := primary ["^" int]
//! primary := number | label | "sqrt" "(" expr ")" | "(" expr ")"
//! ```
//!
//! Numbers fold into the term's coefficient, `sqrt(n)` becomes a square-free
//! root (with any square part moved to the coefficient), parentheses become
//! groups, and every factor after a `/` lands in the denominator.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::lexer::{lex, Tok, Token};
use super::ParseError;
use crate::expr::{push_factor, Atom, Equation, Expr, Factor, Sign, Term};
use crate::label::Label;
use crate::surd::{squarefree_decompose, SurdError};

/// Cursor over a token slice, shared with the script parser.
pub struct TokenStream<'a> {
    tokens: &'a [Token],
    pos: usize,
    /// Position reported when the input runs out.
    end: (usize, usize),
}

impl<'a> TokenStream<'a> {
    pub fn new(tokens: &'a [Token], end: (usize, usize)) -> Self {
        TokenStream { tokens, pos: 0, end }
    }

    pub fn peek(&self) -> Option<&'a Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    pub fn advance(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        self.pos += t.is_some() as usize;
        t
    }

    pub fn is_done(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn position(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end)
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.position();
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    /// Consumes an identifier equal to `word`.
    pub fn eat_word(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(w)) if w == word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let v = n.to_u64().ok_or_else(|| self.error("integer out of range"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    pub fn expect_label(&mut self) -> Result<Label, ParseError> {
        let (line, column) = self.position();
        match self.advance().map(|t| &t.tok) {
            Some(Tok::Ident(name)) | Some(Tok::Glyph(name)) => {
                Label::lookup(name).ok_or_else(|| ParseError::UnknownLabel {
                    name: name.clone(),
                    line,
                    column,
                })
            }
            _ => Err(ParseError::Syntax {
                line,
                column,
                message: "expected a label".into(),
            }),
        }
    }
}

enum Primary {
    Number(BigUint),
    /// `outside · √core` from `sqrt(n)`.
    Root {
        outside: u64,
        core: u64,
    },
    Atom(Atom),
}

#[derive(Default)]
struct TermBuilder {
    negative: bool,
    zero: bool,
    numer: BigUint,
    denom: BigUint,
    factors: Vec<Factor>,
    divisors: Vec<Factor>,
}

impl TermBuilder {
    fn new(negative: bool) -> Self {
        TermBuilder {
            negative,
            numer: BigUint::one(),
            denom: BigUint::one(),
            ..Default::default()
        }
    }

    fn multiply(&mut self, p: Primary, power: u32) {
        match p {
            Primary::Number(n) => {
                if n.is_zero() {
                    self.zero = true;
                }
                self.numer *= n.pow(power);
            }
            Primary::Root { outside, core } => {
                if outside == 0 {
                    self.zero = true;
                }
                self.numer *= BigUint::from(outside).pow(power);
                if core > 1 {
                    push_factor(&mut self.factors, Factor::new(Atom::Sqrt(core), power));
                }
            }
            Primary::Atom(Atom::Group(e)) if e.is_zero() => self.zero = true,
            Primary::Atom(a) => push_factor(&mut self.factors, Factor::new(a, power)),
        }
    }

    /// Returns false on a division by zero.
    fn divide(&mut self, p: Primary, power: u32) -> bool {
        match p {
            Primary::Number(n) => {
                if n.is_zero() {
                    return false;
                }
                self.denom *= n.pow(power);
            }
            Primary::Root { outside, core } => {
                if outside == 0 {
                    return false;
                }
                self.denom *= BigUint::from(outside).pow(power);
                if core > 1 {
                    push_factor(&mut self.divisors, Factor::new(Atom::Sqrt(core), power));
                }
            }
            Primary::Atom(Atom::Group(e)) if e.is_zero() => return false,
            Primary::Atom(a) => push_factor(&mut self.divisors, Factor::new(a, power)),
        }
        true
    }

    fn finish(self) -> Option<Term> {
        if self.zero {
            return None;
        }
        let sign = if self.negative { Sign::Minus } else { Sign::Plus };
        Some(Term::new(sign, self.numer, self.denom, self.factors, self.divisors))
    }
}

/// Parses an expression from the stream, stopping at the first token that
/// cannot continue it.
pub fn parse_expr_from(ts: &mut TokenStream<'_>) -> Result<Expr, ParseError> {
    let mut terms = Vec::new();
    let mut negative = if ts.eat(&Tok::Minus) {
        true
    } else {
        ts.eat(&Tok::Plus);
        false
    };
    loop {
        if let Some(t) = parse_term(ts, negative)? {
            terms.push(t);
        }
        if ts.eat(&Tok::Plus) {
            negative = false;
        } else if ts.eat(&Tok::Minus) {
            negative = true;
        } else {
            break;
        }
    }
    Ok(Expr::new(terms))
}

fn parse_term(ts: &mut TokenStream<'_>, negative: bool) -> Result<Option<Term>, ParseError> {
    let mut builder = TermBuilder::new(negative);
    let (p, power) = parse_factor(ts)?;
    builder.multiply(p, power);
    loop {
        if ts.eat(&Tok::Star) {
            let (p, power) = parse_factor(ts)?;
            builder.multiply(p, power);
        } else if matches!(ts.peek(), Some(Tok::Slash)) {
            ts.advance();
            let at = ts.position();
            let (p, power) = parse_factor(ts)?;
            if !builder.divide(p, power) {
                return Err(ParseError::Syntax {
                    line: at.0,
                    column: at.1,
                    message: "division by zero".into(),
                });
            }
        } else {
            break;
        }
    }
    Ok(builder.finish())
}

fn parse_factor(ts: &mut TokenStream<'_>) -> Result<(Primary, u32), ParseError> {
    let p = parse_primary(ts)?;
    if ts.eat(&Tok::Caret) {
        let e = ts.expect_int()?;
        if e == 0 || e > u32::MAX as u64 {
            return Err(ts.error("exponent must be a positive integer"));
        }
        return Ok((p, e as u32));
    }
    Ok((p, 1))
}

fn parse_primary(ts: &mut TokenStream<'_>) -> Result<Primary, ParseError> {
    let (line, column) = ts.position();
    let Some(token) = ts.advance() else {
        return Err(ts.error("unexpected end of input"));
    };
    match &token.tok {
        Tok::Num(n) => Ok(Primary::Number(n.clone())),
        Tok::LParen => {
            let inner = parse_expr_from(ts)?;
            ts.expect(&Tok::RParen, "')'")?;
            Ok(Primary::Atom(Atom::group(inner)))
        }
        Tok::Ident(w) if w == "sqrt" => {
            ts.expect(&Tok::LParen, "'(' after sqrt")?;
            let inner = parse_expr_from(ts)?;
            ts.expect(&Tok::RParen, "')'")?;
            sqrt_primary(inner, line, column)
        }
        Tok::Ident(name) | Tok::Glyph(name) => {
            Label::lookup(name)
                .map(|l| Primary::Atom(Atom::Var(l)))
                .ok_or_else(|| ParseError::UnknownLabel {
                    name: name.clone(),
                    line,
                    column,
                })
        }
        other => Err(ParseError::Syntax {
            line,
            column,
            message: format!("unexpected {}", describe(other)),
        }),
    }
}

fn sqrt_primary(inner: Expr, line: usize, column: usize) -> Result<Primary, ParseError> {
    let integer = match inner.terms() {
        [] => Some(0u64),
        [t] if t.sign() == Sign::Plus && t.factors().is_empty() && !t.is_quotient() => t.numer().to_u64(),
        _ => None,
    };
    match integer {
        Some(n) => {
            let (outside, core) = squarefree_decompose(n).map_err(|e| match e {
                SurdError::RadicandTooLarge(n) => ParseError::RadicandTooLarge {
                    radicand: n,
                    line,
                    column,
                },
                SurdError::DivisionByZero => unreachable!("decomposition never divides"),
            })?;
            Ok(Primary::Root { outside, core })
        }
        None => Ok(Primary::Atom(Atom::Radical(Box::new(inner)))),
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(w) | Tok::Glyph(w) => format!("'{w}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Assign => "'='".into(),
        Tok::EqEq => "'=='".into(),
        Tok::Arrow => "'=>'".into(),
    }
}

fn end_position(text: &str) -> (usize, usize) {
    let line = text.lines().count().max(1);
    let column = text.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1);
    (line, column)
}

fn leftover(ts: &TokenStream<'_>) -> ParseError {
    match ts.peek() {
        Some(tok) => ts.error(format!("unexpected {}", describe(tok))),
        None => ts.error("unexpected end of input"),
    }
}

/// Parses a complete expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let tokens = lex(text, 1, 1)?;
    let mut ts = TokenStream::new(&tokens, end_position(text));
    if ts.is_done() {
        return Err(ts.error("empty expression"));
    }
    let e = parse_expr_from(&mut ts)?;
    if !ts.is_done() {
        return Err(leftover(&ts));
    }
    Ok(e)
}

/// Parses `lhs == rhs` (a single `=` is also accepted).
pub fn parse_equation(text: &str) -> Result<Equation, ParseError> {
    let tokens = lex(text, 1, 1)?;
    let mut ts = TokenStream::new(&tokens, end_position(text));
    let q = parse_equation_from(&mut ts)?;
    if !ts.is_done() {
        return Err(leftover(&ts));
    }
    Ok(q)
}

pub fn parse_equation_from(ts: &mut TokenStream<'_>) -> Result<Equation, ParseError> {
    if ts.is_done() {
        return Err(ts.error("empty equation"));
    }
    let lhs = parse_expr_from(ts)?;
    if !(ts.eat(&Tok::EqEq) || ts.eat(&Tok::Assign)) {
        return Err(ts.error("expected '=='"));
    }
    let rhs = parse_expr_from(ts)?;
    Ok(Equation::new(lhs, rhs))
}

//! Tokens for the linear expression grammar and the script clauses built on it.

use num_bigint::BigUint;

use super::ParseError;
use crate::label::Label;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Num(BigUint),
    Ident(String),
    /// A kanji label glyph such as 甲 or 方斜.
    Glyph(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Assign,
    EqEq,
    Arrow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Tokenises `text`. `line` and `column` locate its first character in the
/// enclosing source, for error messages.
pub fn lex(text: &str, line: usize, column: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = column + i;
        let simple = |tok| Token { tok, line, column: col };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits.parse::<BigUint>().expect("ascii digits");
                tokens.push(simple(Tok::Num(n)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(simple(Tok::Ident(chars[start..i].iter().collect())));
            }
            '+' => {
                tokens.push(simple(Tok::Plus));
                i += 1;
            }
            '-' | '−' => {
                tokens.push(simple(Tok::Minus));
                i += 1;
            }
            '*' | '·' | '×' => {
                tokens.push(simple(Tok::Star));
                i += 1;
            }
            '/' | '÷' => {
                tokens.push(simple(Tok::Slash));
                i += 1;
            }
            '^' => {
                tokens.push(simple(Tok::Caret));
                i += 1;
            }
            '(' => {
                tokens.push(simple(Tok::LParen));
                i += 1;
            }
            ')' => {
                tokens.push(simple(Tok::RParen));
                i += 1;
            }
            ',' => {
                tokens.push(simple(Tok::Comma));
                i += 1;
            }
            '=' => match chars.get(i + 1) {
                Some('=') => {
                    tokens.push(simple(Tok::EqEq));
                    i += 2;
                }
                Some('>') => {
                    tokens.push(simple(Tok::Arrow));
                    i += 2;
                }
                _ => {
                    tokens.push(simple(Tok::Assign));
                    i += 1;
                }
            },
            _ => {
                // Two-character glyphs first (方斜), then single stems.
                let pair: String = chars[i..chars.len().min(i + 2)].iter().collect();
                if pair.chars().count() == 2 && Label::from_kanji(&pair).is_some() {
                    tokens.push(simple(Tok::Glyph(pair)));
                    i += 2;
                } else if Label::from_kanji(&c.to_string()).is_some() {
                    tokens.push(simple(Tok::Glyph(c.to_string())));
                    i += 1;
                } else {
                    return Err(ParseError::Syntax {
                        line,
                        column: col,
                        message: format!("unexpected character '{c}'"),
                    });
                }
            }
        }
    }
    Ok(tokens)
}

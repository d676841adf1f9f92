//! Reading and writing expressions: the linear transcription grammar, the
//! side-writing column layout, kanji numerals and traditional lengths.

mod lexer;
mod numeral;
mod parser;
mod render;
mod sidewriting;
mod units;

use thiserror::Error;

pub use lexer::{lex, Tok, Token};
pub use numeral::{format_kanji_numeral, parse_kanji_numeral, NumeralError};
pub use parser::{parse_equation, parse_equation_from, parse_expr, parse_expr_from, TokenStream};
pub use render::render_modern;
pub use sidewriting::{render_sidewriting, render_triptych, GlyphMode};
pub use units::{format_traditional_length, parse_decimal, parse_traditional_length, LengthError, TraditionalLength};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown label '{name}'")]
    UnknownLabel { name: String, line: usize, column: usize },
    #[error("{line}:{column}: radicand {radicand} is too large to normalise")]
    RadicandTooLarge { radicand: u64, line: usize, column: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::UnknownLabel { line, .. }
            | ParseError::RadicandTooLarge { line, .. } => *line,
        }
    }
}

//! Side-writing: the column layout of traditional tenzan jutsu.
//!
//! Each term is one column. Its coefficient is a run of vertical strokes
//! (one per unit; above nine the numeral is written before a single stroke),
//! negation crosses the stroke, the denominator sits left of the stroke and
//! factor glyphs run top to bottom to its right. Columns are separated by
//! blank space, which reads as addition.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use unicode_width::UnicodeWidthStr;

use super::numeral::format_kanji_numeral;
use crate::expr::{Atom, Expr, Factor, Sign, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlyphMode {
    Kanji,
    Ascii,
}

struct Glyphs {
    stroke: &'static str,
    negate: &'static str,
    root: &'static str,
    plus: &'static str,
    minus: &'static str,
    over: &'static str,
    zero: &'static str,
}

const ASCII: Glyphs = Glyphs {
    stroke: "|",
    negate: "X",
    root: "sqrt",
    plus: "+",
    minus: "-",
    over: "/",
    zero: "0",
};

const KANJI: Glyphs = Glyphs {
    stroke: "丨",
    negate: "乂",
    root: "商",
    plus: "加",
    minus: "去",
    over: "除",
    zero: "〇",
};

impl GlyphMode {
    fn glyphs(self) -> &'static Glyphs {
        match self {
            GlyphMode::Ascii => &ASCII,
            GlyphMode::Kanji => &KANJI,
        }
    }

    fn numeral(self, n: &BigUint) -> String {
        match (self, n.to_u64()) {
            (GlyphMode::Kanji, Some(v)) => format_kanji_numeral(v).unwrap_or_else(|_| n.to_string()),
            _ => n.to_string(),
        }
    }
}

fn power_marker(power: u32, mode: GlyphMode) -> String {
    match mode {
        GlyphMode::Ascii => format!("^{power}"),
        GlyphMode::Kanji if power == 2 => "自乘".to_string(),
        GlyphMode::Kanji => format!("{}乘", mode.numeral(&power.into())),
    }
}

fn factor_lines(f: &Factor, mode: GlyphMode) -> Vec<String> {
    let g = mode.glyphs();
    let mut lines = match &f.atom {
        Atom::Var(l) => vec![l.glyph(mode == GlyphMode::Kanji)],
        Atom::Sqrt(r) => vec![mode.numeral(&(*r).into()), g.root.to_string()],
        Atom::Group(e) => group_lines(e, mode),
        Atom::Radical(e) => {
            let mut v = group_lines(e, mode);
            v.push(g.root.to_string());
            v
        }
    };
    if f.power > 1 {
        lines.push(power_marker(f.power, mode));
    }
    lines
}

/// The glyphs of a nested sum, one per line, with sign words between terms.
fn group_lines(e: &Expr, mode: GlyphMode) -> Vec<String> {
    let g = mode.glyphs();
    let mut lines = Vec::new();
    for (i, t) in e.terms().iter().enumerate() {
        if i > 0 || t.sign().is_negative() {
            lines.push(if t.sign().is_negative() { g.minus } else { g.plus }.to_string());
        }
        if !t.numer().is_one() || t.factors().is_empty() {
            lines.push(mode.numeral(t.numer()));
        }
        for f in t.factors() {
            lines.extend(factor_lines(f, mode));
        }
        if t.is_quotient() {
            lines.push(format!("{}{}", g.over, denominator_text(t, mode)));
        }
    }
    lines
}

/// The denominator written on one line: numeral then divisor glyphs.
fn denominator_text(t: &Term, mode: GlyphMode) -> String {
    let mut out = String::new();
    if !t.denom().is_one() {
        out.push_str(&mode.numeral(t.denom()));
    }
    for d in t.divisors() {
        out.push_str(&factor_lines(d, mode).concat());
    }
    out
}

fn pad(s: &str, width: usize) -> String {
    let w = UnicodeWidthStr::width(s);
    format!("{s}{}", " ".repeat(width.saturating_sub(w)))
}

/// The rows of one term's column.
fn term_column(t: &Term, mode: GlyphMode) -> Vec<String> {
    let g = mode.glyphs();
    let strokes = match t.numer().to_u64() {
        Some(n @ 1..=9) => g.stroke.repeat(n as usize),
        _ => format!("{}{}", mode.numeral(t.numer()), g.stroke),
    };
    let negate = if t.sign() == Sign::Minus { g.negate } else { "" };
    let denominator = if t.is_quotient() {
        denominator_text(t, mode)
    } else {
        String::new()
    };
    let mut body: Vec<String> = t.factors().iter().flat_map(|f| factor_lines(f, mode)).collect();
    if body.is_empty() {
        body.push(String::new());
    }
    let lead = UnicodeWidthStr::width(denominator.as_str()) + UnicodeWidthStr::width(negate);
    body.iter()
        .enumerate()
        .map(|(i, line)| {
            if i == 0 {
                format!("{denominator}{negate}{strokes}{line}")
            } else {
                format!("{}{strokes}{line}", " ".repeat(lead))
            }
        })
        .collect()
}

fn join_columns(columns: &[Vec<String>]) -> String {
    let height = columns.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = columns
        .iter()
        .map(|c| c.iter().map(|l| UnicodeWidthStr::width(l.as_str())).max().unwrap_or(0))
        .collect();
    let mut out = Vec::with_capacity(height);
    for row in 0..height {
        let cells: Vec<String> = columns
            .iter()
            .zip(&widths)
            .map(|(c, &w)| pad(c.get(row).map(String::as_str).unwrap_or(""), w))
            .collect();
        out.push(cells.join("  ").trim_end().to_string());
    }
    out.join("\n")
}

pub fn render_sidewriting(e: &Expr, mode: GlyphMode) -> String {
    if e.is_zero() {
        return mode.glyphs().zero.to_string();
    }
    let columns: Vec<Vec<String>> = e.terms().iter().map(|t| term_column(t, mode)).collect();
    join_columns(&columns)
}

/// Original, transcription and translation side by side, one term per
/// block: the kanji column, the ASCII column, and the signed modern term.
/// With `ascii_only` the kanji column is left out.
pub fn render_triptych(e: &Expr, ascii_only: bool) -> String {
    let rows: Vec<(Vec<String>, Vec<String>, String)> = if e.is_zero() {
        vec![(
            vec![KANJI.zero.to_string()],
            vec![ASCII.zero.to_string()],
            "0".to_string(),
        )]
    } else {
        e.terms()
            .iter()
            .map(|t| {
                let modern = match t.sign() {
                    Sign::Plus => format!("(+) {t}"),
                    Sign::Minus => format!("- {}", t.with_sign(Sign::Plus)),
                };
                (
                    term_column(t, GlyphMode::Kanji),
                    term_column(t, GlyphMode::Ascii),
                    modern,
                )
            })
            .collect()
    };
    let width =
        |cols: &mut dyn Iterator<Item = &String>| cols.map(|l| UnicodeWidthStr::width(l.as_str())).max().unwrap_or(0);
    let wk = width(&mut rows.iter().flat_map(|r| r.0.iter()));
    let wa = width(&mut rows.iter().flat_map(|r| r.1.iter()));
    let mut out = Vec::new();
    for (kanji, ascii, modern) in &rows {
        for i in 0..kanji.len().max(ascii.len()) {
            let mut cells = Vec::new();
            if !ascii_only {
                cells.push(pad(kanji.get(i).map(String::as_str).unwrap_or(""), wk));
            }
            cells.push(pad(ascii.get(i).map(String::as_str).unwrap_or(""), wa));
            cells.push(if i == 0 { modern.clone() } else { String::new() });
            out.push(cells.join("  ").trim_end().to_string());
        }
    }
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_expr;

    fn ascii(s: &str) -> String {
        render_sidewriting(&parse_expr(s).unwrap(), GlyphMode::Ascii)
    }

    fn kanji(s: &str) -> String {
        render_sidewriting(&parse_expr(s).unwrap(), GlyphMode::Kanji)
    }

    #[test]
    fn figure_one_columns() {
        assert_eq!(ascii("a + b/2 - c"), "|a  2|b  X|c");
        assert_eq!(kanji("a + b/2 - c"), "丨甲  二丨乙  乂丨丙");
    }

    #[test]
    fn tally_strokes() {
        assert_eq!(ascii("a"), "|a");
        assert_eq!(ascii("2*a"), "||a");
        assert_eq!(kanji("2*a"), "丨丨甲");
        assert_eq!(ascii("12*a"), "12|a");
        assert_eq!(kanji("12*a"), "十二丨甲");
    }

    #[test]
    fn denominators_sit_left_of_the_stroke() {
        assert_eq!(ascii("a/b"), "b|a");
        assert_eq!(kanji("a/b"), "乙丨甲");
    }

    #[test]
    fn first_display_of_the_derivation() {
        assert_eq!(ascii("sqrt(2)*b + a + b"), "|2     |a  |b\n|sqrt\n|b");
        assert_eq!(kanji("sqrt(2)*b + a + b"), "丨二  丨甲  丨乙\n丨商\n丨乙");
    }

    #[test]
    fn groups_and_powers() {
        assert_eq!(ascii("b*(sqrt(2) + 1)"), "|b\n|2\n|sqrt\n|+\n|1");
        assert_eq!(kanji("a^2"), "丨甲\n丨自乘");
        assert_eq!(ascii("-(a - b)^2"), "X|a\n |-\n |b\n |^2");
    }

    #[test]
    fn zero() {
        assert_eq!(ascii("0"), "0");
        assert_eq!(kanji("0"), "〇");
    }

    #[test]
    fn triptych_lines_up_three_renderings() {
        let e = parse_expr("a + b/2 - c").unwrap();
        assert_eq!(
            render_triptych(&e, false),
            "丨甲    |a   (+) a\n二丨乙  2|b  (+) b/2\n乂丨丙  X|c  - c"
        );
        assert_eq!(render_triptych(&e, true), "|a   (+) a\n2|b  (+) b/2\nX|c  - c");
    }

    #[test]
    fn rendering_is_deterministic() {
        let e = parse_expr("b*(sqrt(2) + 1) - sqrt(2)*a*(sqrt(2) - 1)*(sqrt(2) + 1)").unwrap();
        assert_eq!(
            render_sidewriting(&e, GlyphMode::Kanji),
            render_sidewriting(&e, GlyphMode::Kanji)
        );
    }
}

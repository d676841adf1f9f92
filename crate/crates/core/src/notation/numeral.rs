//! Kanji numerals 一 … 九千九百九十九, largest place first.

use thiserror::Error;

pub const DIGITS: [char; 9] = ['一', '二', '三', '四', '五', '六', '七', '八', '九'];
const PLACES: [(char, u32); 3] = [('千', 1000), ('百', 100), ('十', 10)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumeralError {
    #[error("malformed kanji numeral '{0}'")]
    Malformed(String),
    #[error("{0} is outside the supported range 1-9999")]
    OutOfRange(u64),
}

pub(crate) fn digit_value(c: char) -> Option<u32> {
    DIGITS.iter().position(|&d| d == c).map(|i| i as u32 + 1)
}

fn place_value(c: char) -> Option<u32> {
    PLACES.iter().find(|(p, _)| *p == c).map(|&(_, v)| v)
}

pub fn parse_kanji_numeral(text: &str) -> Result<u32, NumeralError> {
    let malformed = || NumeralError::Malformed(text.to_string());
    if text.is_empty() {
        return Err(malformed());
    }
    let mut total = 0;
    let mut pending: Option<u32> = None;
    let mut last_place = 10_000;
    for c in text.chars() {
        if let Some(d) = digit_value(c) {
            if pending.is_some() {
                return Err(malformed());
            }
            pending = Some(d);
        } else if let Some(place) = place_value(c) {
            if place >= last_place {
                return Err(malformed());
            }
            total += pending.take().unwrap_or(1) * place;
            last_place = place;
        } else {
            return Err(malformed());
        }
    }
    if let Some(d) = pending {
        if last_place == 1 {
            return Err(malformed());
        }
        total += d;
    }
    Ok(total)
}

/// `15 → 十五`, `20 → 二十`, `1000 → 千`.
pub fn format_kanji_numeral(n: u64) -> Result<String, NumeralError> {
    if !(1..=9999).contains(&n) {
        return Err(NumeralError::OutOfRange(n));
    }
    let n = n as u32;
    let mut out = String::new();
    for (glyph, place) in PLACES {
        let d = n / place % 10;
        if d > 1 {
            out.push(DIGITS[d as usize - 1]);
        }
        if d > 0 {
            out.push(glyph);
        }
    }
    let units = n % 10;
    if units > 0 {
        out.push(DIGITS[units as usize - 1]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn place_value_examples() {
        assert_eq!(parse_kanji_numeral("十五"), Ok(15));
        assert_eq!(parse_kanji_numeral("二十"), Ok(20));
        assert_eq!(parse_kanji_numeral("七"), Ok(7));
        assert_eq!(parse_kanji_numeral("千九百九十九"), Ok(1999));
        assert_eq!(parse_kanji_numeral("一千"), Ok(1000));
        assert_eq!(parse_kanji_numeral("三百五"), Ok(305));
    }

    #[test]
    fn malformed_numerals() {
        for bad in ["", "五五", "十百", "十十", "甲", "五 "] {
            assert!(
                matches!(parse_kanji_numeral(bad), Err(NumeralError::Malformed(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_kanji_numeral(15).unwrap(), "十五");
        assert_eq!(format_kanji_numeral(20).unwrap(), "二十");
        assert_eq!(format_kanji_numeral(1010).unwrap(), "千十");
        assert_eq!(format_kanji_numeral(0), Err(NumeralError::OutOfRange(0)));
        assert_eq!(format_kanji_numeral(10_000), Err(NumeralError::OutOfRange(10_000)));
    }
}

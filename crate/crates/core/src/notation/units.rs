//! Traditional lengths: 1 寸 (sun) = 10 分 (bu) = 100 厘 (rin) = 1000 毛 (mō).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::numeral::{digit_value, format_kanji_numeral, parse_kanji_numeral, DIGITS};
use crate::surd::SurdNumber;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LengthError {
    #[error("malformed length '{0}'")]
    Malformed(String),
    #[error("unit {0} appears more than once")]
    RepeatedUnit(char),
    #[error("length must be nonnegative")]
    NegativeLength,
    #[error("length of {0} sun is too large to write")]
    TooLarge(String),
}

const UNITS: [char; 4] = ['寸', '分', '厘', '毛'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TraditionalLength {
    pub sun: u32,
    pub bu: u8,
    pub rin: u8,
    pub mo: u8,
}

impl TraditionalLength {
    /// From a count of mō (thousandths of a sun).
    pub fn from_mo(total: u64) -> TraditionalLength {
        TraditionalLength {
            sun: (total / 1000) as u32,
            bu: (total / 100 % 10) as u8,
            rin: (total / 10 % 10) as u8,
            mo: (total % 10) as u8,
        }
    }

    pub fn total_mo(&self) -> u64 {
        self.sun as u64 * 1000 + self.bu as u64 * 100 + self.rin as u64 * 10 + self.mo as u64
    }

    /// The exact value in sun.
    pub fn value_in_sun(&self) -> BigRational {
        BigRational::new(BigInt::from(self.total_mo()), BigInt::from(1000))
    }

    /// Decimal value in sun with trailing zeros dropped: `0.585`, `1`, `1.5`.
    pub fn decimal(&self) -> String {
        let frac = format!("{}{}{}", self.bu, self.rin, self.mo);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            self.sun.to_string()
        } else {
            format!("{}.{frac}", self.sun)
        }
    }

    /// ASCII reading, e.g. `5 bu 8 rin 5 mo`.
    pub fn romanized(&self) -> String {
        let parts: Vec<String> = [
            (self.sun, "sun"),
            (self.bu as u32, "bu"),
            (self.rin as u32, "rin"),
            (self.mo as u32, "mo"),
        ]
        .iter()
        .filter(|(n, _)| *n > 0)
        .map(|(n, unit)| format!("{n} {unit}"))
        .collect();
        if parts.is_empty() {
            "0 sun".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Kanji form, omitting zero units: `五分八厘五毛`, `一寸`.
impl fmt::Display for TraditionalLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total_mo() == 0 {
            return write!(f, "〇寸");
        }
        if self.sun > 0 {
            let numeral = format_kanji_numeral(self.sun as u64).map_err(|_| fmt::Error)?;
            write!(f, "{numeral}寸")?;
        }
        for (d, unit) in [(self.bu, '分'), (self.rin, '厘'), (self.mo, '毛')] {
            if d > 0 {
                write!(f, "{}{unit}", DIGITS[d as usize - 1])?;
            }
        }
        Ok(())
    }
}

pub fn parse_traditional_length(text: &str) -> Result<TraditionalLength, LengthError> {
    let malformed = || LengthError::Malformed(text.to_string());
    let mut out = TraditionalLength::default();
    let mut seen = [false; 4];
    let mut last: Option<usize> = None;
    let mut numeral = String::new();
    for c in text.trim().chars() {
        let Some(unit) = UNITS.iter().position(|&u| u == c) else {
            numeral.push(c);
            continue;
        };
        if seen[unit] {
            return Err(LengthError::RepeatedUnit(c));
        }
        if last.is_some_and(|l| unit < l) {
            return Err(malformed());
        }
        seen[unit] = true;
        last = Some(unit);
        if unit == 0 {
            out.sun = parse_kanji_numeral(&numeral).map_err(|_| malformed())?;
        } else {
            let mut chars = numeral.chars();
            let d = match (chars.next(), chars.next()) {
                (Some(c), None) => digit_value(c).ok_or_else(malformed)?,
                _ => return Err(malformed()),
            } as u8;
            match unit {
                1 => out.bu = d,
                2 => out.rin = d,
                _ => out.mo = d,
            }
        }
        numeral.clear();
    }
    if !numeral.is_empty() || last.is_none() {
        return Err(malformed());
    }
    Ok(out)
}

/// Writes a nonnegative value in kanji units, truncated (not rounded) at
/// the mō digit.
pub fn format_traditional_length(value: &SurdNumber) -> Result<TraditionalLength, LengthError> {
    if value.signum() < 0 {
        return Err(LengthError::NegativeLength);
    }
    let mo = value.floor_scaled(3);
    let total = mo
        .to_u64()
        .filter(|&m| m / 1000 <= 9999)
        .ok_or_else(|| LengthError::TooLarge(value.to_decimal(9)))?;
    Ok(TraditionalLength::from_mo(total))
}

/// Parses a plain decimal such as `0.5857864` or `1` exactly.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = BigInt::from(10).pow(frac_part.len() as u32);
    let q = BigRational::new(digits, scale);
    Some(if negative && !q.is_zero() { -q.abs() } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tablet_answer_parses() {
        let len = parse_traditional_length("五分八厘五毛").unwrap();
        assert_eq!(
            len,
            TraditionalLength {
                sun: 0,
                bu: 5,
                rin: 8,
                mo: 5
            }
        );
        assert_eq!(len.value_in_sun(), BigRational::new(585.into(), 1000.into()));
        assert_eq!(len.decimal(), "0.585");
        assert_eq!(len.romanized(), "5 bu 8 rin 5 mo");
    }

    #[test]
    fn whole_and_mixed_lengths() {
        assert_eq!(parse_traditional_length("一寸").unwrap().decimal(), "1");
        assert_eq!(parse_traditional_length("一寸五分").unwrap().decimal(), "1.5");
        assert_eq!(parse_traditional_length("十二寸三毛").unwrap().decimal(), "12.003");
    }

    #[test]
    fn unit_order_is_enforced() {
        assert_eq!(
            parse_traditional_length("五分五分"),
            Err(LengthError::RepeatedUnit('分'))
        );
        assert!(matches!(
            parse_traditional_length("五毛八厘"),
            Err(LengthError::Malformed(_))
        ));
        assert!(matches!(parse_traditional_length("分"), Err(LengthError::Malformed(_))));
        assert!(matches!(
            parse_traditional_length("十分"),
            Err(LengthError::Malformed(_))
        ));
        assert!(matches!(
            parse_traditional_length("五分八"),
            Err(LengthError::Malformed(_))
        ));
        assert!(matches!(parse_traditional_length(""), Err(LengthError::Malformed(_))));
    }

    #[test]
    fn formatting_truncates_at_mo() {
        let two_minus_root = &SurdNumber::from_integer(2) - &SurdNumber::sqrt_of(2).unwrap();
        assert_eq!(
            format_traditional_length(&two_minus_root).unwrap().to_string(),
            "五分八厘五毛"
        );
        let exact = SurdNumber::from_rational(parse_decimal("0.585").unwrap());
        assert_eq!(format_traditional_length(&exact).unwrap().to_string(), "五分八厘五毛");
        assert_eq!(
            format_traditional_length(&SurdNumber::one()).unwrap().to_string(),
            "一寸"
        );
        assert_eq!(
            format_traditional_length(&SurdNumber::from_integer(-1)),
            Err(LengthError::NegativeLength)
        );
    }

    #[test]
    fn decimals() {
        assert_eq!(
            parse_decimal("0.5857864").unwrap(),
            BigRational::new(5_857_864.into(), 10_000_000.into())
        );
        assert_eq!(parse_decimal("1.0").unwrap(), BigRational::from_integer(1.into()));
        assert_eq!(parse_decimal(".5").unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(parse_decimal("1.2.3").is_none());
        assert!(parse_decimal("abc").is_none());
        assert!(parse_decimal(".").is_none());
    }
}

//! Exact arithmetic in the field of rationals extended by square roots of
//! square-free integers.
//!
//! A [`SurdNumber`] is a finite sum `q₁·√r₁ + q₂·√r₂ + …` with rational
//! coefficients and distinct square-free radicands; radicand 1 carries the
//! rational part. The set is closed under `+`, `-`, `*` and (for nonzero
//! divisors) division, so every identity the rules rely on checks exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest integer accepted for square-free screening.
pub const MAX_RADICAND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurdError {
    #[error("radicand {0} exceeds the supported maximum of {MAX_RADICAND}")]
    RadicandTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// Splits `n` into `(outside, core)` with `n = outside² · core` and `core`
/// square-free. `0` maps to `(0, 1)`.
pub fn squarefree_decompose(n: u64) -> Result<(u64, u64), SurdError> {
    if n > MAX_RADICAND {
        return Err(SurdError::RadicandTooLarge(n));
    }
    if n == 0 {
        return Ok((0, 1));
    }
    let mut outside = 1u64;
    let mut core = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut count = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            count += 1;
        }
        outside *= p.pow(count / 2);
        if !count.is_multiple_of(2) {
            core *= p;
        }
        p += 1;
    }
    core *= rest;
    Ok((outside, core))
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    n
}

/// An exact element of ℚ(√2, √3, √5, …).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SurdNumber {
    coefficients: BTreeMap<u64, BigRational>,
}

impl SurdNumber {
    pub fn zero() -> Self {
        SurdNumber::default()
    }

    pub fn one() -> Self {
        SurdNumber::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        SurdNumber::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        SurdNumber::term(q, 1)
    }

    /// `q·√radicand`; the radicand must already be square-free.
    fn term(q: BigRational, radicand: u64) -> Self {
        debug_assert!(is_squarefree(radicand));
        let mut coefficients = BTreeMap::new();
        if !q.is_zero() {
            coefficients.insert(radicand, q);
        }
        SurdNumber { coefficients }
    }

    /// `√n`, normalised to square-free form (`√8` becomes `2√2`).
    pub fn sqrt_of(n: u64) -> Result<Self, SurdError> {
        let (outside, core) = squarefree_decompose(n)?;
        Ok(SurdNumber::term(BigRational::from_integer(BigInt::from(outside)), core))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, when it has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coefficients.len() {
            0 => Some(BigRational::zero()),
            1 => self.coefficients.get(&1).cloned(),
            _ => None,
        }
    }

    /// `(q, r)` when the value is a single term `q·√r`.
    pub fn as_single_term(&self) -> Option<(BigRational, u64)> {
        match self.coefficients.len() {
            0 => Some((BigRational::zero(), 1)),
            1 => self.coefficients.iter().next().map(|(&r, q)| (q.clone(), r)),
            _ => None,
        }
    }

    /// Iterates `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coefficients.iter().map(|(&r, q)| (r, q))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return SurdNumber::zero();
        }
        SurdNumber {
            coefficients: self.coefficients.iter().map(|(&r, c)| (r, c * q)).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = SurdNumber::one();
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Applies the field automorphism `√p ↦ −√p` for the prime `p`.
    fn conjugate(&self, p: u64) -> Self {
        SurdNumber {
            coefficients: self
                .coefficients
                .iter()
                .map(|(&r, c)| (r, if r % p == 0 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Multiplicative inverse, found by clearing one prime at a time with
    /// conjugates until the denominator is rational.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut numerator = SurdNumber::one();
        let mut denominator = self.clone();
        while let Some(&r) = denominator.coefficients.keys().find(|&&r| r > 1) {
            let p = smallest_prime_factor(r);
            let conj = denominator.conjugate(p);
            numerator = &numerator * &conj;
            denominator = &denominator * &conj;
        }
        let q = denominator.as_rational()?;
        Some(numerator.scale(&q.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, SurdError> {
        other.inv().map(|inv| self * &inv).ok_or(SurdError::DivisionByZero)
    }

    /// Rational bounds `lo ≤ self ≤ hi` with width at most `terms·10^-digits`.
    fn enclose(&self, digits: u32) -> (BigRational, BigRational) {
        let scale = BigInt::from(10u32).pow(digits);
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (&r, q) in &self.coefficients {
            if r == 1 {
                lo += q;
                hi += q;
                continue;
            }
            let numer = q.numer().abs().to_biguint().unwrap_or_default();
            let denom = q.denom().clone() * &scale;
            let radicand = numer.pow(2u32) * BigUint::from(r) * scale.to_biguint().unwrap().pow(2u32);
            let floor = BigInt::from(radicand.sqrt());
            let below = BigRational::new(floor.clone(), denom.clone());
            let above = BigRational::new(floor + 1, denom);
            if q.is_negative() {
                lo -= above;
                hi -= below;
            } else {
                lo += below;
                hi += above;
            }
        }
        (lo, hi)
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if let Some(q) = self.as_rational() {
            return sign_of(&q);
        }
        let mut digits = 16;
        loop {
            let (lo, hi) = self.enclose(digits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            digits *= 2;
        }
    }

    /// `⌊self · 10^places⌋`, exactly.
    pub fn floor_scaled(&self, places: u32) -> BigInt {
        let factor = BigRational::from_integer(BigInt::from(10u32).pow(places));
        if let Some(q) = self.as_rational() {
            return (q * factor).floor().to_integer();
        }
        let mut digits = places + 16;
        loop {
            let (lo, hi) = self.enclose(digits);
            let lo = (lo * &factor).floor().to_integer();
            let hi = (hi * &factor).floor().to_integer();
            if lo == hi {
                return lo;
            }
            digits *= 2;
        }
    }

    /// Decimal rendering rounded (half up) to `significant` significant
    /// digits; trailing fractional zeros are dropped.
    pub fn to_decimal(&self, significant: usize) -> String {
        let significant = significant.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut digits = significant as u32 + 12;
        loop {
            let (lo, hi) = self.enclose(digits);
            if let Some(s) = round_significant(&lo, &hi, significant) {
                return s;
            }
            if digits > 1 << 14 {
                // Unreachable for nonzero values; keep the lower bound's rendering.
                return round_significant(&lo, &lo, significant).unwrap_or_default();
            }
            digits *= 2;
        }
    }

    /// Floating-point approximation, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|(&r, q)| q.to_f64().unwrap_or(f64::NAN) * (r as f64).sqrt())
            .sum()
    }
}

fn sign_of(q: &BigRational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `⌊log₁₀ x⌋` for positive rational `x`.
fn decimal_exponent(x: &BigRational) -> i64 {
    let ten = BigRational::from_integer(BigInt::from(10));
    let one = BigRational::one();
    if *x >= one {
        let digits = x.floor().to_integer().to_string().len();
        digits as i64 - 1
    } else {
        let mut e = 0i64;
        let mut y = x.clone();
        while y < one {
            y *= &ten;
            e -= 1;
        }
        e
    }
}

fn round_significant(lo: &BigRational, hi: &BigRational, significant: usize) -> Option<String> {
    let negative = match (sign_of(lo), sign_of(hi)) {
        (1, 1) => false,
        (-1, -1) => true,
        _ => return None,
    };
    let (lo, hi) = if negative { (-hi, -lo) } else { (lo.clone(), hi.clone()) };
    let exponent = decimal_exponent(&lo);
    if exponent != decimal_exponent(&hi) {
        return None;
    }
    let shift = significant as i64 - 1 - exponent;
    let scale = |x: &BigRational| {
        let ten = BigRational::from_integer(BigInt::from(10));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        (x * ten.pow(shift as i32) + half).floor().to_integer()
    };
    let (mlo, mhi) = (scale(&lo), scale(&hi));
    if mlo != mhi {
        return None;
    }
    let mut mantissa = mlo.to_string();
    let mut exponent = exponent;
    if mantissa.len() > significant {
        mantissa.pop();
        exponent += 1;
    }
    let body = place_decimal_point(&mantissa, exponent);
    Some(if negative { format!("-{body}") } else { body })
}

fn place_decimal_point(digits: &str, exponent: i64) -> String {
    let (int_part, frac_part) = if exponent >= 0 {
        let int_len = exponent as usize + 1;
        if digits.len() <= int_len {
            (format!("{digits}{}", "0".repeat(int_len - digits.len())), String::new())
        } else {
            (digits[..int_len].to_string(), digits[int_len..].to_string())
        }
    } else {
        (
            "0".to_string(),
            format!("{}{digits}", "0".repeat((-exponent - 1) as usize)),
        )
    };
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.is_empty() {
        int_part
    } else {
        format!("{int_part}.{frac_part}")
    }
}

impl Add for &SurdNumber {
    type Output = SurdNumber;
    fn add(self, other: &SurdNumber) -> SurdNumber {
        let mut coefficients = self.coefficients.clone();
        for (&r, q) in &other.coefficients {
            let entry = coefficients.entry(r).or_insert_with(BigRational::zero);
            *entry += q;
            if entry.is_zero() {
                coefficients.remove(&r);
            }
        }
        SurdNumber { coefficients }
    }
}

impl Neg for &SurdNumber {
    type Output = SurdNumber;
    fn neg(self) -> SurdNumber {
        SurdNumber {
            coefficients: self.coefficients.iter().map(|(&r, q)| (r, -q)).collect(),
        }
    }
}

impl Sub for &SurdNumber {
    type Output = SurdNumber;
    fn sub(self, other: &SurdNumber) -> SurdNumber {
        self + &(-other)
    }
}

impl Mul for &SurdNumber {
    type Output = SurdNumber;
    fn mul(self, other: &SurdNumber) -> SurdNumber {
        let mut coefficients: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (&r1, q1) in &self.coefficients {
            for (&r2, q2) in &other.coefficients {
                // √r1·√r2 = g·√((r1/g)(r2/g)); the product radicand stays square-free.
                let g = r1.gcd(&r2);
                let radicand = (r1 / g) * (r2 / g);
                let q = q1 * q2 * BigRational::from_integer(BigInt::from(g));
                let entry = coefficients.entry(radicand).or_insert_with(BigRational::zero);
                *entry += q;
                if entry.is_zero() {
                    coefficients.remove(&radicand);
                }
            }
        }
        SurdNumber { coefficients }
    }
}

macro_rules! forward_owned {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for SurdNumber {
            type Output = SurdNumber;
            fn $method(self, other: SurdNumber) -> SurdNumber {
                (&self).$method(&other)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for SurdNumber {
    type Output = SurdNumber;
    fn neg(self) -> SurdNumber {
        -&self
    }
}

impl From<BigRational> for SurdNumber {
    fn from(q: BigRational) -> Self {
        SurdNumber::from_rational(q)
    }
}

impl From<i64> for SurdNumber {
    fn from(n: i64) -> Self {
        SurdNumber::from_integer(n)
    }
}

/// Renders in the linear expression grammar, e.g. `2 - sqrt(2)` or
/// `3*sqrt(5)/2`, so the output can be pasted back into the parser.
impl fmt::Display for SurdNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&r, q)) in self.coefficients.iter().enumerate() {
            let negative = q.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let numer = q.numer().abs();
            let denom = q.denom();
            if r == 1 {
                write!(f, "{numer}")?;
            } else if numer.is_one() {
                write!(f, "sqrt({r})")?;
            } else {
                write!(f, "{numer}*sqrt({r})")?;
            }
            if !denom.is_one() {
                write!(f, "/{denom}")?;
            }
        }
        Ok(())
    }
}

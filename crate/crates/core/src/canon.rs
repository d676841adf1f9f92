//! Canonical forms and the semantic-equality oracle.
//!
//! Every expression expands to a quotient of two polynomials with
//! [`SurdNumber`] coefficients. Two expressions are semantically equal when
//! their cross-multiplied numerators agree; no polynomial division is needed.
//! Rules never consult this module to decide *what* to produce; it only
//! judges whether what they (or a script) produced is sound.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::expr::{Atom, Equation, Expr, Factor, Term};
use crate::label::{Label, LABEL_COUNT};
use crate::surd::{SurdError, SurdNumber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("variable {0} is not bound")]
    UnboundVariable(Label),
    #[error("nested radical sqrt({0}) cannot be canonicalised; only square roots of integers are supported")]
    NestedRadical(String),
    #[error(transparent)]
    Surd(#[from] SurdError),
}

/// Value assignment for variables.
pub type Bindings = BTreeMap<Label, SurdNumber>;

/// Exponent vector over all labels. The derived order compares exponents
/// label by label, which is a total order compatible with multiplication.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial([u32; LABEL_COUNT]);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(label: Label) -> Monomial {
        let mut m = Monomial::default();
        m.0[label.index()] = 1;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, label: Label) -> u32 {
        self.0[label.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (e, o) in out.0.iter_mut().zip(other.0) {
            *e += o;
        }
        out
    }

    /// `self / other` when every exponent allows it.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for (e, o) in out.0.iter_mut().zip(other.0) {
            *e = e.checked_sub(o)?;
        }
        Some(out)
    }

    fn without(&self, label: Label) -> Monomial {
        let mut out = *self;
        out.0[label.index()] = 0;
        out
    }

    /// `(label, exponent)` pairs with nonzero exponent, by label.
    pub fn powers(&self) -> impl Iterator<Item = (Label, u32)> + '_ {
        Label::all().filter_map(move |l| {
            let e = self.exponent(l);
            (e > 0).then_some((l, e))
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (label, e) in self.powers() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{label}")?;
            } else {
                write!(f, "{label}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A fully expanded polynomial. No zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, SurdNumber>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: SurdNumber) -> Poly {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn one() -> Poly {
        Poly::constant(SurdNumber::one())
    }

    pub fn monomial(m: Monomial, c: SurdNumber) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(label: Label) -> Poly {
        Poly::monomial(Monomial::var(label), SurdNumber::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &SurdNumber)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&SurdNumber> {
        self.terms.get(m)
    }

    /// The value when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<SurdNumber> {
        match self.terms.len() {
            0 => Some(SurdNumber::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Greatest monomial and its coefficient.
    pub fn lead(&self) -> Option<(&Monomial, &SurdNumber)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: SurdNumber) {
        let entry = self.terms.entry(m).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &SurdNumber) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Poly {
        (0..exponent).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn degree_in(&self, label: Label) -> u32 {
        self.terms.keys().map(|m| m.exponent(label)).max().unwrap_or(0)
    }

    /// For a polynomial of degree one in `label`, returns `(a, b)` with
    /// `self = a·label + b`.
    pub fn split_linear(&self, label: Label) -> Option<(Poly, Poly)> {
        if self.degree_in(label) != 1 {
            return None;
        }
        let mut a = Poly::zero();
        let mut b = Poly::zero();
        for (m, c) in &self.terms {
            if m.exponent(label) == 1 {
                a.add_term(m.without(label), c.clone());
            } else {
                b.add_term(*m, c.clone());
            }
        }
        Some((a, b))
    }

    pub fn variables(&self) -> Vec<Label> {
        Label::all()
            .filter(|&l| self.terms.keys().any(|m| m.exponent(l) > 0))
            .collect()
    }

    pub fn evaluate(&self, bindings: &Bindings) -> Result<SurdNumber, ExprError> {
        let mut total = SurdNumber::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (label, e) in m.powers() {
                let v = bindings.get(&label).ok_or(ExprError::UnboundVariable(label))?;
                value = &value * &v.pow(e);
            }
            total = &total + &value;
        }
        Ok(total)
    }

    /// `self = q·divisor` with `q` a single monomial, found from leading
    /// terms and verified exactly.
    pub fn monomial_quotient(&self, divisor: &Poly) -> Option<(Monomial, SurdNumber)> {
        let (m1, c1) = self.lead()?;
        let (m2, c2) = divisor.lead()?;
        let m = m1.div(m2)?;
        let c = c1.checked_div(c2).ok()?;
        let candidate = divisor.mul(&Poly::monomial(m, c.clone()));
        (candidate == *self).then_some((m, c))
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some((_, c)) => self.scale(&c.inv().expect("stored coefficients are nonzero")),
            None => Poly::zero(),
        }
    }

    /// Re-embeds the polynomial as an expression: one term per monomial and
    /// radicand.
    pub fn to_expr(&self) -> Expr {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            for (r, q) in c.terms() {
                let mut factors: Vec<Factor> = Vec::new();
                if r > 1 {
                    factors.push(Atom::Sqrt(r).into());
                }
                factors.extend(m.powers().map(|(l, e)| Factor::new(Atom::Var(l), e)));
                terms.extend(Term::with_coefficient(q, factors));
            }
        }
        Expr::new(terms)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// Expanded quotient `numerator / denominator`.
///
/// A constant denominator is always divided through, leaving `1`; any other
/// denominator is scaled to be monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalPoly {
    pub numerator: Poly,
    pub denominator: Poly,
}

impl CanonicalPoly {
    fn from_poly(p: Poly) -> CanonicalPoly {
        CanonicalPoly {
            numerator: p,
            denominator: Poly::one(),
        }
    }

    fn new(numerator: Poly, denominator: Poly) -> Result<CanonicalPoly, ExprError> {
        if denominator.is_zero() {
            return Err(ExprError::ZeroDenominator);
        }
        if let Some(c) = denominator.as_constant() {
            let inv = c.inv().ok_or(ExprError::ZeroDenominator)?;
            return Ok(CanonicalPoly::from_poly(numerator.scale(&inv)));
        }
        let (_, lead) = denominator.lead().expect("nonzero");
        let inv = lead.inv().ok_or(ExprError::ZeroDenominator)?;
        Ok(CanonicalPoly {
            numerator: numerator.scale(&inv),
            denominator: denominator.scale(&inv),
        })
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator == Poly::one()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn mul(&self, other: &CanonicalPoly) -> Result<CanonicalPoly, ExprError> {
        CanonicalPoly::new(
            self.numerator.mul(&other.numerator),
            self.denominator.mul(&other.denominator),
        )
    }

    fn div(&self, other: &CanonicalPoly) -> Result<CanonicalPoly, ExprError> {
        if other.numerator.is_zero() {
            return Err(ExprError::ZeroDenominator);
        }
        CanonicalPoly::new(
            self.numerator.mul(&other.denominator),
            self.denominator.mul(&other.numerator),
        )
    }

    fn add(&self, other: &CanonicalPoly) -> Result<CanonicalPoly, ExprError> {
        if self.denominator == other.denominator {
            return CanonicalPoly::new(self.numerator.add(&other.numerator), self.denominator.clone());
        }
        CanonicalPoly::new(
            self.numerator
                .mul(&other.denominator)
                .add(&other.numerator.mul(&self.denominator)),
            self.denominator.mul(&other.denominator),
        )
    }

    fn pow(&self, exponent: u32) -> Result<CanonicalPoly, ExprError> {
        CanonicalPoly::new(self.numerator.pow(exponent), self.denominator.pow(exponent))
    }

    /// `n₁·d₂ − n₂·d₁`; zero exactly when the two quotients are equal.
    pub fn cross_difference(&self, other: &CanonicalPoly) -> Poly {
        self.numerator
            .mul(&other.denominator)
            .sub(&other.numerator.mul(&self.denominator))
    }

    /// Re-embeds as an expression; a non-trivial denominator becomes a
    /// single quotient term of two groups.
    pub fn to_expr(&self) -> Expr {
        let numerator = self.numerator.to_expr();
        if self.is_polynomial() || numerator.is_zero() {
            return numerator;
        }
        let denominator = self.denominator.to_expr();
        Expr::from(Term::new(
            crate::expr::Sign::Plus,
            1u32.into(),
            1u32.into(),
            [Atom::group(numerator).into()],
            [Atom::group(denominator).into()],
        ))
    }

    pub fn evaluate(&self, bindings: &Bindings) -> Result<SurdNumber, ExprError> {
        let d = self.denominator.evaluate(bindings)?;
        let n = self.numerator.evaluate(bindings)?;
        n.checked_div(&d).map_err(|_| ExprError::ZeroDenominator)
    }
}

impl fmt::Display for CanonicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

fn rational(q: BigRational) -> SurdNumber {
    SurdNumber::from_rational(q)
}

fn canonical_atom(atom: &Atom) -> Result<CanonicalPoly, ExprError> {
    match atom {
        Atom::Var(l) => Ok(CanonicalPoly::from_poly(Poly::var(*l))),
        Atom::Sqrt(r) => Ok(CanonicalPoly::from_poly(Poly::constant(SurdNumber::sqrt_of(*r)?))),
        Atom::Group(e) => canonical_form(e),
        Atom::Radical(e) => Err(ExprError::NestedRadical(e.to_string())),
    }
}

fn canonical_term(term: &Term) -> Result<CanonicalPoly, ExprError> {
    let numer = BigRational::from_integer(BigInt::from(term.numer().clone()));
    let denom = BigRational::from_integer(BigInt::from(term.denom().clone()));
    let signed = if term.sign().is_negative() { -numer } else { numer };
    let mut acc = CanonicalPoly::new(Poly::constant(rational(signed)), Poly::constant(rational(denom)))?;
    for f in term.factors() {
        acc = acc.mul(&canonical_atom(&f.atom)?.pow(f.power)?)?;
    }
    for f in term.divisors() {
        acc = acc.div(&canonical_atom(&f.atom)?.pow(f.power)?)?;
    }
    Ok(acc)
}

/// Fully expands `e`.
pub fn canonical_form(e: &Expr) -> Result<CanonicalPoly, ExprError> {
    let mut acc = CanonicalPoly::from_poly(Poly::zero());
    for t in e.terms() {
        acc = acc.add(&canonical_term(t)?)?;
    }
    Ok(acc)
}

pub fn semantically_equal(e1: &Expr, e2: &Expr) -> Result<bool, ExprError> {
    Ok(canonical_form(e1)?.cross_difference(&canonical_form(e2)?).is_zero())
}

/// Numerator of `lhs − rhs` over a common denominator.
pub fn residual_numerator(q: &Equation) -> Result<Poly, ExprError> {
    let lhs = canonical_form(&q.lhs)?;
    let rhs = canonical_form(&q.rhs)?;
    Ok(lhs.cross_difference(&rhs))
}

/// Numerator of the residual `lhs − rhs`, scaled to be monic. Equations
/// with polynomial residuals are equivalent exactly when these agree.
pub fn normalized_residual(q: &Equation) -> Result<Poly, ExprError> {
    Ok(canonical_form(&q.residual())?.numerator.monic())
}

/// True when `lhs₁ − rhs₁` and `lhs₂ − rhs₂` are nonzero constant multiples
/// of each other, or both zero.
pub fn equation_equivalent(q1: &Equation, q2: &Equation) -> Result<bool, ExprError> {
    let r1 = canonical_form(&q1.residual())?;
    let r2 = canonical_form(&q2.residual())?;
    let a = r1.numerator.mul(&r2.denominator);
    let b = r2.numerator.mul(&r1.denominator);
    Ok(proportional(&a, &b))
}

fn proportional(a: &Poly, b: &Poly) -> bool {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return true,
        (true, false) | (false, true) => return false,
        _ => {}
    }
    let (m, ca) = a.lead().expect("nonzero");
    let Some(cb) = b.coefficient(m) else {
        return false;
    };
    let k = ca.checked_div(cb).expect("stored coefficients are nonzero");
    b.scale(&k) == *a
}

fn evaluate_atom(atom: &Atom, bindings: &Bindings) -> Result<SurdNumber, ExprError> {
    match atom {
        Atom::Var(l) => bindings.get(l).cloned().ok_or(ExprError::UnboundVariable(*l)),
        Atom::Sqrt(r) => Ok(SurdNumber::sqrt_of(*r)?),
        Atom::Group(e) => evaluate(e, bindings),
        Atom::Radical(e) => Err(ExprError::NestedRadical(e.to_string())),
    }
}

/// Direct evaluation of the expression tree, independent of
/// [`canonical_form`].
pub fn evaluate(e: &Expr, bindings: &Bindings) -> Result<SurdNumber, ExprError> {
    let mut total = SurdNumber::zero();
    for t in e.terms() {
        let mut value = SurdNumber::from_rational(t.coefficient());
        for f in t.factors() {
            value = &value * &evaluate_atom(&f.atom, bindings)?.pow(f.power);
        }
        for f in t.divisors() {
            let d = evaluate_atom(&f.atom, bindings)?.pow(f.power);
            value = value.checked_div(&d).map_err(|_| ExprError::ZeroDenominator)?;
        }
        total = &total + &value;
    }
    Ok(total)
}

/// The exact value `q` when `e` is a rational constant.
pub fn rational_value(e: &Expr) -> Option<BigRational> {
    let c = canonical_form(e).ok()?;
    c.numerator.as_constant()?.as_rational()
}

//! The expression language.
//!
//! An [`Expr`] is an ordered sum of signed [`Term`]s. A term is a positive
//! coefficient times a product of atoms (variables, square roots of integers,
//! parenthesised groups), optionally over a denominator written to the left
//! of the stroke in side-writing. Nothing here simplifies on its own: the
//! structure is exactly what was parsed or what a rule produced. The only
//! normalisation performed at construction is merging repeated atoms into a
//! power, so a factor list never mentions the same atom twice.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::label::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Var(Label),
    /// `√n` for a square-free `n ≥ 2`.
    Sqrt(u64),
    /// A parenthesised sub-expression kept as a single factor.
    Group(Box<Expr>),
    /// `sqrt(<expr>)` with a non-integer argument. Parsed and rendered, but
    /// rejected by canonicalisation.
    Radical(Box<Expr>),
}

impl Atom {
    pub fn group(expr: Expr) -> Atom {
        Atom::Group(Box::new(expr))
    }

    pub fn as_group(&self) -> Option<&Expr> {
        match self {
            Atom::Group(e) => Some(e),
            _ => None,
        }
    }

    /// Equality up to commutative reordering inside groups.
    pub fn matches(&self, other: &Atom) -> bool {
        self.normalized() == other.normalized()
    }

    fn normalized(&self) -> Atom {
        match self {
            Atom::Group(e) => Atom::group(e.normalized()),
            Atom::Radical(e) => Atom::Radical(Box::new(e.normalized())),
            other => other.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub atom: Atom,
    pub power: u32,
}

impl Factor {
    pub fn new(atom: Atom, power: u32) -> Factor {
        debug_assert!(power >= 1);
        Factor { atom, power }
    }
}

impl From<Atom> for Factor {
    fn from(atom: Atom) -> Factor {
        Factor::new(atom, 1)
    }
}

/// Appends `factor` to `list`, adding powers when the atom is already present.
pub(crate) fn push_factor(list: &mut Vec<Factor>, factor: Factor) {
    match list.iter_mut().find(|f| f.atom == factor.atom) {
        Some(existing) => existing.power += factor.power,
        None => list.push(factor),
    }
}

fn sorted_factors(list: &[Factor]) -> Vec<Factor> {
    let mut out: Vec<Factor> = list.iter().map(|f| Factor::new(f.atom.normalized(), f.power)).collect();
    out.sort();
    out
}

/// A signed monomial-like term.
///
/// The coefficient is stored as an unreduced fraction `numer / denom` so that
/// written forms such as `2*a/2` survive a round trip; arithmetic on
/// coefficients goes through [`Term::coefficient`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    sign: Sign,
    numer: BigUint,
    denom: BigUint,
    factors: Vec<Factor>,
    divisors: Vec<Factor>,
}

impl Term {
    /// Builds a term; `numer` and `denom` must be positive.
    pub fn new(
        sign: Sign,
        numer: BigUint,
        denom: BigUint,
        factors: impl IntoIterator<Item = Factor>,
        divisors: impl IntoIterator<Item = Factor>,
    ) -> Term {
        assert!(
            !numer.is_zero() && !denom.is_zero(),
            "term coefficient must be positive"
        );
        let mut term = Term {
            sign,
            numer,
            denom,
            factors: Vec::new(),
            divisors: Vec::new(),
        };
        for f in factors {
            push_factor(&mut term.factors, f);
        }
        for f in divisors {
            push_factor(&mut term.divisors, f);
        }
        term
    }

    pub fn constant(n: u64) -> Term {
        Term::new(Sign::Plus, n.into(), 1u32.into(), [], [])
    }

    pub fn one() -> Term {
        Term::constant(1)
    }

    pub fn var(label: Label) -> Term {
        Term::from_atom(Atom::Var(label))
    }

    pub fn from_atom(atom: Atom) -> Term {
        Term::new(Sign::Plus, 1u32.into(), 1u32.into(), [Factor::from(atom)], [])
    }

    /// A term with the given signed rational coefficient and factors, or
    /// `None` when the coefficient is zero.
    pub fn with_coefficient(q: &BigRational, factors: impl IntoIterator<Item = Factor>) -> Option<Term> {
        if q.is_zero() {
            return None;
        }
        let sign = if q.numer() < &BigInt::zero() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        Some(Term::new(
            sign,
            q.numer().magnitude().clone(),
            q.denom().magnitude().clone(),
            factors,
            [],
        ))
    }

    /// Same factors and divisors under a new signed coefficient; `None` when
    /// it is zero.
    pub fn rescaled(&self, q: &BigRational) -> Option<Term> {
        if q.is_zero() {
            return None;
        }
        let sign = if q.numer() < &BigInt::zero() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        Some(Term {
            sign,
            numer: q.numer().magnitude().clone(),
            denom: q.denom().magnitude().clone(),
            factors: self.factors.clone(),
            divisors: self.divisors.clone(),
        })
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn numer(&self) -> &BigUint {
        &self.numer
    }

    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn divisors(&self) -> &[Factor] {
        &self.divisors
    }

    /// The signed coefficient, reduced.
    pub fn coefficient(&self) -> BigRational {
        let q = BigRational::new(BigInt::from(self.numer.clone()), BigInt::from(self.denom.clone()));
        if self.sign.is_negative() {
            -q
        } else {
            q
        }
    }

    pub fn is_quotient(&self) -> bool {
        !self.denom.is_one() || !self.divisors.is_empty()
    }

    pub fn has_group(&self) -> bool {
        self.factors.iter().any(|f| matches!(f.atom, Atom::Group(_)))
    }

    /// A term equal to `±1` with no factors.
    pub fn is_unit(&self) -> bool {
        self.numer.is_one() && self.denom.is_one() && self.factors.is_empty() && self.divisors.is_empty()
    }

    /// The lone variable of `v`, `+1·v¹` with nothing else.
    pub fn as_lone_var(&self) -> Option<Label> {
        match (
            self.sign,
            self.numer.is_one() && self.denom.is_one(),
            &self.factors[..],
            self.divisors.is_empty(),
        ) {
            (
                Sign::Plus,
                true,
                [Factor {
                    atom: Atom::Var(l),
                    power: 1,
                }],
                true,
            ) => Some(*l),
            _ => None,
        }
    }

    pub fn negated(&self) -> Term {
        self.with_sign(self.sign.flip())
    }

    pub fn with_sign(&self, sign: Sign) -> Term {
        Term { sign, ..self.clone() }
    }

    pub fn with_coefficient_parts(&self, numer: BigUint, denom: BigUint) -> Term {
        assert!(!numer.is_zero() && !denom.is_zero());
        Term {
            numer,
            denom,
            ..self.clone()
        }
    }

    pub fn with_factors(&self, factors: Vec<Factor>) -> Term {
        Term::new(
            self.sign,
            self.numer.clone(),
            self.denom.clone(),
            factors,
            self.divisors.clone(),
        )
    }

    /// Structural product: coefficients multiply (unreduced), atoms merge.
    pub fn product(&self, other: &Term) -> Term {
        let mut factors = self.factors.clone();
        for f in &other.factors {
            push_factor(&mut factors, f.clone());
        }
        let mut divisors = self.divisors.clone();
        for f in &other.divisors {
            push_factor(&mut divisors, f.clone());
        }
        Term {
            sign: self.sign.times(other.sign),
            numer: &self.numer * &other.numer,
            denom: &self.denom * &other.denom,
            factors,
            divisors,
        }
    }

    /// Multiplies the numerator coefficient by `k`.
    pub fn scaled(&self, k: &BigUint) -> Term {
        self.with_coefficient_parts(&self.numer * k, self.denom.clone())
    }

    /// Folds `√r^p` into the coefficient: even powers become `r^(p/2)`, odd
    /// powers leave a single `√r`.
    pub fn fold_roots(&self) -> Term {
        let mut numer = self.numer.clone();
        let mut factors = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            match f.atom {
                Atom::Sqrt(r) if f.power >= 2 => {
                    numer *= BigUint::from(r).pow(f.power / 2);
                    if f.power % 2 == 1 {
                        factors.push(Factor::new(f.atom.clone(), 1));
                    }
                }
                _ => factors.push(f.clone()),
            }
        }
        Term {
            numer,
            factors,
            ..self.clone()
        }
    }

    /// Same atoms with the same powers, up to reordering, in both numerator
    /// and denominator. Coefficients may differ.
    pub fn is_like(&self, other: &Term) -> bool {
        sorted_factors(&self.factors) == sorted_factors(&other.factors)
            && sorted_factors(&self.divisors) == sorted_factors(&other.divisors)
    }

    pub fn normalized(&self) -> Term {
        Term {
            factors: sorted_factors(&self.factors),
            divisors: sorted_factors(&self.divisors),
            ..self.clone()
        }
    }
}

/// An ordered sum of terms. The empty sum is `0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expr {
    terms: Vec<Term>,
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::default()
    }

    pub fn one() -> Expr {
        Expr::from(Term::one())
    }

    pub fn var(label: Label) -> Expr {
        Expr::from(Term::var(label))
    }

    pub fn new(terms: Vec<Term>) -> Expr {
        Expr { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn negated(&self) -> Expr {
        Expr::new(self.terms.iter().map(Term::negated).collect())
    }

    /// Concatenates the terms of `self` and `other`.
    pub fn plus(&self, other: &Expr) -> Expr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Expr::new(terms)
    }

    pub fn minus(&self, other: &Expr) -> Expr {
        self.plus(&other.negated())
    }

    /// Views the expression as a single term: itself when it has one term,
    /// otherwise a group. `None` for zero.
    pub fn as_single_term(&self) -> Option<Term> {
        match &self.terms[..] {
            [] => None,
            [t] => Some(t.clone()),
            _ => Some(Term::from_atom(Atom::group(self.clone()))),
        }
    }

    /// The expression with a single lone variable, if it is one.
    pub fn as_lone_var(&self) -> Option<Label> {
        match &self.terms[..] {
            [t] => t.as_lone_var(),
            _ => None,
        }
    }

    /// Sorts factors within every term and terms within every sum,
    /// recursively. Two expressions that differ only by commutative
    /// reordering have equal normal forms.
    pub fn normalized(&self) -> Expr {
        let mut terms: Vec<Term> = self.terms.iter().map(Term::normalized).collect();
        terms.sort();
        Expr { terms }
    }

    /// Equality up to commutative reordering of sums and products.
    pub fn matches(&self, other: &Expr) -> bool {
        self.normalized() == other.normalized()
    }

    /// Labels occurring anywhere in the expression.
    pub fn variables(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_variables(&self, out: &mut Vec<Label>) {
        for t in &self.terms {
            for f in t.factors.iter().chain(&t.divisors) {
                match &f.atom {
                    Atom::Var(l) => out.push(*l),
                    Atom::Group(e) | Atom::Radical(e) => e.collect_variables(out),
                    Atom::Sqrt(_) => {}
                }
            }
        }
    }

    /// Replaces every occurrence of `label` with a group holding `replacement`.
    pub fn substitute(&self, label: Label, replacement: &Expr) -> Expr {
        let map_atom = |a: &Atom| match a {
            Atom::Var(l) if *l == label => Atom::group(replacement.clone()),
            Atom::Group(e) => Atom::group(e.substitute(label, replacement)),
            Atom::Radical(e) => Atom::Radical(Box::new(e.substitute(label, replacement))),
            other => other.clone(),
        };
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Term::new(
                    t.sign,
                    t.numer.clone(),
                    t.denom.clone(),
                    t.factors.iter().map(|f| Factor::new(map_atom(&f.atom), f.power)),
                    t.divisors.iter().map(|f| Factor::new(map_atom(&f.atom), f.power)),
                )
            })
            .collect();
        Expr::new(terms)
    }
}

impl From<Term> for Expr {
    fn from(t: Term) -> Expr {
        Expr::new(vec![t])
    }
}

/// `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Equation {
    pub fn new(lhs: Expr, rhs: Expr) -> Equation {
        Equation { lhs, rhs }
    }

    /// `lhs - rhs` as a single expression.
    pub fn residual(&self) -> Expr {
        self.lhs.minus(&self.rhs)
    }

    pub fn matches(&self, other: &Equation) -> bool {
        self.lhs.matches(&other.lhs) && self.rhs.matches(&other.rhs)
    }

    pub fn substitute(&self, label: Label, replacement: &Expr) -> Equation {
        Equation::new(
            self.lhs.substitute(label, replacement),
            self.rhs.substitute(label, replacement),
        )
    }
}

impl PartialOrd for Equation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Equation {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.lhs, &self.rhs).cmp(&(&other.lhs, &other.rhs))
    }
}

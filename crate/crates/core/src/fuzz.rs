//! Random generators for expressions, surds and rule applications, used by
//! the property suite. Every generated application is one the rule is
//! expected to accept, though a few are rejected by design (for example a
//! put-together whose merged terms cancel to nothing).

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::canon::canonical_form;
use crate::expr::{Atom, Equation, Expr, Factor, Sign, Term};
use crate::label::Label;
use crate::rules::{Definitions, RuleId, Selector, Side, SplitSpec};
use crate::surd::SurdNumber;

const RADICANDS: [u64; 5] = [2, 3, 5, 6, 7];
/// `r` with `r - k^2 = 1`, so `(sqrt(r) - k)(sqrt(r) + k) = 1`.
const UNIT_PAIRS: [(u64, u64); 3] = [(2, 1), (5, 2), (10, 3)];

fn label(i: usize) -> Label {
    Label::new(i).expect("label index in range")
}

fn sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.3) {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// A term with no groups: coefficient, some of a..e, maybe a square root.
pub fn simple_term<R: Rng>(rng: &mut R) -> Term {
    let mut factors = Vec::new();
    if rng.gen_bool(0.3) {
        factors.push(Factor::from(Atom::Sqrt(*RADICANDS.choose(rng).expect("nonempty"))));
    }
    let mut labels: Vec<usize> = (0..5).collect();
    labels.shuffle(rng);
    for &i in &labels[..rng.gen_range(0..=2)] {
        factors.push(Factor::new(Atom::Var(label(i)), rng.gen_range(1..=2)));
    }
    let numer: u32 = if factors.is_empty() || rng.gen_bool(0.5) {
        rng.gen_range(1..=6)
    } else {
        1
    };
    let denom: u32 = if rng.gen_bool(0.15) { rng.gen_range(2..=4) } else { 1 };
    Term::new(sign(rng), numer.into(), denom.into(), factors, [])
}

fn simple_expr<R: Rng>(rng: &mut R, min: usize, max: usize) -> Expr {
    Expr::new((0..rng.gen_range(min..=max)).map(|_| simple_term(rng)).collect())
}

/// A sum of at least two simple terms that is not identically zero.
fn group_body<R: Rng>(rng: &mut R, max: usize) -> Expr {
    loop {
        let e = simple_expr(rng, 2, max);
        if !canonical_form(&e).expect("no divisors").is_zero() {
            return e;
        }
    }
}

/// A term that may carry groups, divisors and, rarely, a nested radical.
pub fn term<R: Rng>(rng: &mut R, depth: u32) -> Term {
    let base = simple_term(rng);
    if depth == 0 {
        return base;
    }
    let mut factors = base.factors().to_vec();
    let mut divisors = Vec::new();
    if rng.gen_bool(0.4) {
        let body = expr(rng, depth - 1, 2);
        if canonical_form(&body).is_ok_and(|c| !c.is_zero()) {
            factors.push(Factor::new(Atom::group(body), rng.gen_range(1..=2)));
        }
    }
    if rng.gen_bool(0.15) {
        divisors.push(Factor::from(Atom::Var(label(rng.gen_range(0..5)))));
    }
    if rng.gen_bool(0.1) {
        divisors.push(Factor::from(Atom::group(group_body(rng, 2))));
    }
    if rng.gen_bool(0.05) {
        factors.push(Factor::from(Atom::Radical(Box::new(group_body(rng, 2)))));
    }
    Term::new(
        base.sign(),
        base.numer().clone(),
        base.denom().clone(),
        factors,
        divisors,
    )
}

/// An expression of at least `min` terms.
pub fn expr<R: Rng>(rng: &mut R, depth: u32, min: usize) -> Expr {
    Expr::new((0..rng.gen_range(min..=min.max(4))).map(|_| term(rng, depth)).collect())
}

/// A random element of Q(sqrt 2, sqrt 3, ...).
pub fn surd<R: Rng>(rng: &mut R) -> SurdNumber {
    let mut acc = SurdNumber::zero();
    for &r in [1u64].iter().chain(RADICANDS.iter()) {
        if rng.gen_bool(0.5) {
            let q = BigRational::new(rng.gen_range(-12i64..=12).into(), rng.gen_range(1i64..=7).into());
            let root = SurdNumber::sqrt_of(r).expect("small radicand");
            acc = &acc + &root.scale(&q);
        }
    }
    acc
}

#[derive(Clone, Debug)]
pub struct Application {
    pub rule: RuleId,
    pub input: Equation,
    pub selector: Selector,
    pub definitions: Definitions,
}

/// Mixes `selected` into `others` at random positions; returns the terms
/// and the (0-based) positions of the selected ones.
fn interleave<R: Rng>(rng: &mut R, selected: Vec<Term>, others: Vec<Term>) -> (Vec<Term>, Vec<usize>) {
    let mut tagged: Vec<(bool, Term)> = selected
        .into_iter()
        .map(|t| (true, t))
        .chain(others.into_iter().map(|t| (false, t)))
        .collect();
    tagged.shuffle(rng);
    let positions = tagged
        .iter()
        .enumerate()
        .filter(|(_, (s, _))| *s)
        .map(|(i, _)| i)
        .collect();
    (tagged.into_iter().map(|(_, t)| t).collect(), positions)
}

fn group_term(e: Expr) -> Expr {
    Expr::new(vec![Term::from_atom(Atom::group(e))])
}

fn unit_factor<R: Rng>(rng: &mut R) -> Expr {
    let (r, k) = *UNIT_PAIRS.choose(rng).expect("nonempty");
    let root = Term::from_atom(Atom::Sqrt(r));
    let minus = Expr::new(vec![root.clone(), Term::constant(k).negated()]);
    let plus = Expr::new(vec![root, Term::constant(k)]);
    if rng.gen_bool(0.7) {
        let t = Term::new(
            Sign::Plus,
            1u32.into(),
            1u32.into(),
            [Atom::group(minus), Atom::group(plus)].map(Factor::from),
            [],
        );
        Expr::new(vec![t])
    } else {
        // (sqrt(r) - k)/(sqrt(r) - k)
        let g = Factor::from(Atom::group(minus));
        Expr::new(vec![Term::new(Sign::Plus, 1u32.into(), 1u32.into(), [g.clone()], [g])])
    }
}

/// An expression-side application: the rewritten expression and selector.
fn side_application<R: Rng>(rng: &mut R, rule: RuleId) -> (Expr, Selector, Definitions) {
    let mut defs = Definitions::new();
    let (terms, sel) = match rule {
        RuleId::SelfMultiply => (simple_expr(rng, 1, 3).into_terms(), Selector::default()),
        RuleId::PutTogether => match rng.gen_range(0..3) {
            0 => {
                let f = simple_term(rng).with_sign(Sign::Plus);
                let f = if f.factors().is_empty() { Term::var(label(0)) } else { f };
                let selected = (0..rng.gen_range(2..=3))
                    .map(|_| f.product(&simple_term(rng)))
                    .collect();
                let others = simple_expr(rng, 0, 2).into_terms();
                let (terms, pos) = interleave(rng, selected, others);
                (terms, Selector::terms(pos).with_factor(Expr::new(vec![f])))
            }
            1 => {
                let g = group_body(rng, 2);
                let k = simple_term(rng);
                let selected = g.terms().iter().map(|t| k.product(t)).collect();
                let others = simple_expr(rng, 0, 2).into_terms();
                let (terms, pos) = interleave(rng, selected, others);
                (terms, Selector::terms(pos).with_factor(group_term(g)))
            }
            _ => {
                let base = simple_term(rng);
                let selected = (0..rng.gen_range(2..=3))
                    .map(|_| {
                        base.with_coefficient_parts(rng.gen_range(1u32..=5).into(), 1u32.into())
                            .with_sign(sign(rng))
                    })
                    .collect();
                let others = simple_expr(rng, 0, 2).into_terms();
                let (terms, pos) = interleave(rng, selected, others);
                (terms, Selector::terms(pos))
            }
        },
        RuleId::Split => {
            if rng.gen_bool(0.3) {
                let y = label(11);
                defs.insert(y, simple_expr(rng, 2, 2));
                let mut terms = simple_expr(rng, 0, 2).into_terms();
                terms.push(Term::var(y));
                terms.shuffle(rng);
                let sel = Selector {
                    substitution: Some((y, defs[&y].clone())),
                    ..Default::default()
                };
                (terms, sel)
            } else {
                let g = Term::from_atom(Atom::group(group_body(rng, 3))).product(&simple_term(rng));
                let others = simple_expr(rng, 0, 2).into_terms();
                let (terms, pos) = interleave(rng, vec![g], others);
                let sel = if rng.gen_bool(0.5) {
                    Selector::terms(pos)
                } else {
                    Selector::default()
                };
                (terms, sel)
            }
        }
        RuleId::AddSameSubtractDifferent => {
            let base = simple_term(rng);
            let selected = (0..2)
                .map(|_| {
                    base.with_coefficient_parts(rng.gen_range(1u32..=5).into(), 1u32.into())
                        .with_sign(sign(rng))
                })
                .collect();
            let others = simple_expr(rng, 0, 2).into_terms();
            let (terms, pos) = interleave(rng, selected, others);
            (terms, Selector::terms(pos))
        }
        RuleId::Convert => {
            if rng.gen_bool(0.6) {
                let all = simple_expr(rng, 1, 4).into_terms();
                let n = rng.gen_range(1..=all.len());
                let mut pos: Vec<usize> = (0..all.len()).collect();
                pos.shuffle(rng);
                pos.truncate(n);
                (all, Selector::terms(pos).with_factor(unit_factor(rng)))
            } else {
                let (p, q) = (group_body(rng, 2), group_body(rng, 2));
                let product = Term::new(
                    Sign::Plus,
                    1u32.into(),
                    1u32.into(),
                    [Atom::group(p), Atom::group(q)].map(Factor::from),
                    [],
                );
                let factor = Expr::new(vec![product]);
                let expanded = canonical_form(&factor).expect("polynomial").numerator.to_expr();
                if expanded.is_zero() {
                    return side_application(rng, rule);
                }
                let others = simple_expr(rng, 0, 2).into_terms();
                let (terms, pos) = interleave(rng, expanded.into_terms(), others);
                (terms, Selector::terms(pos).with_factor(factor))
            }
        }
        RuleId::SqrtConvert => {
            let (r, k) = *UNIT_PAIRS.choose(rng).expect("nonempty");
            let t = Term::from_atom(Atom::Sqrt(r)).product(&simple_term(rng).with_factors(vec![]));
            let t = t.product(&Term::var(label(rng.gen_range(0..5))));
            let (terms, pos) = interleave(rng, vec![t], vec![]);
            let sel = Selector {
                offset: Some(Expr::new(vec![Term::constant(k)])),
                ..Selector::terms(pos)
            };
            (terms, sel)
        }
        RuleId::MulDivTogether => {
            let mut terms = simple_expr(rng, 1, 3).into_terms();
            let d = simple_term(rng);
            let divisor = if rng.gen_bool(0.5) {
                Factor::from(Atom::Var(label(rng.gen_range(0..5))))
            } else {
                Factor::from(Atom::group(group_body(rng, 2)))
            };
            terms.push(Term::new(
                d.sign(),
                d.numer().clone(),
                d.denom().clone(),
                d.factors().to_vec(),
                [divisor],
            ));
            terms.shuffle(rng);
            (terms, Selector::default())
        }
        RuleId::AddSubTogether => {
            let terms = simple_expr(rng, 1, 4).into_terms();
            let spec = SplitSpec {
                term: rng.gen_range(0..terms.len()),
                multiplier: rng.gen_range(2..=4),
            };
            let sel = Selector {
                split: Some(spec),
                ..Default::default()
            };
            (terms, sel)
        }
        RuleId::EliminateSurplus => unreachable!("acts on whole equations"),
    };
    (Expr::new(terms), sel, defs)
}

/// A rule application the engine should accept.
pub fn application<R: Rng>(rng: &mut R) -> Application {
    let rule = *RuleId::ALL.choose(rng).expect("nonempty");
    match rule {
        RuleId::EliminateSurplus => {
            let body = simple_expr(rng, 1, 4);
            let (factor, terms): (Term, Vec<Term>) = if rng.gen_bool(0.5) {
                let k: u32 = rng.gen_range(2..=5);
                let k_big = BigUint::from(k);
                (
                    Term::constant(k as u64),
                    body.terms().iter().map(|t| t.scaled(&k_big)).collect(),
                )
            } else {
                let (r, k) = *UNIT_PAIRS.choose(rng).expect("nonempty");
                let f = if rng.gen_bool(0.5) {
                    Term::from_atom(Atom::Sqrt(r))
                } else {
                    Term::from_atom(Atom::group(Expr::new(vec![
                        Term::from_atom(Atom::Sqrt(r)),
                        Term::constant(k),
                    ])))
                };
                (f.clone(), body.terms().iter().map(|t| t.product(&f)).collect())
            };
            Application {
                rule,
                input: Equation::new(Expr::new(terms), Expr::zero()),
                selector: Selector::factor(Expr::new(vec![factor])),
                definitions: Definitions::new(),
            }
        }
        RuleId::SelfMultiply => {
            let (lhs, _, _) = side_application(rng, rule);
            let (rhs, _, _) = side_application(rng, rule);
            Application {
                rule,
                input: Equation::new(lhs, rhs),
                selector: Selector::default(),
                definitions: Definitions::new(),
            }
        }
        _ => {
            let (side, mut selector, definitions) = side_application(rng, rule);
            let other = simple_expr(rng, 1, 2);
            let input = if rng.gen_bool(0.5) {
                selector.side = Some(Side::Rhs);
                Equation::new(other, side)
            } else {
                if rng.gen_bool(0.5) {
                    selector.side = Some(Side::Lhs);
                }
                Equation::new(side, other)
            };
            Application {
                rule,
                input,
                selector,
                definitions,
            }
        }
    }
}

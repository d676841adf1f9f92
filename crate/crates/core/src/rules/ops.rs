use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Definitions, RuleError, Selector};
use crate::canon::{canonical_form, rational_value, semantically_equal};
use crate::expr::{push_factor, Atom, Equation, Expr, Factor, Sign, Term};

/// Validated, de-duplicated selection in the order given.
fn selection(e: &Expr, sel: &Selector) -> Result<Vec<usize>, RuleError> {
    let mut seen = Vec::with_capacity(sel.terms.len());
    for &i in &sel.terms {
        if i >= e.len() {
            return Err(RuleError::BadSelector(format!(
                "term {} is out of range for {} term(s)",
                i + 1,
                e.len()
            )));
        }
        if seen.contains(&i) {
            return Err(RuleError::BadSelector(format!("term {} is selected twice", i + 1)));
        }
        seen.push(i);
    }
    Ok(seen)
}

/// Replaces the selected terms by `replacement`, placed where the first
/// selected term (in expression order) stood.
fn replace_selected(e: &Expr, selected: &[usize], replacement: Vec<Term>) -> Expr {
    let first = selected.iter().copied().min();
    let mut replacement = Some(replacement);
    let mut out = Vec::new();
    for (i, t) in e.terms().iter().enumerate() {
        if Some(i) == first {
            out.extend(replacement.take().unwrap_or_default());
        } else if !selected.contains(&i) {
            out.push(t.clone());
        }
    }
    Expr::new(out)
}

fn require_factor(sel: &Selector, rule: &str) -> Result<Expr, RuleError> {
    sel.factor
        .clone()
        .ok_or_else(|| RuleError::BadSelector(format!("{rule} needs a factor")))
}

/// Squares `e`, writing out the expansion: `t₁², 2t₁t₂, …, t₂², …`.
pub fn self_multiply(e: &Expr) -> Result<Expr, RuleError> {
    if e.terms().iter().any(Term::is_quotient) {
        return Err(RuleError::UnsupportedInput("self-multiplication of a fraction".into()));
    }
    let terms = e.terms();
    let two = BigUint::from(2u32);
    let mut out = Vec::new();
    for (i, ti) in terms.iter().enumerate() {
        out.push(ti.product(ti).fold_roots());
        for tj in &terms[i + 1..] {
            out.push(ti.product(tj).scaled(&two).fold_roots());
        }
    }
    Ok(Expr::new(out))
}

/// Merges like terms into one; `None` when they cancel.
fn merge_like(terms: &[&Term]) -> Result<Option<Term>, RuleError> {
    let first = terms[0];
    if terms.iter().any(|t| !t.is_like(first)) {
        return Err(RuleError::NotLikeTerms);
    }
    if terms.len() == 1 {
        return Ok(Some(first.clone()));
    }
    let sum = terms.iter().fold(BigRational::zero(), |acc, t| acc + t.coefficient());
    Ok(first.rescaled(&sum))
}

/// `t / f` when every atom of `f` occurs in `t` with at least its power.
fn divide_term(t: &Term, f: &Term) -> Option<Term> {
    fn remove(list: &[Factor], wanted: &[Factor]) -> Option<Vec<Factor>> {
        let mut out = list.to_vec();
        for w in wanted {
            let i = out.iter().position(|f| f.atom.matches(&w.atom) && f.power >= w.power)?;
            out[i].power -= w.power;
            if out[i].power == 0 {
                out.remove(i);
            }
        }
        Some(out)
    }
    let factors = remove(t.factors(), f.factors())?;
    let divisors = remove(t.divisors(), f.divisors())?;
    let reshaped = Term::new(t.sign(), t.numer().clone(), t.denom().clone(), factors, divisors);
    let fc = f.coefficient();
    if fc.is_one() {
        Some(reshaped)
    } else {
        reshaped.rescaled(&(t.coefficient() / fc))
    }
}

/// The cofactor `g` with `sum = g · factor`, when `g` is a single term
/// `q·√r·(variables)`.
fn cofactor(sum: &Expr, factor: &Expr) -> Result<Option<Term>, RuleError> {
    let s = canonical_form(sum)?;
    let f = canonical_form(factor)?;
    if !s.is_polynomial() || !f.is_polynomial() {
        return Ok(None);
    }
    let Some((m, c)) = s.numerator.monomial_quotient(&f.numerator) else {
        return Ok(None);
    };
    let Some((q, r)) = c.as_single_term() else {
        return Ok(None);
    };
    let mut factors: Vec<Factor> = m.powers().map(|(l, p)| Factor::new(Atom::Var(l), p)).collect();
    if r > 1 {
        factors.insert(0, Atom::Sqrt(r).into());
    }
    Ok(Term::with_coefficient(&q, factors))
}

/// Like-term merging without a factor; with one, factorisation: the
/// selected terms become `factor · (quotients)`, or `g · factor` when the
/// factor is a sum that divides the selection as a whole.
pub fn put_together(e: &Expr, sel: &Selector) -> Result<Expr, RuleError> {
    let selected = selection(e, sel)?;
    if selected.is_empty() {
        return Ok(e.clone());
    }
    let chosen: Vec<&Term> = selected.iter().map(|&i| &e.terms()[i]).collect();
    let Some(factor) = &sel.factor else {
        let merged = merge_like(&chosen)?;
        return Ok(replace_selected(e, &selected, merged.into_iter().collect()));
    };
    if canonical_form(factor)?.is_zero() {
        return Err(RuleError::NoCommonFactor);
    }
    if let [f] = factor.terms() {
        let quotients: Option<Vec<Term>> = chosen.iter().map(|t| divide_term(t, f)).collect();
        if let Some(quotients) = quotients {
            let inner = Expr::new(quotients);
            let rest = inner.as_single_term().unwrap_or_else(Term::one);
            return Ok(replace_selected(e, &selected, vec![f.product(&rest).fold_roots()]));
        }
    }
    let sum = Expr::new(chosen.iter().map(|&t| t.clone()).collect());
    if canonical_form(&sum)?.is_zero() {
        return Ok(replace_selected(e, &selected, Vec::new()));
    }
    let g = cofactor(&sum, factor)?.ok_or(RuleError::NoCommonFactor)?;
    let f = factor.as_single_term().ok_or(RuleError::NoCommonFactor)?;
    Ok(replace_selected(e, &selected, vec![g.product(&f)]))
}

/// Multiplies out every group factor of `t`, recursively.
fn expand_term(t: &Term) -> Vec<Term> {
    let plain: Vec<Factor> = t
        .factors()
        .iter()
        .filter(|f| !matches!(f.atom, Atom::Group(_)))
        .cloned()
        .collect();
    let mut acc = vec![t.with_factors(plain)];
    for f in t.factors() {
        let Atom::Group(inner) = &f.atom else { continue };
        let pieces: Vec<Term> = inner.terms().iter().flat_map(expand_term).collect();
        for _ in 0..f.power {
            acc = acc
                .iter()
                .flat_map(|a| pieces.iter().map(move |p| a.product(p)))
                .collect();
        }
    }
    acc.iter().map(Term::fold_roots).collect()
}

/// Distributes group factors, or substitutes a defined variable by its
/// definition.
pub fn split(e: &Expr, sel: &Selector, defs: &Definitions) -> Result<Expr, RuleError> {
    let mut selected = selection(e, sel)?;
    if let Some((label, replacement)) = &sel.substitution {
        let definition = defs.get(label).ok_or(RuleError::UndefinedSubstitution(*label))?;
        if !semantically_equal(definition, replacement)? {
            return Err(RuleError::PatternMismatch);
        }
        if selected.is_empty() {
            selected = (0..e.len())
                .filter(|&i| Expr::from(e.terms()[i].clone()).variables().contains(label))
                .collect();
        }
        if selected.is_empty() {
            return Err(RuleError::NothingToSplit);
        }
        let mut out = Vec::new();
        for (i, t) in e.terms().iter().enumerate() {
            if !selected.contains(&i) {
                out.push(t.clone());
            } else if t.with_sign(Sign::Plus).as_lone_var() == Some(*label) {
                let spliced = if t.sign().is_negative() {
                    replacement.negated()
                } else {
                    replacement.clone()
                };
                out.extend(spliced.into_terms());
            } else {
                out.extend(Expr::from(t.clone()).substitute(*label, replacement).into_terms());
            }
        }
        return Ok(Expr::new(out));
    }
    if selected.is_empty() {
        selected = (0..e.len()).filter(|&i| e.terms()[i].has_group()).collect();
    }
    if selected.is_empty() || selected.iter().any(|&i| !e.terms()[i].has_group()) {
        return Err(RuleError::NothingToSplit);
    }
    let mut out = Vec::new();
    for (i, t) in e.terms().iter().enumerate() {
        if selected.contains(&i) {
            out.extend(expand_term(t));
        } else {
            out.push(t.clone());
        }
    }
    Ok(Expr::new(out))
}

/// Divides every term of `lhs = 0` by `factor`.
pub fn eliminate_surplus(q: &Equation, factor: &Expr) -> Result<Equation, RuleError> {
    if !q.rhs.is_zero() {
        return Err(RuleError::NonZeroRhs);
    }
    if canonical_form(factor)?.is_zero() {
        return Err(RuleError::ZeroFactor);
    }
    // Dividing by a variable could lose the solutions where it vanishes.
    if !is_constant(factor) {
        return Err(RuleError::UnsupportedInput(
            "eliminate-surplus divides by constant factors only".into(),
        ));
    }
    let terms: Option<Vec<Term>> = if let Some(k) = rational_value(factor) {
        q.lhs
            .terms()
            .iter()
            .map(|t| {
                let c = t.coefficient();
                let divided = &c / &k;
                // Dividing may not introduce a new denominator.
                c.denom().is_multiple_of(divided.denom()).then(|| {
                    if k.is_one() {
                        t.clone()
                    } else {
                        t.rescaled(&divided).expect("nonzero")
                    }
                })
            })
            .collect()
    } else {
        let f = factor.as_single_term().ok_or(RuleError::ZeroFactor)?;
        q.lhs.terms().iter().map(|t| divide_term(t, &f)).collect()
    };
    let terms = terms.ok_or(RuleError::NotCommonFactor)?;
    Ok(Equation::new(Expr::new(terms), Expr::zero()))
}

/// Merges selected like terms: same signs add, different signs subtract.
pub fn add_same_subtract_different(e: &Expr, sel: &Selector) -> Result<Expr, RuleError> {
    let selected = selection(e, sel)?;
    if selected.is_empty() {
        return Ok(e.clone());
    }
    let chosen: Vec<&Term> = selected.iter().map(|&i| &e.terms()[i]).collect();
    let merged = merge_like(&chosen)?;
    Ok(replace_selected(e, &selected, merged.into_iter().collect()))
}

fn is_constant(e: &Expr) -> bool {
    e.variables().is_empty()
}

/// With a unit factor (a constant exactly equal to 1), multiplies it onto
/// the selected terms; otherwise rewrites the selected terms as the given
/// equal form.
pub fn convert(e: &Expr, sel: &Selector) -> Result<Expr, RuleError> {
    let factor = require_factor(sel, "convert")?;
    let selected = selection(e, sel)?;
    let fc = canonical_form(&factor)?;
    let is_unit = is_constant(&factor) && fc.cross_difference(&canonical_form(&Expr::one())?).is_zero();
    if is_unit {
        let unit = factor.as_single_term().expect("unit factor is nonzero");
        let terms = e
            .terms()
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if selected.contains(&i) {
                    t.product(&unit)
                } else {
                    t.clone()
                }
            })
            .collect();
        return Ok(Expr::new(terms));
    }
    let sum = Expr::new(selected.iter().map(|&i| e.terms()[i].clone()).collect());
    if !selected.is_empty() && semantically_equal(&sum, &factor)? {
        return Ok(replace_selected(e, &selected, factor.into_terms()));
    }
    if is_constant(&factor) {
        let value = crate::canon::evaluate(&factor, &Default::default())?;
        return Err(RuleError::NotAnIdentity(value.to_string()));
    }
    Err(RuleError::PatternMismatch)
}

/// Expands a square root `√r` into `√r(√r + x)(√r − x)`, or rewrites it as
/// a given equal form.
pub fn sqrt_convert(e: &Expr, sel: &Selector) -> Result<Expr, RuleError> {
    let mut selected = selection(e, sel)?;
    let root_of = |t: &Term| {
        t.factors().iter().find_map(|f| match f.atom {
            Atom::Sqrt(r) => Some(r),
            _ => None,
        })
    };
    if selected.is_empty() {
        selected = (0..e.len()).filter(|&i| root_of(&e.terms()[i]).is_some()).collect();
    }
    if selected.is_empty() || selected.iter().any(|&i| root_of(&e.terms()[i]).is_none()) {
        return Err(RuleError::PatternMismatch);
    }
    let rewrite: Box<dyn Fn(u64) -> Result<Vec<Factor>, RuleError>> = match (&sel.factor, &sel.offset) {
        (Some(target), None) => {
            let target = target.clone();
            Box::new(move |r| {
                let root = Expr::from(Term::from_atom(Atom::Sqrt(r)));
                if !is_constant(&target) || !semantically_equal(&root, &target)? {
                    return Err(RuleError::PatternMismatch);
                }
                match target.as_single_term() {
                    Some(t) if t.coefficient().is_one() && !t.is_quotient() => Ok(t.factors().to_vec()),
                    Some(t) => Ok(vec![Atom::group(Expr::from(t)).into()]),
                    None => Err(RuleError::PatternMismatch),
                }
            })
        }
        (None, Some(x)) => {
            let x = x.clone();
            Box::new(move |r| {
                let root = Expr::from(Term::from_atom(Atom::Sqrt(r)));
                let plus = root.plus(&x);
                let minus = root.minus(&x);
                let pair = Expr::from(
                    Term::from_atom(Atom::group(plus.clone())).product(&Term::from_atom(Atom::group(minus.clone()))),
                );
                let value = canonical_form(&pair)?;
                if !value.cross_difference(&canonical_form(&Expr::one())?).is_zero() {
                    let shown = match value.numerator.as_constant() {
                        Some(c) if value.is_polynomial() => c.to_string(),
                        _ => value.to_string(),
                    };
                    return Err(RuleError::NotUnitPair(shown));
                }
                Ok(vec![
                    Atom::Sqrt(r).into(),
                    Atom::group(plus).into(),
                    Atom::group(minus).into(),
                ])
            })
        }
        _ => {
            return Err(RuleError::BadSelector(
                "sqrt-convert needs exactly one of a factor or an offset".into(),
            ))
        }
    };
    let mut out = Vec::with_capacity(e.len());
    for (i, t) in e.terms().iter().enumerate() {
        if !selected.contains(&i) {
            out.push(t.clone());
            continue;
        }
        let r = root_of(t).expect("checked above");
        let replacement = rewrite(r)?;
        let mut factors = Vec::new();
        let mut done = false;
        for f in t.factors() {
            if !done && f.atom == Atom::Sqrt(r) {
                done = true;
                if f.power > 1 {
                    factors.push(Factor::new(f.atom.clone(), f.power - 1));
                }
                for g in &replacement {
                    push_factor(&mut factors, g.clone());
                }
            } else {
                push_factor(&mut factors, f.clone());
            }
        }
        out.push(t.with_factors(factors));
    }
    Ok(Expr::new(out))
}

/// Puts every term over a common denominator.
pub fn mul_div_together(e: &Expr) -> Result<Expr, RuleError> {
    if !e.terms().iter().any(Term::is_quotient) {
        return Err(RuleError::NoFractionPresent);
    }
    let mut numeric = BigUint::one();
    let mut common: Vec<Factor> = Vec::new();
    for t in e.terms() {
        numeric = numeric.lcm(t.denom());
        for d in t.divisors() {
            match common.iter_mut().find(|c| c.atom.matches(&d.atom)) {
                Some(c) => c.power = c.power.max(d.power),
                None => common.push(d.clone()),
            }
        }
    }
    let terms = e
        .terms()
        .iter()
        .map(|t| {
            let mut factors = t.factors().to_vec();
            let mut divisors = t.divisors().to_vec();
            for c in &common {
                let have = t
                    .divisors()
                    .iter()
                    .find(|d| d.atom.matches(&c.atom))
                    .map_or(0, |d| d.power);
                if c.power > have {
                    let missing = Factor::new(c.atom.clone(), c.power - have);
                    push_factor(&mut factors, missing.clone());
                    match divisors.iter_mut().find(|d| d.atom.matches(&c.atom)) {
                        Some(d) => d.power = c.power,
                        None => divisors.push(missing),
                    }
                }
            }
            let scale = &numeric / t.denom();
            Term::new(t.sign(), t.numer() * scale, numeric.clone(), factors, divisors).fold_roots()
        })
        .collect();
    Ok(Expr::new(terms))
}

/// Rewrites one term `t` as `k·t − (k−1)·t`.
pub fn add_sub_together(e: &Expr, sel: &Selector) -> Result<Expr, RuleError> {
    let spec = sel
        .split
        .as_ref()
        .ok_or_else(|| RuleError::BadSplitSpec("no term and multiplier given".into()))?;
    if spec.multiplier < 2 {
        return Err(RuleError::BadSplitSpec(format!(
            "multiplier {} is below 2",
            spec.multiplier
        )));
    }
    let Some(t) = e.terms().get(spec.term) else {
        return Err(RuleError::BadSplitSpec(format!(
            "term {} is out of range",
            spec.term + 1
        )));
    };
    let k = BigUint::from(spec.multiplier);
    let pieces = vec![t.scaled(&k), t.scaled(&(k - 1u32)).negated()];
    Ok(replace_selected(e, &[spec.term], pieces))
}

/// Two equations with the same right-hand side give `lhs₁ − lhs₂ = 0`.
pub fn cancel(q1: &Equation, q2: &Equation) -> Result<Equation, RuleError> {
    if !q1.rhs.matches(&q2.rhs) {
        return Err(RuleError::RhsMismatch);
    }
    Ok(Equation::new(q1.lhs.minus(&q2.lhs), Expr::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_equation, parse_expr};
    use crate::rules::SplitSpec;

    fn e(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    fn eq(s: &str) -> Equation {
        parse_equation(s).unwrap()
    }

    fn sel(terms: &[usize]) -> Selector {
        Selector::terms(terms.iter().map(|i| i - 1))
    }

    #[test]
    fn self_multiplication() {
        assert_eq!(self_multiply(&e("2*a")).unwrap().to_string(), "4*a^2");
        assert_eq!(self_multiply(&e("a + b")).unwrap().to_string(), "a^2 + 2*a*b + b^2");
        assert!(self_multiply(&Expr::zero()).unwrap().is_zero());
        assert_eq!(self_multiply(&e("sqrt(2)*a")).unwrap().to_string(), "2*a^2");
        assert!(matches!(self_multiply(&e("a/b")), Err(RuleError::UnsupportedInput(_))));
    }

    #[test]
    fn put_together_step_of_the_derivation() {
        let input = e("sqrt(2)*b + a + b - sqrt(2)*a - a");
        let out = put_together(&input, &sel(&[1, 2, 3, 5]).with_factor(e("(sqrt(2) + 1)"))).unwrap();
        assert_eq!(out.to_string(), "b*(sqrt(2) + 1) - sqrt(2)*a");
        let simple = put_together(
            &e("sqrt(2)*b + b - sqrt(2)*a"),
            &sel(&[1, 2]).with_factor(e("(sqrt(2) + 1)")),
        )
        .unwrap();
        assert_eq!(simple.to_string(), "b*(sqrt(2) + 1) - sqrt(2)*a");
    }

    #[test]
    fn put_together_single_term_factor() {
        let out = put_together(&e("a*b + a*c"), &sel(&[1, 2]).with_factor(e("a"))).unwrap();
        assert_eq!(out.to_string(), "a*(b + c)");
        assert_eq!(
            put_together(&e("a"), &sel(&[1]).with_factor(e("a")))
                .unwrap()
                .to_string(),
            "a"
        );
        assert_eq!(
            put_together(&e("a*b + c"), &sel(&[1, 2]).with_factor(e("a"))),
            Err(RuleError::NoCommonFactor)
        );
        assert!(matches!(
            put_together(&e("a"), &sel(&[3])),
            Err(RuleError::BadSelector(_))
        ));
        assert_eq!(put_together(&e("a + b"), &Selector::default()).unwrap(), e("a + b"));
    }

    #[test]
    fn completing_squares() {
        let first = put_together(
            &e("a^2 + 2*a*b - a*b + b^2"),
            &sel(&[1, 2, 4]).with_factor(e("(a + b)^2")),
        )
        .unwrap();
        assert_eq!(first.to_string(), "(a + b)^2 - a*b");
        let second = put_together(
            &e("a^2 + 4*a*b - 2*a*b + b^2"),
            &sel(&[1, 3, 4]).with_factor(e("(a - b)^2")),
        )
        .unwrap();
        assert_eq!(second.to_string(), "(a - b)^2 + 4*a*b");
    }

    #[test]
    fn splitting() {
        assert_eq!(
            split(&e("a*(b + c)"), &Selector::default(), &Definitions::new())
                .unwrap()
                .to_string(),
            "a*b + a*c"
        );
        let out = split(&e("b - sqrt(2)*a*(sqrt(2) - 1)"), &sel(&[2]), &Definitions::new()).unwrap();
        assert_eq!(out.to_string(), "b - 2*a + sqrt(2)*a");
        assert_eq!(
            split(&e("a + b"), &Selector::default(), &Definitions::new()),
            Err(RuleError::NothingToSplit)
        );
        assert_eq!(
            split(&e("(a + b)^2"), &Selector::default(), &Definitions::new())
                .unwrap()
                .to_string(),
            "a^2 + a*b + b*a + b^2"
        );
    }

    #[test]
    fn substitution() {
        let mut defs = Definitions::new();
        let s = Selector {
            substitution: Some((crate::Label::X, e("a + b"))),
            ..Default::default()
        };
        assert_eq!(
            split(&e("x"), &s, &defs),
            Err(RuleError::UndefinedSubstitution(crate::Label::X))
        );
        defs.insert(crate::Label::X, e("a + b"));
        assert_eq!(split(&e("x"), &s, &defs).unwrap().to_string(), "a + b");
        assert_eq!(split(&e("c - x"), &s, &defs).unwrap().to_string(), "c - a - b");
        assert_eq!(split(&e("2*x"), &s, &defs).unwrap().to_string(), "2*(a + b)");
    }

    #[test]
    fn surplus_factors() {
        let out = eliminate_surplus(&eq("3*x*(a + b + c) - 6*a*b == 0"), &e("3")).unwrap();
        assert_eq!(out.to_string(), "x*(a + b + c) - 2*a*b == 0");
        let out = eliminate_surplus(
            &eq("b*(sqrt(2) + 1) - sqrt(2)*a*(sqrt(2) - 1)*(sqrt(2) + 1) == 0"),
            &e("(sqrt(2) + 1)"),
        )
        .unwrap();
        assert_eq!(out.to_string(), "b - sqrt(2)*a*(sqrt(2) - 1) == 0");
        assert_eq!(eliminate_surplus(&eq("a == 0"), &e("1")).unwrap(), eq("a == 0"));
        assert_eq!(eliminate_surplus(&eq("a == b"), &e("1")), Err(RuleError::NonZeroRhs));
        assert_eq!(eliminate_surplus(&eq("a == 0"), &e("0")), Err(RuleError::ZeroFactor));
        assert!(matches!(
            eliminate_surplus(&eq("a*b + a == 0"), &e("a")),
            Err(RuleError::UnsupportedInput(_))
        ));
        assert_eq!(
            eliminate_surplus(&eq("sqrt(2)*a + b == 0"), &e("sqrt(2)")),
            Err(RuleError::NotCommonFactor)
        );
        assert_eq!(
            eliminate_surplus(&eq("3*a + 2*b == 0"), &e("3")),
            Err(RuleError::NotCommonFactor)
        );
    }

    #[test]
    fn like_terms() {
        assert_eq!(
            add_same_subtract_different(&e("2*a*b + 2*a*b"), &sel(&[1, 2]))
                .unwrap()
                .to_string(),
            "4*a*b"
        );
        assert_eq!(
            add_same_subtract_different(&e("-2*a*b - 2*a*b"), &sel(&[1, 2]))
                .unwrap()
                .to_string(),
            "-4*a*b"
        );
        assert!(add_same_subtract_different(&e("a^2 - a^2"), &sel(&[1, 2]))
            .unwrap()
            .is_zero());
        assert_eq!(
            add_same_subtract_different(&e("a + b"), &sel(&[1, 2])),
            Err(RuleError::NotLikeTerms)
        );
    }

    #[test]
    fn conversion() {
        assert_eq!(
            convert(&e("a^2 - b^2"), &sel(&[1, 2]).with_factor(e("(a + b)*(a - b)")))
                .unwrap()
                .to_string(),
            "(a + b)*(a - b)"
        );
        assert_eq!(
            convert(
                &e("b*(sqrt(2) + 1) - sqrt(2)*a"),
                &sel(&[2]).with_factor(e("(sqrt(2) - 1)*(sqrt(2) + 1)"))
            )
            .unwrap()
            .to_string(),
            "b*(sqrt(2) + 1) - sqrt(2)*a*(sqrt(2) - 1)*(sqrt(2) + 1)"
        );
        assert_eq!(
            convert(&e("a + b"), &sel(&[1, 2]).with_factor(e("1"))).unwrap(),
            e("a + b")
        );
        assert_eq!(
            convert(&e("a"), &sel(&[1]).with_factor(e("(sqrt(2) + 1)*(sqrt(2) + 1)"))),
            Err(RuleError::NotAnIdentity("3 + 2*sqrt(2)".into()))
        );
        assert_eq!(
            convert(&e("a"), &sel(&[1]).with_factor(e("b"))),
            Err(RuleError::PatternMismatch)
        );
    }

    #[test]
    fn square_root_conversion() {
        let offset = Selector {
            offset: Some(e("1")),
            ..Default::default()
        };
        assert_eq!(
            sqrt_convert(&e("sqrt(2)"), &offset).unwrap().to_string(),
            "sqrt(2)*(sqrt(2) + 1)*(sqrt(2) - 1)"
        );
        let target = Selector::factor(e("(sqrt(2) - 1)*(sqrt(2) + 2)"));
        assert_eq!(
            sqrt_convert(&e("sqrt(2)*a"), &target).unwrap().to_string(),
            "(sqrt(2) - 1)*(sqrt(2) + 2)*a"
        );
        let bad = Selector {
            offset: Some(e("2")),
            ..Default::default()
        };
        assert_eq!(
            sqrt_convert(&e("sqrt(2)"), &bad),
            Err(RuleError::NotUnitPair("-2".into()))
        );
    }

    #[test]
    fn common_denominator() {
        assert_eq!(
            mul_div_together(&e("a^2/b + 2*a + b")).unwrap().to_string(),
            "a^2/b + 2*a*b/b + b^2/b"
        );
        assert_eq!(mul_div_together(&e("a/b")).unwrap(), e("a/b"));
        assert_eq!(mul_div_together(&e("1/2 + a")).unwrap().to_string(), "1/2 + 2*a/2");
        assert_eq!(mul_div_together(&e("a + b")), Err(RuleError::NoFractionPresent));
    }

    #[test]
    fn negative_term_creation() {
        let spec = |term, multiplier| Selector {
            split: Some(SplitSpec { term, multiplier }),
            ..Default::default()
        };
        assert_eq!(
            add_sub_together(&e("a^2 + a*b + b^2"), &spec(1, 2))
                .unwrap()
                .to_string(),
            "a^2 + 2*a*b - a*b + b^2"
        );
        assert_eq!(
            add_sub_together(&e("a^2 + 2*a*b + b^2"), &spec(1, 2))
                .unwrap()
                .to_string(),
            "a^2 + 4*a*b - 2*a*b + b^2"
        );
        assert!(matches!(
            add_sub_together(&e("a"), &spec(0, 1)),
            Err(RuleError::BadSplitSpec(_))
        ));
        assert!(matches!(
            add_sub_together(&e("a"), &spec(3, 2)),
            Err(RuleError::BadSplitSpec(_))
        ));
    }

    #[test]
    fn move_left_and_cancel() {
        let out = cancel(&eq("sqrt(2)*b + a + b == x"), &eq("sqrt(2)*a + a == x")).unwrap();
        assert_eq!(out.to_string(), "sqrt(2)*b + a + b - sqrt(2)*a - a == 0");
        assert_eq!(cancel(&eq("a == x"), &eq("a == y")), Err(RuleError::RhsMismatch));
        let same = cancel(&eq("a == x"), &eq("a == x")).unwrap();
        assert!(canonical_form(&same.lhs).unwrap().is_zero());
    }
}

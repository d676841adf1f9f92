//! Numeric witnesses: bindings at which a stated result visibly differs
//! from what the input allows.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Definitions;
use crate::canon::{canonical_form, evaluate, Bindings};
use crate::expr::{Equation, Expr};
use crate::label::Label;
use crate::surd::SurdNumber;

/// Small distinct rationals, one per label.
const PRIMARY: [(i64, i64); 12] = [
    (7, 3),
    (5, 11),
    (2, 7),
    (3, 13),
    (11, 17),
    (13, 19),
    (17, 23),
    (19, 29),
    (23, 31),
    (29, 37),
    (31, 41),
    (37, 43),
];

/// Used when the primary probe makes a denominator vanish.
const FALLBACK: [(i64, i64); 12] = [
    (5, 2),
    (3, 7),
    (11, 5),
    (7, 13),
    (13, 11),
    (17, 7),
    (19, 13),
    (23, 11),
    (29, 17),
    (31, 19),
    (37, 23),
    (41, 29),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub bindings: Bindings,
    /// Named values at the binding, e.g. `("stated lhs", …)`.
    pub values: Vec<(String, SurdNumber)>,
}

fn ratio(n: i64, d: i64) -> SurdNumber {
    SurdNumber::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Binds defined variables to the value of their definition.
fn bind_definitions(mut b: Bindings, defs: &Definitions) -> Bindings {
    for (label, def) in defs {
        if let Ok(v) = evaluate(def, &b) {
            b.insert(*label, v);
        }
    }
    b
}

/// The probe bindings tried in order: `{a=7/3, b=5/11, c=2/7, …}`, then a
/// fallback set. Defined variables take the value of their definition.
pub fn probe_bindings(defs: &Definitions) -> Vec<Bindings> {
    [PRIMARY, FALLBACK]
        .iter()
        .map(|table| {
            let b = Label::all()
                .zip(table.iter())
                .map(|(l, &(n, d))| (l, ratio(n, d)))
                .collect();
            bind_definitions(b, defs)
        })
        .collect()
}

fn restrict(b: &Bindings, labels: &[Label]) -> Bindings {
    b.iter()
        .filter(|(l, _)| labels.contains(l))
        .map(|(l, v)| (*l, v.clone()))
        .collect()
}

fn labels_of(exprs: &[&Expr]) -> Vec<Label> {
    let mut out: Vec<Label> = exprs.iter().flat_map(|e| e.variables()).collect();
    out.sort();
    out.dedup();
    out
}

fn side_values(q: &Equation, b: &Bindings) -> Option<(SurdNumber, SurdNumber)> {
    Some((evaluate(&q.lhs, b).ok()?, evaluate(&q.rhs, b).ok()?))
}

fn equation_values(input: &Equation, stated: &Equation, b: &Bindings) -> Option<Vec<(String, SurdNumber)>> {
    let (il, ir) = side_values(input, b)?;
    let (sl, sr) = side_values(stated, b)?;
    Some(vec![
        ("input lhs".to_string(), il),
        ("input rhs".to_string(), ir),
        ("stated lhs".to_string(), sl),
        ("stated rhs".to_string(), sr),
    ])
}

/// A binding that satisfies `input` but not `stated`: the highest-index
/// variable in which the input is linear is solved for, with every other
/// variable set to its label index plus one (so `a = 1`). Falls back to the
/// probe bindings.
pub fn equation_witness(input: &Equation, stated: &Equation, defs: &Definitions) -> Option<Witness> {
    let labels = labels_of(&[&input.lhs, &input.rhs, &stated.lhs, &stated.rhs]);
    if let Some(w) = solved_witness(input, stated, &labels) {
        return Some(w);
    }
    for probe in probe_bindings(defs) {
        let b = restrict(&probe, &labels);
        let Some(values) = equation_values(input, stated, &b) else {
            continue;
        };
        let input_gap = &values[0].1 - &values[1].1;
        let stated_gap = &values[2].1 - &values[3].1;
        if input_gap != stated_gap {
            return Some(Witness { bindings: b, values });
        }
    }
    None
}

fn solved_witness(input: &Equation, stated: &Equation, labels: &[Label]) -> Option<Witness> {
    let residual = canonical_form(&input.residual()).ok()?;
    for &v in labels.iter().rev() {
        let Some((a, c)) = residual.numerator.split_linear(v) else {
            continue;
        };
        let mut b: Bindings = labels
            .iter()
            .filter(|&&l| l != v)
            .map(|&l| (l, SurdNumber::from_integer(l.index() as i64 + 1)))
            .collect();
        let (Ok(a), Ok(c)) = (a.evaluate(&b), c.evaluate(&b)) else {
            continue;
        };
        let Ok(value) = (-c).checked_div(&a) else { continue };
        b.insert(v, value);
        let Some(values) = equation_values(input, stated, &b) else {
            continue;
        };
        if values[0].1 == values[1].1 && values[2].1 != values[3].1 {
            return Some(Witness { bindings: b, values });
        }
    }
    None
}

/// A probe binding at which `stated` and `expected` take different values.
pub fn expr_witness(expected: &Expr, stated: &Expr, defs: &Definitions, names: (&str, &str)) -> Option<Witness> {
    let labels = labels_of(&[expected, stated]);
    for probe in probe_bindings(defs) {
        let b = restrict(&probe, &labels);
        let (Ok(x), Ok(y)) = (evaluate(expected, &b), evaluate(stated, &b)) else {
            continue;
        };
        if x != y {
            return Some(Witness {
                bindings: b,
                values: vec![(names.0.to_string(), x), (names.1.to_string(), y)],
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_equation, parse_expr};

    #[test]
    fn sign_error_witness_solves_for_b_at_a_equals_one() {
        let input = parse_equation("b - 2*a + sqrt(2)*a == 0").unwrap();
        let stated = parse_equation("-2*a + sqrt(2)*a == b").unwrap();
        let w = equation_witness(&input, &stated, &Definitions::new()).unwrap();
        assert_eq!(w.bindings[&Label::A], SurdNumber::one());
        let two_minus_root = &SurdNumber::from_integer(2) - &SurdNumber::sqrt_of(2).unwrap();
        assert_eq!(w.bindings[&Label::B], two_minus_root);
        assert_eq!(w.values[2].1.to_decimal(4), "-0.5858");
        assert_eq!(w.values[3].1.to_decimal(4), "0.5858");
    }

    #[test]
    fn probe_values() {
        let probes = probe_bindings(&Definitions::new());
        assert_eq!(probes[0][&Label::A], ratio(7, 3));
        assert_eq!(probes[0][&Label::B], ratio(5, 11));
        assert_eq!(probes[0][&Label::C], ratio(2, 7));
        let mut defs = Definitions::new();
        defs.insert(Label::X, parse_expr("a + b").unwrap());
        assert_eq!(probe_bindings(&defs)[0][&Label::X], &ratio(7, 3) + &ratio(5, 11));
    }

    #[test]
    fn expression_witness_differs() {
        let w = expr_witness(
            &parse_expr("b + (sqrt(2) - 2)*a").unwrap(),
            &parse_expr("b + (2 - sqrt(2))*a").unwrap(),
            &Definitions::new(),
            ("expected", "stated"),
        )
        .unwrap();
        assert_ne!(w.values[0].1, w.values[1].1);
    }
}

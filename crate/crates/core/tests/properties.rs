use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use tenzan_core::canon::Poly;
use tenzan_core::notation::{
    format_kanji_numeral, format_traditional_length, parse_expr, parse_kanji_numeral, parse_traditional_length,
    render_modern, TraditionalLength,
};
use tenzan_core::rules::{
    add_same_subtract_different, add_sub_together, cancel, convert, probe_bindings, put_together, split, sqrt_convert,
    verify_application, Definitions, RuleApplication, Selector, SplitSpec, Subject, Verdict,
};
use tenzan_core::{
    canonical_form, equation_equivalent, evaluate, semantically_equal, Atom, Bindings, Equation, Expr, Factor, Label,
    Sign, SurdNumber, Term,
};

fn label(i: usize) -> Label {
    Label::new(i).unwrap()
}

fn ratio(n: i64, d: i64) -> SurdNumber {
    SurdNumber::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn surd() -> impl Strategy<Value = SurdNumber> {
    prop::collection::vec(
        (prop::sample::select(vec![1u64, 2, 3, 5, 6]), -9i64..=9, 1i64..=6),
        0..4,
    )
    .prop_map(|parts| {
        parts.into_iter().fold(SurdNumber::zero(), |acc, (r, n, d)| {
            &acc + &SurdNumber::sqrt_of(r)
                .unwrap()
                .scale(&BigRational::new(n.into(), d.into()))
        })
    })
}

fn simple_term() -> impl Strategy<Value = Term> {
    (
        any::<bool>(),
        1u32..=6,
        prop::sample::select(vec![1u32, 1, 1, 2, 3]),
        prop::option::weighted(0.3, prop::sample::select(vec![2u64, 3, 5])),
        prop::collection::btree_map(0usize..5, 1u32..=2, 0..=2),
    )
        .prop_map(|(neg, numer, denom, root, vars)| {
            let mut factors: Vec<Factor> = root.map(|r| Factor::from(Atom::Sqrt(r))).into_iter().collect();
            factors.extend(vars.into_iter().map(|(i, p)| Factor::new(Atom::Var(label(i)), p)));
            let sign = if neg { Sign::Minus } else { Sign::Plus };
            Term::new(sign, numer.into(), denom.into(), factors, [])
        })
}

fn simple_expr(min: usize, max: usize) -> impl Strategy<Value = Expr> {
    prop::collection::vec(simple_term(), min..=max).prop_map(Expr::new)
}

fn nonzero_group() -> impl Strategy<Value = Expr> {
    simple_expr(2, 3).prop_filter("group is not identically zero", |e| {
        !canonical_form(e).unwrap().is_zero()
    })
}

/// Terms that may carry one group factor and one divisor.
fn term() -> impl Strategy<Value = Term> {
    (
        simple_term(),
        prop::option::weighted(0.4, (nonzero_group(), 1u32..=2)),
        prop::option::weighted(0.2, 0usize..5),
    )
        .prop_map(|(base, group, divisor)| {
            let mut factors = base.factors().to_vec();
            factors.extend(group.map(|(g, p)| Factor::new(Atom::group(g), p)));
            let divisors: Vec<Factor> = divisor.map(|i| Factor::from(Atom::Var(label(i)))).into_iter().collect();
            Term::new(
                base.sign(),
                base.numer().clone(),
                base.denom().clone(),
                factors,
                divisors,
            )
        })
}

fn expr() -> impl Strategy<Value = Expr> {
    prop::collection::vec(term(), 1..=4).prop_map(Expr::new)
}

/// Nonzero rational bindings for a..e.
fn bindings() -> impl Strategy<Value = Bindings> {
    prop::collection::vec((prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=7), 5).prop_map(|vals| {
        vals.into_iter()
            .enumerate()
            .map(|(i, (n, d))| (label(i), ratio(n, d)))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn surd_field_axioms(a in surd(), b in surd(), c in surd()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn surd_decimal_agrees_with_float(a in surd()) {
        let printed: f64 = a.to_decimal(12).parse().unwrap();
        prop_assert!((printed - a.to_f64()).abs() <= 1e-9 * (1.0 + a.to_f64().abs()));
    }

    #[test]
    fn parse_render_round_trip(e in expr()) {
        let text = render_modern(&e);
        let back = parse_expr(&text).unwrap();
        prop_assert_eq!(&back, &e, "rendered as {}", text);
        prop_assert_eq!(render_modern(&back), text);
    }

    #[test]
    fn evaluation_consistency(e in expr(), b in bindings()) {
        let canon = canonical_form(&e).unwrap();
        prop_assert_eq!(evaluate(&e, &b).unwrap(), canon.evaluate(&b).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent(e in expr()) {
        let canon = canonical_form(&e).unwrap();
        let again = canonical_form(&canon.to_expr()).unwrap();
        prop_assert_eq!(again, canon);
    }

    #[test]
    fn semantic_equality_is_an_equivalence(e in expr(), f in expr()) {
        prop_assert!(semantically_equal(&e, &e).unwrap());
        let mut reversed = e.terms().to_vec();
        reversed.reverse();
        let reversed = Expr::new(reversed);
        let canon = canonical_form(&e).unwrap().to_expr();
        prop_assert!(semantically_equal(&e, &reversed).unwrap());
        prop_assert!(semantically_equal(&reversed, &e).unwrap());
        prop_assert!(semantically_equal(&reversed, &canon).unwrap());
        prop_assert!(semantically_equal(&e, &canon).unwrap());
        prop_assert_eq!(semantically_equal(&e, &f).unwrap(), semantically_equal(&f, &e).unwrap());
    }

    #[test]
    fn equation_equivalence_under_constant_scaling(e in simple_expr(1, 4), k in surd()) {
        prop_assume!(!k.is_zero());
        let scaled = canonical_form(&e).unwrap().numerator.scale(&k).to_expr();
        let q1 = Equation::new(e.clone(), Expr::zero());
        let q2 = Equation::new(Expr::zero(), scaled);
        prop_assert!(equation_equivalent(&q1, &q2).unwrap());
    }

    #[test]
    fn kanji_numerals_round_trip(n in 1u64..=9999) {
        let text = format_kanji_numeral(n).unwrap();
        prop_assert_eq!(parse_kanji_numeral(&text).unwrap() as u64, n);
    }

    #[test]
    fn traditional_lengths_round_trip(mo in 0u64..=999_999) {
        let length = TraditionalLength::from_mo(mo);
        let parsed = parse_traditional_length(&length.to_string()).unwrap();
        prop_assert_eq!(parsed, length);
        let value = SurdNumber::from_rational(length.value_in_sun());
        prop_assert_eq!(format_traditional_length(&value).unwrap(), length);
    }

    #[test]
    fn truncation_never_rounds_up(a in surd()) {
        prop_assume!(a.signum() >= 0);
        let length = format_traditional_length(&a).unwrap();
        let below = SurdNumber::from_rational(length.value_in_sun());
        let above = SurdNumber::from_rational(length.value_in_sun() + BigRational::new(1.into(), 1000.into()));
        prop_assert!((&a - &below).signum() >= 0);
        prop_assert!((&above - &a).signum() > 0);
    }

    #[test]
    fn conversions_never_change_values(e in simple_expr(1, 4), b in bindings(), pick in 0usize..4) {
        let i = pick % e.len();
        let unit = parse_expr("(sqrt(2) - 1)*(sqrt(2) + 1)").unwrap();
        let out = convert(&e, &Selector::terms([i]).with_factor(unit)).unwrap();
        prop_assert_eq!(evaluate(&out, &b).unwrap(), evaluate(&e, &b).unwrap());
        let rooted = Expr::new(vec![Term::from_atom(Atom::Sqrt(5)).product(&e.terms()[i])]);
        let sel = Selector { offset: Some(parse_expr("2").unwrap()), ..Selector::terms([0]) };
        let out = sqrt_convert(&rooted, &sel).unwrap();
        prop_assert_eq!(evaluate(&out, &b).unwrap(), evaluate(&rooted, &b).unwrap());
    }

    #[test]
    fn split_undoes_put_together(g in nonzero_group(), k in simple_term(), rest in simple_expr(0, 2)) {
        let mut terms: Vec<Term> = g.terms().iter().map(|t| k.product(t)).collect();
        let n = terms.len();
        terms.extend(rest.into_terms());
        let e = Expr::new(terms);
        let factor = Expr::new(vec![Term::from_atom(Atom::group(g))]);
        let together = put_together(&e, &Selector::terms(0..n).with_factor(factor)).unwrap();
        prop_assert!(semantically_equal(&together, &e).unwrap());
        if together.terms().iter().any(Term::has_group) {
            let apart = split(&together, &Selector::default(), &Definitions::new()).unwrap();
            prop_assert!(semantically_equal(&apart, &e).unwrap());
        }
    }

    #[test]
    fn add_same_undoes_add_sub_together(e in simple_expr(1, 4), pick in 0usize..4, k in 2u32..=5) {
        let i = pick % e.len();
        let spec = Selector { split: Some(SplitSpec { term: i, multiplier: k }), ..Default::default() };
        let apart = add_sub_together(&e, &spec).unwrap();
        prop_assert!(semantically_equal(&apart, &e).unwrap());
        let back = add_same_subtract_different(&apart, &Selector::terms([i, i + 1])).unwrap();
        prop_assert_eq!(back.terms()[i].coefficient(), e.terms()[i].coefficient());
        prop_assert!(back.terms()[i].is_like(&e.terms()[i]));
    }

    #[test]
    fn cancel_vanishes_where_both_inputs_hold(l1 in simple_expr(1, 3), l2 in simple_expr(1, 3), b in bindings()) {
        // Shift l2 by a constant so both sides agree at the binding.
        let v1 = evaluate(&l1, &b).unwrap();
        let shift = &v1 - &evaluate(&l2, &b).unwrap();
        let l2 = canonical_form(&l2).unwrap().numerator.add(&Poly::constant(shift)).to_expr();
        let x = label(10);
        let q1 = Equation::new(l1, Expr::var(x));
        let q2 = Equation::new(l2, Expr::var(x));
        let out = cancel(&q1, &q2).unwrap();
        let mut b = b;
        b.insert(x, v1);
        prop_assert!(evaluate(&out.lhs, &b).unwrap().is_zero());
        prop_assert!(out.rhs.is_zero());
    }

    #[test]
    fn verification_respects_the_probe(input in simple_expr(1, 3), stated in simple_expr(1, 3)) {
        let app = RuleApplication {
            rule: tenzan_core::rules::RuleId::AddSameSubtractDifferent,
            selector: Selector::default(),
            input: Subject::Expr(input.clone()),
            stated: Subject::Expr(stated.clone()),
        };
        if verify_application(&app, &Definitions::new()) == Verdict::Ok {
            let probe = &probe_bindings(&Definitions::new())[0];
            prop_assert_eq!(evaluate(&input, probe).unwrap(), evaluate(&stated, probe).unwrap());
        }
    }
}

//! Modern linear rendering, the inverse of the parser.

use std::fmt;

use num_traits::One;

use crate::expr::{Atom, Equation, Expr, Factor, Term};

fn write_factor(f: &mut fmt::Formatter<'_>, factor: &Factor) -> fmt::Result {
    match &factor.atom {
        Atom::Var(l) => write!(f, "{l}")?,
        Atom::Sqrt(r) => write!(f, "sqrt({r})")?,
        Atom::Group(e) => write!(f, "({e})")?,
        Atom::Radical(e) => write!(f, "sqrt({e})")?,
    }
    if factor.power > 1 {
        write!(f, "^{}", factor.power)?;
    }
    Ok(())
}

/// Writes the unsigned body of a term: `2*a*(b + c)/3/b`.
fn write_magnitude(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    let mut first = true;
    if !t.numer().is_one() || t.factors().is_empty() {
        write!(f, "{}", t.numer())?;
        first = false;
    }
    for factor in t.factors() {
        if !first {
            write!(f, "*")?;
        }
        write_factor(f, factor)?;
        first = false;
    }
    if !t.denom().is_one() {
        write!(f, "/{}", t.denom())?;
    }
    for d in t.divisors() {
        write!(f, "/")?;
        write_factor(f, d)?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign().is_negative() {
            write!(f, "-")?;
        }
        write_magnitude(f, self)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, t) in self.terms().iter().enumerate() {
            match (i, t.sign().is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_magnitude(f, t)?;
        }
        Ok(())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}

/// The modern linear form of `e`; `parse_expr` reads it back unchanged.
pub fn render_modern(e: &Expr) -> String {
    e.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_expr;

    fn round_trip(s: &str) {
        let e = parse_expr(s).unwrap();
        assert_eq!(render_modern(&e), s);
        assert_eq!(parse_expr(&render_modern(&e)).unwrap(), e);
    }

    #[test]
    fn step_result_renders_verbatim() {
        round_trip("b*(sqrt(2) + 1) - sqrt(2)*a");
    }

    #[test]
    fn common_denominator_example() {
        round_trip("a^2/b + 2*a + b");
    }

    #[test]
    fn zero_renders_as_digit() {
        assert_eq!(render_modern(&Expr::zero()), "0");
        assert_eq!(render_modern(&parse_expr("0").unwrap()), "0");
    }

    #[test]
    fn assorted_forms_round_trip() {
        for s in [
            "a + b/2 - c",
            "-2*a + sqrt(2)*a",
            "1/2 + 2*a/2",
            "2*a/2",
            "-(a - b)^2 + 4*a*b",
            "sqrt(1 + sqrt(2))",
            "3*x*(a + b + c) - 6*a*b",
            "1/b",
        ] {
            round_trip(s);
        }
    }

    #[test]
    fn divisors_render_last_but_parse_back_identically() {
        let e = parse_expr("sqrt(2)/(sqrt(2) + 1)*a").unwrap();
        assert_eq!(render_modern(&e), "sqrt(2)*a/(sqrt(2) + 1)");
        assert_eq!(parse_expr(&render_modern(&e)).unwrap(), e);
    }
}

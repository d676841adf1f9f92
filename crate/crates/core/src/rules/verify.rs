//! Checking a stated rule application: the semantic oracle first, then the
//! rule itself, then a structural comparison with what was written.

use std::fmt;

use super::witness::{equation_witness, expr_witness, Witness};
use super::{apply_to_equation, apply_to_expr, Definitions, RuleError, RuleId, Selector};
use crate::canon::{canonical_form, equation_equivalent, semantically_equal, ExprError};
use crate::expr::{Equation, Expr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Expr(Expr),
    Equation(Equation),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Expr(e) => write!(f, "{e}"),
            Subject::Equation(q) => write!(f, "{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub selector: Selector,
    pub input: Subject,
    pub stated: Subject,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// The stated result is correct but is not what the rule produces.
    RuleMismatch {
        engine: Subject,
    },
    /// The stated result does not follow from the input.
    SemanticFail {
        difference: String,
        witness: Option<Witness>,
    },
    /// The rule cannot be applied as selected.
    Precondition {
        error: String,
    },
}

impl Verdict {
    pub fn is_error(&self) -> bool {
        matches!(self, Verdict::SemanticFail { .. } | Verdict::Precondition { .. })
    }

    pub fn is_warning(&self) -> bool {
        matches!(self, Verdict::RuleMismatch { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::RuleMismatch { .. } => "warning:rule-mismatch",
            Verdict::SemanticFail { .. } => "error:semantic-fail",
            Verdict::Precondition { .. } => "error:precondition",
        }
    }
}

fn expand_expr(e: &Expr, defs: &Definitions) -> Expr {
    defs.iter().fold(e.clone(), |acc, (l, d)| acc.substitute(*l, d))
}

fn expand_equation(q: &Equation, defs: &Definitions) -> Equation {
    Equation::new(expand_expr(&q.lhs, defs), expand_expr(&q.rhs, defs))
}

fn difference(expected: &Expr, stated: &Expr) -> Result<String, ExprError> {
    Ok(canonical_form(&stated.minus(expected))?.to_string())
}

fn precondition(e: impl fmt::Display) -> Verdict {
    Verdict::Precondition { error: e.to_string() }
}

/// Per-side semantic check of `stated` against `expected`.
fn sides_agree(expected: &Equation, stated: &Equation, defs: &Definitions) -> Result<Option<Verdict>, ExprError> {
    for (side, x, y) in [("lhs", &expected.lhs, &stated.lhs), ("rhs", &expected.rhs, &stated.rhs)] {
        if !semantically_equal(x, y)? {
            let witness = if equation_equivalent(expected, stated)? {
                expr_witness(x, y, defs, (&format!("expected {side}"), &format!("stated {side}")))
            } else {
                equation_witness(expected, stated, defs)
            };
            return Ok(Some(Verdict::SemanticFail {
                difference: format!("{side}: {}", difference(x, y)?),
                witness,
            }));
        }
    }
    Ok(None)
}

fn semantic_check(app: &RuleApplication, defs: &Definitions) -> Result<Option<Verdict>, ExprError> {
    match (&app.input, &app.stated) {
        (Subject::Expr(input), Subject::Expr(stated)) => {
            let input = expand_expr(input, defs);
            let stated = expand_expr(stated, defs);
            let expected = match app.rule {
                RuleId::SelfMultiply => square(&input),
                _ => input,
            };
            if semantically_equal(&expected, &stated)? {
                return Ok(None);
            }
            Ok(Some(Verdict::SemanticFail {
                difference: difference(&expected, &stated)?,
                witness: expr_witness(&expected, &stated, defs, ("expected", "stated")),
            }))
        }
        (Subject::Equation(input), Subject::Equation(stated)) => {
            let input = expand_equation(input, defs);
            let stated = expand_equation(stated, defs);
            match app.rule {
                RuleId::EliminateSurplus => {
                    if equation_equivalent(&input, &stated)? {
                        return Ok(None);
                    }
                    Ok(Some(Verdict::SemanticFail {
                        difference: difference(&input.residual(), &stated.residual())?,
                        witness: equation_witness(&input, &stated, defs),
                    }))
                }
                RuleId::SelfMultiply => {
                    let squared = Equation::new(square(&input.lhs), square(&input.rhs));
                    sides_agree(&squared, &stated, defs)
                }
                _ => sides_agree(&input, &stated, defs),
            }
        }
        _ => Ok(Some(precondition(
            "input and stated result must both be expressions or both equations",
        ))),
    }
}

fn square(e: &Expr) -> Expr {
    match e.as_single_term() {
        Some(t) => Expr::from(t.product(&t)),
        None => Expr::zero(),
    }
}

/// Checks one rule application. The semantic oracle decides correctness;
/// the rule engine then decides whether the written form is the one the
/// rule produces.
pub fn verify_application(app: &RuleApplication, defs: &Definitions) -> Verdict {
    match semantic_check(app, defs) {
        Err(e) => return precondition(e),
        Ok(Some(v)) => return v,
        Ok(None) => {}
    }
    let engine = match &app.input {
        Subject::Expr(e) => apply_to_expr(app.rule, e, &app.selector, defs).map(Subject::Expr),
        Subject::Equation(q) => apply_to_equation(app.rule, q, &app.selector, defs).map(Subject::Equation),
    };
    let engine = match engine {
        Ok(s) => s,
        Err(e) => return precondition(e),
    };
    let same = match (&engine, &app.stated) {
        (Subject::Expr(x), Subject::Expr(y)) => x.matches(y),
        (Subject::Equation(x), Subject::Equation(y)) => x.matches(y),
        _ => false,
    };
    if same {
        Verdict::Ok
    } else {
        Verdict::RuleMismatch { engine }
    }
}

/// Checks that `stated` is equivalent to `input` as an equation, for steps
/// that rearrange without naming a rule.
pub fn verify_equivalence(input: &Equation, stated: &Equation, defs: &Definitions) -> Verdict {
    let input = expand_equation(input, defs);
    let stated = expand_equation(stated, defs);
    match equation_equivalent(&input, &stated) {
        Err(e) => precondition(e),
        Ok(true) => Verdict::Ok,
        Ok(false) => Verdict::SemanticFail {
            difference: difference(&input.residual(), &stated.residual()).unwrap_or_default(),
            witness: equation_witness(&input, &stated, &Definitions::new()),
        },
    }
}

impl From<RuleError> for Verdict {
    fn from(e: RuleError) -> Verdict {
        precondition(e)
    }
}

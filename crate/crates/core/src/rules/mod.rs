//! The named manipulation rules of tenzan jutsu and the move-left/cancel
//! step. Every rule is an explicit transformation driven by a [`Selector`];
//! nothing here searches for a derivation.

mod ops;
mod verify;
mod witness;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::canon::ExprError;
use crate::expr::{Equation, Expr};
use crate::label::Label;

pub use ops::{
    add_same_subtract_different, add_sub_together, cancel, convert, eliminate_surplus, mul_div_together, put_together,
    self_multiply, split, sqrt_convert,
};
pub use verify::{verify_application, verify_equivalence, RuleApplication, Subject, Verdict};
pub use witness::{equation_witness, expr_witness, probe_bindings, Witness};

/// Recorded variable definitions, used by substitution-mode splitting.
pub type Definitions = BTreeMap<Label, Expr>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    SelfMultiply,
    PutTogether,
    Split,
    EliminateSurplus,
    AddSameSubtractDifferent,
    Convert,
    SqrtConvert,
    MulDivTogether,
    AddSubTogether,
}

impl RuleId {
    pub const ALL: [RuleId; 9] = [
        RuleId::SelfMultiply,
        RuleId::PutTogether,
        RuleId::Split,
        RuleId::EliminateSurplus,
        RuleId::AddSameSubtractDifferent,
        RuleId::Convert,
        RuleId::SqrtConvert,
        RuleId::MulDivTogether,
        RuleId::AddSubTogether,
    ];

    pub fn kanji(self) -> &'static str {
        match self {
            RuleId::SelfMultiply => "自乘",
            RuleId::PutTogether => "括之",
            RuleId::Split => "解之",
            RuleId::EliminateSurplus => "遍省過乘",
            RuleId::AddSameSubtractDifferent => "同加異減",
            RuleId::Convert => "變換",
            RuleId::SqrtConvert => "開平方商變換",
            RuleId::MulDivTogether => "乗除括之",
            RuleId::AddSubTogether => "加減括之",
        }
    }

    /// English name used in reports.
    pub fn title(self) -> &'static str {
        match self {
            RuleId::SelfMultiply => "Self Multiplication",
            RuleId::PutTogether => "Put Together",
            RuleId::Split => "Splitting",
            RuleId::EliminateSurplus => "Eliminate Surplus Factors",
            RuleId::AddSameSubtractDifferent => "Add Same Subtract Different",
            RuleId::Convert => "Conversion",
            RuleId::SqrtConvert => "Square Root Conversion",
            RuleId::MulDivTogether => "Multiplication and Division Together",
            RuleId::AddSubTogether => "Addition and Subtraction Together",
        }
    }

    /// The name used in derivation scripts.
    pub fn script_name(self) -> &'static str {
        match self {
            RuleId::SelfMultiply => "self-multiply",
            RuleId::PutTogether => "put-together",
            RuleId::Split => "split",
            RuleId::EliminateSurplus => "eliminate-surplus",
            RuleId::AddSameSubtractDifferent => "add-same-subtract-different",
            RuleId::Convert => "convert",
            RuleId::SqrtConvert => "sqrt-convert",
            RuleId::MulDivTogether => "mul-div-together",
            RuleId::AddSubTogether => "add-sub-together",
        }
    }

    /// Looks a rule up by script name or kanji.
    pub fn from_name(name: &str) -> Option<RuleId> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.script_name() == name || r.kanji() == name)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.script_name())
    }
}

/// Which side of an equation an expression rule acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Side {
    #[default]
    Lhs,
    Rhs,
    Both,
}

/// `term` (0-based) is rewritten as `k·term − (k−1)·term`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSpec {
    pub term: usize,
    pub multiplier: u32,
}

/// Names the targets of a rule application. Term indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Selector {
    /// `None` means the rule's default: the left side, or both sides for
    /// rules that act on whole equations.
    pub side: Option<Side>,
    pub terms: Vec<usize>,
    pub factor: Option<Expr>,
    pub substitution: Option<(Label, Expr)>,
    /// The `x` of `(√r + x)(√r − x)` for square-root conversion.
    pub offset: Option<Expr>,
    pub split: Option<SplitSpec>,
}

impl Selector {
    pub fn terms(indices: impl IntoIterator<Item = usize>) -> Selector {
        Selector {
            terms: indices.into_iter().collect(),
            ..Default::default()
        }
    }

    pub fn factor(factor: Expr) -> Selector {
        Selector {
            factor: Some(factor),
            ..Default::default()
        }
    }

    pub fn with_factor(mut self, factor: Expr) -> Selector {
        self.factor = Some(factor);
        self
    }

    pub fn on(mut self, side: Side) -> Selector {
        self.side = Some(side);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("bad selector: {0}")]
    BadSelector(String),
    #[error("the factor does not divide the selected terms")]
    NoCommonFactor,
    #[error("nothing to split")]
    NothingToSplit,
    #[error("no recorded definition for {0}")]
    UndefinedSubstitution(Label),
    #[error("the factor is not common to every term")]
    NotCommonFactor,
    #[error("the factor is zero")]
    ZeroFactor,
    #[error("the right-hand side is not 0")]
    NonZeroRhs,
    #[error("the selected terms are not like terms")]
    NotLikeTerms,
    #[error("the factor equals {0}, not 1")]
    NotAnIdentity(String),
    #[error("the selected terms do not match the given form")]
    PatternMismatch,
    #[error("(sqrt(r) + x)(sqrt(r) - x) equals {0}, not 1")]
    NotUnitPair(String),
    #[error("no fraction present")]
    NoFractionPresent,
    #[error("bad split: {0}")]
    BadSplitSpec(String),
    #[error("the equations do not share a right-hand side")]
    RhsMismatch,
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Rejects selector fields the rule does not use.
fn check_selector(rule: RuleId, sel: &Selector, whole_equation: bool) -> Result<(), RuleError> {
    let allowed: &[&str] = match rule {
        RuleId::SelfMultiply | RuleId::MulDivTogether => &[],
        RuleId::PutTogether => &["terms", "factor"],
        RuleId::Split => &["terms", "substitution"],
        RuleId::EliminateSurplus => &["factor"],
        RuleId::AddSameSubtractDifferent => &["terms"],
        RuleId::Convert => &["terms", "factor"],
        RuleId::SqrtConvert => &["terms", "factor", "offset"],
        RuleId::AddSubTogether => &["split"],
    };
    let present = [
        ("terms", !sel.terms.is_empty()),
        ("factor", sel.factor.is_some()),
        ("substitution", sel.substitution.is_some()),
        ("offset", sel.offset.is_some()),
        ("split", sel.split.is_some()),
    ];
    for (name, set) in present {
        if set && !allowed.contains(&name) {
            return Err(RuleError::BadSelector(format!("{rule} does not take '{name}'")));
        }
    }
    if whole_equation && sel.side.is_some() {
        return Err(RuleError::BadSelector(format!("{rule} acts on the whole equation")));
    }
    Ok(())
}

fn acts_on_whole_equation(rule: RuleId) -> bool {
    matches!(rule, RuleId::SelfMultiply | RuleId::EliminateSurplus)
}

/// Applies an expression rule to `e`.
pub fn apply_to_expr(rule: RuleId, e: &Expr, sel: &Selector, defs: &Definitions) -> Result<Expr, RuleError> {
    check_selector(rule, sel, false)?;
    if sel.side.is_some() {
        return Err(RuleError::BadSelector("a side only applies to equations".into()));
    }
    match rule {
        RuleId::SelfMultiply => self_multiply(e),
        RuleId::PutTogether => put_together(e, sel),
        RuleId::Split => split(e, sel, defs),
        RuleId::EliminateSurplus => Err(RuleError::UnsupportedInput(
            "eliminate-surplus acts on equations".into(),
        )),
        RuleId::AddSameSubtractDifferent => add_same_subtract_different(e, sel),
        RuleId::Convert => convert(e, sel),
        RuleId::SqrtConvert => sqrt_convert(e, sel),
        RuleId::MulDivTogether => mul_div_together(e),
        RuleId::AddSubTogether => add_sub_together(e, sel),
    }
}

/// Applies a rule to an equation. Expression rules act on the selected
/// side; self-multiplication squares both sides; eliminate-surplus divides
/// the whole equation.
pub fn apply_to_equation(
    rule: RuleId,
    q: &Equation,
    sel: &Selector,
    defs: &Definitions,
) -> Result<Equation, RuleError> {
    let whole = acts_on_whole_equation(rule);
    check_selector(rule, sel, whole)?;
    match rule {
        RuleId::EliminateSurplus => {
            let factor = sel
                .factor
                .as_ref()
                .ok_or_else(|| RuleError::BadSelector("eliminate-surplus needs a factor".into()))?;
            eliminate_surplus(q, factor)
        }
        RuleId::SelfMultiply => Ok(Equation::new(self_multiply(&q.lhs)?, self_multiply(&q.rhs)?)),
        _ => {
            let side_sel = Selector {
                side: None,
                ..sel.clone()
            };
            let side = sel.side.unwrap_or_default();
            let lhs = match side {
                Side::Lhs | Side::Both => apply_to_expr(rule, &q.lhs, &side_sel, defs)?,
                Side::Rhs => q.lhs.clone(),
            };
            let rhs = match side {
                Side::Rhs | Side::Both => apply_to_expr(rule, &q.rhs, &side_sel, defs)?,
                Side::Lhs => q.rhs.clone(),
            };
            Ok(Equation::new(lhs, rhs))
        }
    }
}

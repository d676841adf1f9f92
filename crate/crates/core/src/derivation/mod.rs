//! Derivation scripts: a line-oriented record of a calculation in which
//! every step names its justification and states its result. The checker
//! validates each stated result; it never searches for one.

mod check;
mod parse;
mod report;

use thiserror::Error;

use crate::canon::ExprError;
use crate::expr::Equation;
use crate::label::Label;
use crate::notation::ParseError;
use crate::rules::{Definitions, RuleId, Selector};

pub use check::{check_script, final_value, FinalValueError};
pub use parse::parse_script;
pub use report::{CheckReport, StepRecord, StepReport, ValueRecord, WitnessRecord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declaration {
    pub label: Label,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// An asserted setup equation, taken as an axiom.
    Given,
    /// Move left and cancel: two equations sharing a right-hand side.
    Cancel {
        first: String,
        second: String,
    },
    Apply {
        rule: RuleId,
        target: String,
        selector: Selector,
    },
    Rearrange {
        target: String,
    },
}

impl StepKind {
    pub fn name(&self) -> &'static str {
        match self {
            StepKind::Given => "given",
            StepKind::Cancel { .. } => "cancel",
            StepKind::Apply { .. } => "apply",
            StepKind::Rearrange { .. } => "rearrange",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub id: String,
    pub line: usize,
    pub kind: StepKind,
    pub stated: Equation,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DerivationScript {
    pub title: String,
    pub declarations: Vec<Declaration>,
    pub definitions: Definitions,
    pub steps: Vec<Step>,
}

impl DerivationScript {
    pub fn step(&self, id: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("{line}: step '{id}' refers to unknown step '{target}'")]
    DanglingReference { id: String, target: String, line: usize },
    #[error("{line}: step '{id}' is already defined")]
    DuplicateStepId { id: String, line: usize },
    #[error("{line}: variable '{name}' is not declared")]
    UndeclaredVariable { name: String, line: usize },
}

impl ScriptError {
    pub fn line(&self) -> usize {
        match self {
            ScriptError::Syntax(e) => e.line(),
            ScriptError::DanglingReference { line, .. }
            | ScriptError::DuplicateStepId { line, .. }
            | ScriptError::UndeclaredVariable { line, .. } => *line,
        }
    }
}

impl From<ExprError> for FinalValueError {
    fn from(e: ExprError) -> Self {
        FinalValueError::Evaluation(e)
    }
}

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::StepKind;
use crate::expr::Equation;
use crate::rules::{Verdict, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub id: String,
    pub line: usize,
    pub kind: StepKind,
    pub stated: Equation,
    pub verdict: Verdict,
}

impl StepReport {
    /// e.g. `apply put-together to 3` or, with kanji, `apply 括之 put-together to 3`.
    pub fn describe(&self, kanji: bool) -> String {
        match &self.kind {
            StepKind::Given => "given".into(),
            StepKind::Cancel { first, second } => format!("cancel {first}, {second}"),
            StepKind::Apply { rule, target, .. } if kanji => format!("apply {} {rule} to {target}", rule.kanji()),
            StepKind::Apply { rule, target, .. } => format!("apply {rule} to {target}"),
            StepKind::Rearrange { target } => format!("rearrange {target}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub title: String,
    pub steps: Vec<StepReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueRecord {
    pub name: String,
    pub exact: String,
    pub decimal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub bindings: BTreeMap<String, String>,
    pub values: Vec<ValueRecord>,
}

/// One line of the structured report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "record", rename_all = "lowercase")]
pub enum StepRecord {
    Step {
        id: String,
        line: usize,
        kind: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        rule: Option<String>,
        verdict: String,
        stated: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        engine: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        difference: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        error: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<WitnessRecord>,
    },
    Summary {
        title: String,
        steps: usize,
        ok: usize,
        warnings: usize,
        errors: usize,
        pass: bool,
    },
}

fn witness_record(w: &Witness, precision: usize) -> WitnessRecord {
    WitnessRecord {
        bindings: w
            .bindings
            .iter()
            .map(|(l, v)| (l.ascii().to_string(), v.to_string()))
            .collect(),
        values: w
            .values
            .iter()
            .map(|(name, v)| ValueRecord {
                name: name.clone(),
                exact: v.to_string(),
                decimal: v.to_decimal(precision),
            })
            .collect(),
    }
}

impl CheckReport {
    pub fn ok_count(&self) -> usize {
        self.steps.iter().filter(|s| s.verdict == Verdict::Ok).count()
    }

    pub fn warning_count(&self) -> usize {
        self.steps.iter().filter(|s| s.verdict.is_warning()).count()
    }

    pub fn error_count(&self) -> usize {
        self.steps.iter().filter(|s| s.verdict.is_error()).count()
    }

    pub fn passed(&self) -> bool {
        self.error_count() == 0
    }

    pub fn final_equation(&self) -> Option<&Equation> {
        self.steps.last().map(|s| &s.stated)
    }

    /// Human-readable report. `kanji` adds rule names in kanji;
    /// `precision` is the number of significant digits for witness values.
    pub fn render_text(&self, kanji: bool, precision: usize) -> String {
        let mut out = String::new();
        if !self.title.is_empty() {
            let _ = writeln!(out, "problem: {}", self.title);
        }
        for s in &self.steps {
            let _ = writeln!(out, "step {}: {}: {}", s.id, s.describe(kanji), s.verdict.label());
            let _ = writeln!(out, "    {}", s.stated);
            match &s.verdict {
                Verdict::Ok => {}
                Verdict::RuleMismatch { engine } => {
                    let _ = writeln!(out, "    rule gives: {engine}");
                }
                Verdict::SemanticFail { difference, witness } => {
                    let _ = writeln!(out, "    difference: {difference}");
                    if let Some(w) = witness {
                        let bound: Vec<String> =
                            w.bindings.iter().map(|(l, v)| format!("{} = {v}", l.ascii())).collect();
                        let _ = writeln!(out, "    witness: {}", bound.join(", "));
                        for (name, v) in &w.values {
                            let (exact, decimal) = (v.to_string(), v.to_decimal(precision));
                            if exact == decimal {
                                let _ = writeln!(out, "      {name} = {exact}");
                            } else {
                                let _ = writeln!(out, "      {name} = {exact} = {decimal}");
                            }
                        }
                    }
                }
                Verdict::Precondition { error } => {
                    let _ = writeln!(out, "    {error}");
                }
            }
        }
        let errors = self.error_count();
        let warnings = self.warning_count();
        let _ = writeln!(
            out,
            "summary: {}/{} ok, {warnings} warning{}, {errors} error{}",
            self.ok_count(),
            self.steps.len(),
            if warnings == 1 { "" } else { "s" },
            if errors == 1 { "" } else { "s" },
        );
        let _ = writeln!(out, "result: {}", if self.passed() { "pass" } else { "FAIL" });
        out
    }

    /// One record per step followed by a summary record.
    pub fn records(&self, precision: usize) -> Vec<StepRecord> {
        let mut out: Vec<StepRecord> = self
            .steps
            .iter()
            .map(|s| {
                let (engine, difference, error, witness) = match &s.verdict {
                    Verdict::Ok => (None, None, None, None),
                    Verdict::RuleMismatch { engine } => (Some(engine.to_string()), None, None, None),
                    Verdict::SemanticFail { difference, witness } => (
                        None,
                        Some(difference.clone()),
                        None,
                        witness.as_ref().map(|w| witness_record(w, precision)),
                    ),
                    Verdict::Precondition { error } => (None, None, Some(error.clone()), None),
                };
                StepRecord::Step {
                    id: s.id.clone(),
                    line: s.line,
                    kind: s.kind.name().into(),
                    rule: match &s.kind {
                        StepKind::Apply { rule, .. } => Some(rule.to_string()),
                        _ => None,
                    },
                    verdict: s.verdict.label().into(),
                    stated: s.stated.to_string(),
                    engine,
                    difference,
                    error,
                    witness,
                }
            })
            .collect();
        out.push(StepRecord::Summary {
            title: self.title.clone(),
            steps: self.steps.len(),
            ok: self.ok_count(),
            warnings: self.warning_count(),
            errors: self.error_count(),
            pass: self.passed(),
        });
        out
    }
}

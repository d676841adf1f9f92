use std::collections::BTreeMap;

use thiserror::Error;

use super::report::{CheckReport, StepReport};
use super::{DerivationScript, Step, StepKind};
use crate::canon::{evaluate, Bindings, ExprError};
use crate::expr::Equation;
use crate::rules::{cancel, verify_application, verify_equivalence, Definitions, RuleApplication, Subject, Verdict};
use crate::surd::SurdNumber;

fn check_cancel(first: &Equation, second: &Equation, stated: &Equation, defs: &Definitions) -> Verdict {
    let engine = match cancel(first, second) {
        Ok(q) => q,
        Err(e) => return e.into(),
    };
    match verify_equivalence(&engine, stated, defs) {
        Verdict::Ok if engine.matches(stated) => Verdict::Ok,
        Verdict::Ok => Verdict::RuleMismatch {
            engine: Subject::Equation(engine),
        },
        v => v,
    }
}

fn check_step(step: &Step, stated: &BTreeMap<&str, &Equation>, defs: &Definitions) -> Verdict {
    let at = |id: &String| stated[id.as_str()];
    match &step.kind {
        StepKind::Given => Verdict::Ok,
        StepKind::Cancel { first, second } => check_cancel(at(first), at(second), &step.stated, defs),
        StepKind::Apply { rule, target, selector } => verify_application(
            &RuleApplication {
                rule: *rule,
                selector: selector.clone(),
                input: Subject::Equation(at(target).clone()),
                stated: Subject::Equation(step.stated.clone()),
            },
            defs,
        ),
        StepKind::Rearrange { target } => verify_equivalence(at(target), &step.stated, defs),
    }
}

/// Checks every step of `script` in order. Each step is checked against
/// the stated result of the step it refers to, so one wrong step yields
/// one error rather than a cascade.
pub fn check_script(script: &DerivationScript) -> CheckReport {
    let mut stated: BTreeMap<&str, &Equation> = BTreeMap::new();
    let mut steps = Vec::with_capacity(script.steps.len());
    for step in &script.steps {
        let verdict = check_step(step, &stated, &script.definitions);
        stated.insert(&step.id, &step.stated);
        steps.push(StepReport {
            id: step.id.clone(),
            line: step.line,
            kind: step.kind.clone(),
            stated: step.stated.clone(),
            verdict,
        });
    }
    CheckReport {
        title: script.title.clone(),
        steps,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinalValueError {
    #[error("the derivation did not check")]
    ReportFailed,
    #[error("the last step does not have a lone variable on one side")]
    NotSolvedForm,
    #[error(transparent)]
    Evaluation(ExprError),
}

/// Evaluates the solved side of the final equation. The final equation
/// must have a lone variable on one side that does not occur on the other.
pub fn final_value(
    script: &DerivationScript,
    report: &CheckReport,
    bindings: &Bindings,
) -> Result<SurdNumber, FinalValueError> {
    if !report.passed() {
        return Err(FinalValueError::ReportFailed);
    }
    let last = script.steps.last().ok_or(FinalValueError::NotSolvedForm)?;
    let q = &last.stated;
    let solved = [(&q.lhs, &q.rhs), (&q.rhs, &q.lhs)]
        .into_iter()
        .find(|(lone, other)| lone.as_lone_var().is_some_and(|l| !other.variables().contains(&l)));
    let (_, value_side) = solved.ok_or(FinalValueError::NotSolvedForm)?;
    Ok(evaluate(value_side, bindings)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::parse_script;
    use crate::label::Label;

    const HEADER: &str = "problem \"t\"\nvar a = ko \"\"\nvar b = otsu \"\"\nvar x = hosha \"\"\n";

    fn run(body: &str) -> CheckReport {
        check_script(&parse_script(&format!("{HEADER}{body}")).unwrap())
    }

    fn labels(r: &CheckReport) -> Vec<&'static str> {
        r.steps.iter().map(|s| s.verdict.label()).collect()
    }

    #[test]
    fn empty_script_passes() {
        let r = check_script(&DerivationScript::default());
        assert!(r.passed());
        assert_eq!(r.steps.len(), 0);
    }

    #[test]
    fn cancel_step() {
        let r = run("1: given a + b == x\n2: given 2*a == x\n3: cancel 1, 2 => a + b - 2*a == 0\n4: cancel 1, 2 => b - a == 0\n5: cancel 1, 2 => b + a == 0\n");
        assert_eq!(
            labels(&r),
            ["ok", "ok", "ok", "warning:rule-mismatch", "error:semantic-fail"]
        );
        let r = run("1: given a + b == x\n2: given 2*a == b\n3: cancel 1, 2 => b - a == 0\n");
        assert_eq!(labels(&r), ["ok", "ok", "error:precondition"]);
    }

    #[test]
    fn errors_do_not_cascade() {
        let r = run("1: given a == x\n2: rearrange 1 => 2*a == x\n3: rearrange 2 => x == 2*a\n");
        assert_eq!(labels(&r), ["ok", "error:semantic-fail", "ok"]);
        assert!(!r.passed());
        assert_eq!(r.error_count(), 1);
    }

    #[test]
    fn solved_value() {
        let script = parse_script(&format!("{HEADER}1: given 2*a - sqrt(2)*a == b\n")).unwrap();
        let report = check_script(&script);
        let bindings = Bindings::from([(Label::from_ascii('a').unwrap(), SurdNumber::from_integer(2))]);
        assert_eq!(
            final_value(&script, &report, &bindings).unwrap().to_decimal(10),
            "1.171572875"
        );
        let script = parse_script(&format!("{HEADER}1: given b - a == 0\n")).unwrap();
        assert_eq!(
            final_value(&script, &check_script(&script), &bindings),
            Err(FinalValueError::NotSolvedForm)
        );
        let script = parse_script(&format!("{HEADER}1: given b == b*a\n")).unwrap();
        assert_eq!(
            final_value(&script, &check_script(&script), &bindings),
            Err(FinalValueError::NotSolvedForm)
        );
        let script = parse_script(&format!("{HEADER}1: given b == x\n")).unwrap();
        assert!(matches!(
            final_value(&script, &check_script(&script), &bindings),
            Err(FinalValueError::Evaluation(_))
        ));
    }
}

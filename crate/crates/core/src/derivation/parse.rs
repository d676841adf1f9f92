use std::collections::BTreeSet;

use super::{Declaration, DerivationScript, ScriptError, Step, StepKind};
use crate::expr::{Equation, Expr};
use crate::label::Label;
use crate::notation::{lex, parse_equation_from, parse_expr_from, ParseError, Tok, TokenStream};
use crate::rules::{RuleId, Selector, Side, SplitSpec};

/// One source line with its comment removed, addressed by byte offset.
struct Line<'a> {
    text: &'a str,
    number: usize,
}

impl<'a> Line<'a> {
    fn column(&self, byte: usize) -> usize {
        self.text[..byte].chars().count() + 1
    }

    fn error(&self, byte: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.number,
            column: self.column(byte),
            message: message.into(),
        }
    }

    /// Byte offset of the first non-blank character at or after `from`.
    fn skip_blank(&self, from: usize) -> usize {
        from + (self.text[from..].len() - self.text[from..].trim_start().len())
    }

    /// The next whitespace-delimited word at or after `from`, and the
    /// offset just past it.
    fn word(&self, from: usize) -> (&'a str, usize) {
        let start = self.skip_blank(from);
        let rest = &self.text[start..];
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        (&rest[..len], start + len)
    }

    fn tokens(&self, from: usize, to: usize) -> Result<Vec<crate::notation::Token>, ParseError> {
        lex(&self.text[from..to], self.number, self.column(from))
    }

    fn end(&self) -> (usize, usize) {
        (self.number, self.column(self.text.len()))
    }
}

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Parses a `"..."` string starting at `from`; returns it and the offset
/// after the closing quote.
fn quoted(line: &Line<'_>, from: usize) -> Result<(String, usize), ParseError> {
    let start = line.skip_blank(from);
    if !line.text[start..].starts_with('"') {
        return Err(line.error(start, "expected a quoted string"));
    }
    let body = &line.text[start + 1..];
    let close = body.find('"').ok_or_else(|| line.error(start, "unterminated string"))?;
    Ok((body[..close].to_string(), start + 1 + close + 1))
}

fn expect_end(line: &Line<'_>, from: usize) -> Result<(), ParseError> {
    let at = line.skip_blank(from);
    if at < line.text.len() {
        return Err(line.error(at, "unexpected text"));
    }
    Ok(())
}

fn finish(ts: &TokenStream<'_>) -> Result<(), ParseError> {
    if ts.is_done() {
        Ok(())
    } else {
        Err(ts.error("unexpected token"))
    }
}

fn expect_id(ts: &mut TokenStream<'_>) -> Result<String, ParseError> {
    match ts.peek() {
        Some(Tok::Num(n)) => {
            let id = n.to_string();
            ts.advance();
            Ok(id)
        }
        Some(Tok::Ident(w)) => {
            let id = w.clone();
            ts.advance();
            Ok(id)
        }
        _ => Err(ts.error("expected a step id")),
    }
}

fn expect_index(ts: &mut TokenStream<'_>) -> Result<usize, ParseError> {
    let n = ts.expect_int()?;
    if n == 0 {
        return Err(ts.error("term numbers start at 1"));
    }
    Ok(n as usize - 1)
}

/// `=> lhs == rhs` to the end of the line.
fn stated(ts: &mut TokenStream<'_>) -> Result<Equation, ParseError> {
    ts.expect(&Tok::Arrow, "'=>'")?;
    let q = parse_equation_from(ts)?;
    finish(ts)?;
    Ok(q)
}

fn parse_selector(ts: &mut TokenStream<'_>) -> Result<Selector, ParseError> {
    let mut sel = Selector::default();
    while !matches!(ts.peek(), Some(Tok::Arrow) | None) {
        if ts.eat_word("on") {
            let side = if ts.eat_word("lhs") {
                Side::Lhs
            } else if ts.eat_word("rhs") {
                Side::Rhs
            } else if ts.eat_word("both") {
                Side::Both
            } else {
                return Err(ts.error("expected lhs, rhs or both"));
            };
            sel.side = Some(side);
        } else if ts.eat_word("select") {
            if !ts.eat_word("terms") && !ts.eat_word("term") {
                return Err(ts.error("expected 'terms'"));
            }
            sel.terms.push(expect_index(ts)?);
            while ts.eat(&Tok::Comma) {
                sel.terms.push(expect_index(ts)?);
            }
        } else if ts.eat_word("factor") {
            sel.factor = Some(parse_expr_from(ts)?);
        } else if ts.eat_word("with") {
            let label = ts.expect_label()?;
            ts.expect(&Tok::Assign, "'='")?;
            sel.substitution = Some((label, parse_expr_from(ts)?));
        } else if ts.eat_word("offset") {
            sel.offset = Some(parse_expr_from(ts)?);
        } else if ts.eat_word("split") {
            if !ts.eat_word("term") {
                return Err(ts.error("expected 'term'"));
            }
            let term = expect_index(ts)?;
            if !ts.eat_word("by") {
                return Err(ts.error("expected 'by'"));
            }
            let k = ts.expect_int()?;
            let multiplier = u32::try_from(k).map_err(|_| ts.error("multiplier out of range"))?;
            sel.split = Some(SplitSpec { term, multiplier });
        } else {
            return Err(ts.error("expected a selector clause or '=>'"));
        }
    }
    Ok(sel)
}

fn parse_step(line: &Line<'_>, colon: usize) -> Result<Step, ParseError> {
    let id = line.text[..colon].trim();
    if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(line.error(0, "expected a step id"));
    }
    let (kind_word, after_kind) = line.word(colon + 1);
    let kind_at = line.skip_blank(colon + 1);
    let (kind, body_from) = match kind_word {
        "apply" => {
            let (name, after_name) = line.word(after_kind);
            let rule = RuleId::from_name(name)
                .ok_or_else(|| line.error(line.skip_blank(after_kind), format!("unknown rule '{name}'")))?;
            (Some(rule), after_name)
        }
        "given" | "cancel" | "rearrange" => (None, after_kind),
        _ => return Err(line.error(kind_at, format!("unknown step kind '{kind_word}'"))),
    };
    let tokens = line.tokens(body_from, line.text.len())?;
    let mut ts = TokenStream::new(&tokens, line.end());
    let (kind, stated) = match (kind_word, kind) {
        ("given", _) => {
            let q = parse_equation_from(&mut ts)?;
            finish(&ts)?;
            (StepKind::Given, q)
        }
        ("cancel", _) => {
            let first = expect_id(&mut ts)?;
            ts.expect(&Tok::Comma, "','")?;
            let second = expect_id(&mut ts)?;
            (StepKind::Cancel { first, second }, stated(&mut ts)?)
        }
        ("rearrange", _) => {
            let target = expect_id(&mut ts)?;
            (StepKind::Rearrange { target }, stated(&mut ts)?)
        }
        (_, Some(rule)) => {
            if !ts.eat_word("to") {
                return Err(ts.error("expected 'to'"));
            }
            let target = expect_id(&mut ts)?;
            let selector = parse_selector(&mut ts)?;
            (StepKind::Apply { rule, target, selector }, stated(&mut ts)?)
        }
        _ => unreachable!("step kinds are matched above"),
    };
    Ok(Step {
        id: id.to_string(),
        line: line.number,
        kind,
        stated,
    })
}

fn parse_var(line: &Line<'_>, from: usize) -> Result<Declaration, ParseError> {
    let quote = line.text[from..].find('"').map(|i| from + i).unwrap_or(line.text.len());
    let tokens = line.tokens(from, quote)?;
    let mut ts = TokenStream::new(&tokens, (line.number, line.column(quote)));
    let label = ts.expect_label()?;
    ts.expect(&Tok::Assign, "'='")?;
    let (name_line, name_col) = ts.position();
    let named = ts.expect_label()?;
    if named != label {
        return Err(ParseError::Syntax {
            line: name_line,
            column: name_col,
            message: format!("{} is {}, not {}", label.ascii(), label.kanji(), named.kanji()),
        });
    }
    finish(&ts)?;
    let description = if quote < line.text.len() {
        let (text, after) = quoted(line, quote)?;
        expect_end(line, after)?;
        text
    } else {
        String::new()
    };
    Ok(Declaration { label, description })
}

fn parse_define(line: &Line<'_>, from: usize) -> Result<(Label, Expr), ParseError> {
    let assign = line.text[from..]
        .find(":=")
        .map(|i| from + i)
        .ok_or_else(|| line.error(from, "expected ':='"))?;
    let tokens = line.tokens(from, assign)?;
    let mut ts = TokenStream::new(&tokens, (line.number, line.column(assign)));
    let label = ts.expect_label()?;
    finish(&ts)?;
    let tokens = line.tokens(assign + 2, line.text.len())?;
    let mut ts = TokenStream::new(&tokens, line.end());
    if ts.is_done() {
        return Err(ts.error("empty definition"));
    }
    let e = parse_expr_from(&mut ts)?;
    finish(&ts)?;
    Ok((label, e))
}

fn references(kind: &StepKind) -> Vec<&String> {
    match kind {
        StepKind::Given => vec![],
        StepKind::Cancel { first, second } => vec![first, second],
        StepKind::Apply { target, .. } | StepKind::Rearrange { target } => vec![target],
    }
}

fn selector_exprs(kind: &StepKind) -> Vec<&Expr> {
    let StepKind::Apply { selector, .. } = kind else {
        return vec![];
    };
    let mut out: Vec<&Expr> = selector.factor.iter().chain(selector.offset.iter()).collect();
    if let Some((_, e)) = &selector.substitution {
        out.push(e);
    }
    out
}

fn check_declared(
    used: impl IntoIterator<Item = Label>,
    declared: &BTreeSet<Label>,
    line: usize,
) -> Result<(), ScriptError> {
    for label in used {
        if !declared.contains(&label) {
            return Err(ScriptError::UndeclaredVariable {
                name: label.ascii().to_string(),
                line,
            });
        }
    }
    Ok(())
}

/// Parses a derivation script and checks that it is well formed: unique
/// step ids, references only to earlier steps, declared variables.
pub fn parse_script(text: &str) -> Result<DerivationScript, ScriptError> {
    let mut script = DerivationScript::default();
    let mut define_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = Line {
            text: strip_comment(raw).trim_end(),
            number: i + 1,
        };
        let (first, after) = line.word(0);
        match first {
            "" => {}
            "problem" => {
                let (title, end) = quoted(&line, after)?;
                expect_end(&line, end)?;
                script.title = title;
            }
            "var" => {
                let d = parse_var(&line, after)?;
                script.declarations.push(d);
            }
            "define" => {
                let (label, e) = parse_define(&line, after)?;
                script.definitions.insert(label, e);
                define_lines.push((label, line.number));
            }
            _ => match line.text.find(':') {
                Some(colon) if !line.text[colon..].starts_with(":=") => {
                    let step = parse_step(&line, colon)?;
                    if script.step(&step.id).is_some() {
                        return Err(ScriptError::DuplicateStepId {
                            id: step.id,
                            line: step.line,
                        });
                    }
                    for target in references(&step.kind) {
                        if script.step(target).is_none() {
                            return Err(ScriptError::DanglingReference {
                                id: step.id.clone(),
                                target: target.clone(),
                                line: step.line,
                            });
                        }
                    }
                    script.steps.push(step);
                }
                _ => {
                    return Err(line
                        .error(line.skip_blank(0), format!("unknown directive '{first}'"))
                        .into())
                }
            },
        }
    }
    let declared: BTreeSet<Label> = script.declarations.iter().map(|d| d.label).collect();
    for (label, line) in define_lines {
        let def = &script.definitions[&label];
        check_declared(std::iter::once(label).chain(def.variables()), &declared, line)?;
    }
    for step in &script.steps {
        let mut used = step.stated.lhs.variables();
        used.extend(step.stated.rhs.variables());
        for e in selector_exprs(&step.kind) {
            used.extend(e.variables());
        }
        if let StepKind::Apply { selector, .. } = &step.kind {
            used.extend(selector.substitution.as_ref().map(|(l, _)| *l));
        }
        check_declared(used, &declared, step.line)?;
    }
    Ok(script)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_equation;

    const HEADER: &str = "problem \"test\"\nvar a = 甲 \"first\"\nvar b = otsu \"second\"\nvar x = 方斜 \"diagonal\"\n";

    fn script(body: &str) -> Result<DerivationScript, ScriptError> {
        parse_script(&format!("{HEADER}{body}"))
    }

    #[test]
    fn header_and_steps() {
        let s = script(
            "1: given sqrt(2)*b + a + b == x  # first way\n\
             2: given sqrt(2)*a + a == x\n\
             3: cancel 1, 2 => sqrt(2)*b + a + b - sqrt(2)*a - a == 0\n\
             4: apply put-together to 3 select terms 1,2,3,5 factor (sqrt(2) + 1) => b*(sqrt(2) + 1) - sqrt(2)*a == 0\n\
             5: rearrange 4 => b*(sqrt(2) + 1) == sqrt(2)*a\n",
        )
        .unwrap();
        assert_eq!(s.title, "test");
        assert_eq!(s.declarations.len(), 3);
        assert_eq!(s.declarations[2].label.kanji(), "方斜");
        assert_eq!(s.steps.len(), 5);
        assert_eq!(s.steps[0].stated, parse_equation("sqrt(2)*b + a + b == x").unwrap());
        let StepKind::Apply { rule, target, selector } = &s.steps[3].kind else {
            panic!("expected an apply step");
        };
        assert_eq!(*rule, RuleId::PutTogether);
        assert_eq!(target, "3");
        assert_eq!(selector.terms, vec![0, 1, 2, 4]);
        assert!(selector.factor.is_some());
    }

    #[test]
    fn selector_clauses() {
        let s = parse_script(
            "var a = a\nvar b = b\nvar x = x\ndefine x := a + b\n\
             1: given x^2 == a*b\n\
             2: apply split to 1 on lhs with x = a + b => (a + b)^2 == a*b\n\
             3: apply add-sub-together to 2 on rhs split term 1 by 3 => (a + b)^2 == 3*a*b - 2*a*b\n\
             4: apply sqrt-convert to 3 on both offset 1 => (a + b)^2 == 3*a*b - 2*a*b\n",
        )
        .unwrap();
        assert_eq!(s.definitions.len(), 1);
        let StepKind::Apply { selector, .. } = &s.steps[2].kind else {
            panic!()
        };
        assert_eq!(selector.side, Some(Side::Rhs));
        assert_eq!(selector.split, Some(SplitSpec { term: 0, multiplier: 3 }));
        let StepKind::Apply { selector, .. } = &s.steps[3].kind else {
            panic!()
        };
        assert_eq!(selector.side, Some(Side::Both));
        assert_eq!(selector.offset, Some(Expr::one()));
    }

    #[test]
    fn empty_script_is_valid() {
        let s = parse_script("# nothing here\n\n").unwrap();
        assert!(s.steps.is_empty());
    }

    #[test]
    fn dangling_reference() {
        let err = script("1: given a == x\n2: rearrange 7 => x == a\n").unwrap_err();
        assert!(
            matches!(err, ScriptError::DanglingReference { ref target, line: 6, .. } if target == "7"),
            "{err}"
        );
    }

    #[test]
    fn forward_reference_is_dangling() {
        let err = script("1: rearrange 2 => x == a\n2: given a == x\n").unwrap_err();
        assert!(matches!(err, ScriptError::DanglingReference { .. }));
    }

    #[test]
    fn duplicate_step() {
        let err = script("1: given a == x\n1: given b == x\n").unwrap_err();
        assert_eq!(
            err,
            ScriptError::DuplicateStepId {
                id: "1".into(),
                line: 6
            }
        );
    }

    #[test]
    fn undeclared_variable() {
        let err = script("1: given a == c\n").unwrap_err();
        assert_eq!(
            err,
            ScriptError::UndeclaredVariable {
                name: "c".into(),
                line: 5
            }
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = script("1: given a == \n").unwrap_err();
        assert_eq!(err.line(), 5);
        let err = script("1: apply shuffle to 1 => a == x\n").unwrap_err();
        assert!(err.to_string().contains("unknown rule 'shuffle'"), "{err}");
        assert!(err.to_string().starts_with("5:10:"), "{err}");
        let err = script("1: given a == x\n2: apply split to 1 select terms 0 => a == x\n").unwrap_err();
        assert!(err.to_string().contains("start at 1"));
        let err = parse_script("var a = 乙\n").unwrap_err();
        assert!(err.to_string().contains("a is 甲"), "{err}");
        assert!(parse_script("frobnicate\n").is_err());
        assert!(parse_script("problem untitled\n").is_err());
    }

    #[test]
    fn rule_names_accept_kanji() {
        let s = script("1: given a*x == 0\n2: apply 遍省過乘 to 1 factor x => a == 0\n").unwrap();
        assert!(matches!(
            s.steps[1].kind,
            StepKind::Apply {
                rule: RuleId::EliminateSurplus,
                ..
            }
        ));
    }
}

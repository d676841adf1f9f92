//! The conversion identities listed alongside the conversion rules, checked
//! by exact arithmetic. Entries that disagree with the printed value are
//! reported, not corrected.

use serde::Serialize;
use tenzan_core::notation::parse_expr;
use tenzan_core::{evaluate, Bindings, Expr, SurdNumber};

pub struct IdentityEntry {
    pub claimed: &'static str,
    pub product: &'static str,
    /// Listed as "positive value when the values are negative".
    pub sign_caveat: bool,
}

const fn entry(claimed: &'static str, product: &'static str, sign_caveat: bool) -> IdentityEntry {
    IdentityEntry {
        claimed,
        product,
        sign_caveat,
    }
}

pub const ENTRIES: [IdentityEntry; 12] = [
    entry("1", "(sqrt(2) - 1)*(sqrt(2) + 1)", false),
    entry("1", "(sqrt(2) - 1)^2*(sqrt(2) + 1)^2", false),
    entry("1", "(sqrt(3) - 2)*(sqrt(3) + 2)", false),
    entry("1", "(sqrt(5) - 2)*(sqrt(5) + 2)", false),
    entry("2", "(sqrt(2) - 1)^2*(sqrt(2) + 2)^2", false),
    entry("2", "(sqrt(3) - 1)*(sqrt(3) + 1)", false),
    entry("sqrt(2)", "(sqrt(2) - 1)*(sqrt(2) + 2)", false),
    entry("sqrt(2)", "(sqrt(2) - 2)^2*(sqrt(2) + 1)^2", false),
    entry("4", "(sqrt(5) - 1)*(sqrt(5) + 1)", false),
    entry("2", "(sqrt(2) - 2)*(sqrt(2) + 2)", true),
    entry("2", "(sqrt(3) - 2)*(sqrt(3) + 1)^2", true),
    entry("sqrt(2)", "(sqrt(2) - 2)*(sqrt(2) + 1)", true),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Agreement {
    Exact,
    UpToSign,
    Disagrees,
}

impl Agreement {
    pub fn describe(self) -> &'static str {
        match self {
            Agreement::Exact => "matches",
            Agreement::UpToSign => "matches up to sign, as the caveat allows",
            Agreement::Disagrees => "disagrees with source text",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub claimed: String,
    pub product: String,
    pub sign_caveat: bool,
    pub value: String,
    pub agreement: Agreement,
}

fn constant(text: &str) -> SurdNumber {
    let e: Expr = parse_expr(text).expect("identity table entries parse");
    evaluate(&e, &Bindings::new()).expect("identity table entries are constants")
}

pub fn check(entry: &IdentityEntry) -> IdentityResult {
    let claimed = constant(entry.claimed);
    let value = constant(entry.product);
    let agreement = if value == claimed {
        Agreement::Exact
    } else if entry.sign_caveat && value == -&claimed {
        Agreement::UpToSign
    } else {
        Agreement::Disagrees
    };
    IdentityResult {
        claimed: entry.claimed.to_string(),
        product: entry.product.to_string(),
        sign_caveat: entry.sign_caveat,
        value: value.to_string(),
        agreement,
    }
}

pub fn check_all() -> Vec<IdentityResult> {
    ENTRIES.iter().map(check).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_is_a_constant_product() {
        for e in &ENTRIES {
            assert!(parse_expr(e.product).unwrap().variables().is_empty());
        }
        assert_eq!(ENTRIES.iter().filter(|e| !e.sign_caveat).count(), 9);
        assert_eq!(ENTRIES.iter().filter(|e| e.sign_caveat).count(), 3);
    }

    #[test]
    fn flagged_entries() {
        let results = check_all();
        let flagged: Vec<(&str, &str)> = results
            .iter()
            .filter(|r| r.agreement == Agreement::Disagrees)
            .map(|r| (r.product.as_str(), r.value.as_str()))
            .collect();
        assert_eq!(
            flagged,
            [
                ("(sqrt(3) - 2)*(sqrt(3) + 2)", "-1"),
                ("(sqrt(2) - 2)^2*(sqrt(2) + 1)^2", "2")
            ]
        );
        assert!(results[9..].iter().all(|r| r.agreement == Agreement::UpToSign));
        assert_eq!(results[9].value, "-2");
    }
}

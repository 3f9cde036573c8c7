//! The table of element-order assertions: one JSON object per line, each naming a
//! parameter set, a word in the generators and what its order must satisfy.
//!
//! ```text
//! {"id": "...", "n": 9, "q": 5, "a": 2, "force": true, "word": "[x,y]",
//!  "expect": {"exact_order": 156}, "paper_ref": "..."}
//! ```
//!
//! `a` is a field element in the usual JSON syntax, or `"*"` for every admissible
//! parameter. A trailing `|S9` restricts the word to `⟨e_{n−8}, …, e_n⟩` in that basis order.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Recorder, VerificationReport};
use crate::error::{Error, Result};
use crate::ff::{Field, Fq};
use crate::gens::{build_pair, search_a, GenPair, TAU_CONVENTION};
use crate::order::{element_order_with, OrderConfig, OrderResult};
use crate::word::{WordEnv, WordExpr};

pub const CLAIMS_JSONL: &str = include_str!("../../../../data/claims.jsonl");

const RESTRICT_SUFFIX: &str = "|S9";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    ExactOrder(u64),
    DivisibleBy(u64),
    DivisibleByPrimeAtLeast(u64),
    DivisibleByOneOf(Vec<u64>),
}

impl Expectation {
    pub fn holds(&self, res: &OrderResult) -> bool {
        match self {
            Expectation::ExactOrder(k) => res.order == BigUint::from(*k),
            Expectation::DivisibleBy(r) => res.divisible_by(*r),
            Expectation::DivisibleByPrimeAtLeast(r) => res.factors.keys().any(|p| *p >= BigUint::from(*r)),
            Expectation::DivisibleByOneOf(rs) => rs.iter().any(|&r| res.divisible_by(r)),
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::ExactOrder(k) => write!(f, "order = {k}"),
            Expectation::DivisibleBy(r) => write!(f, "{r} | order"),
            Expectation::DivisibleByPrimeAtLeast(r) => write!(f, "some prime >= {r} divides order"),
            Expectation::DivisibleByOneOf(rs) => write!(f, "one of {rs:?} divides order"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub n: usize,
    pub q: u64,
    /// Field element, or the string `"*"`.
    pub a: Value,
    #[serde(default)]
    pub force: bool,
    pub word: String,
    pub expect: Expectation,
    #[serde(default)]
    pub paper_ref: String,
}

impl Claim {
    /// The word without the restriction suffix, and whether it was present.
    pub fn split_word(&self) -> (&str, bool) {
        match self.word.trim().strip_suffix(RESTRICT_SUFFIX) {
            Some(w) => (w, true),
            None => (self.word.trim(), false),
        }
    }

    fn parameters(&self, field: &Field) -> Result<Vec<Fq>> {
        if self.a.as_str() == Some("*") {
            return Ok(search_a(self.n, field, true)?.values);
        }
        Ok(vec![field.from_json(&self.a)?])
    }
}

/// Parses a JSON-lines claim table; blank lines and `//` comments are ignored.
pub fn load_claims(text: &str) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("//") {
            continue;
        }
        let claim: Claim =
            serde_json::from_str(line).map_err(|e| Error::Data(format!("claims line {}: {e}", i + 1)))?;
        WordExpr::parse(claim.split_word().0)?;
        out.push(claim);
    }
    Ok(out)
}

fn describe(res: &OrderResult) -> String {
    let factors: Vec<String> =
        res.factors.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
    if factors.is_empty() {
        "order = 1".into()
    } else {
        format!("order = {} = {}", res.order, factors.join(" * "))
    }
}

fn evaluate(pair: &GenPair, word: &str, restrict: bool, cfg: &OrderConfig) -> Result<OrderResult> {
    let env = WordEnv::new(&pair.x, &pair.y, TAU_CONVENTION);
    let mut g = env.eval_str(word)?;
    if restrict {
        g = g.restrict(&pair.s9_basis())?;
    }
    element_order_with(&g, cfg)
}

/// Evaluates every row, expanding `"*"` into one check per admissible parameter.
pub fn verify_order_claims(claims: &[Claim]) -> VerificationReport {
    verify_order_claims_with(claims, &OrderConfig::default())
}

pub fn verify_order_claims_with(claims: &[Claim], cfg: &OrderConfig) -> VerificationReport {
    let mut rec = Recorder::new(serde_json::json!({ "claims": claims.len() }));
    let mut fields: HashMap<u64, Field> = HashMap::new();
    let mut sorted: Vec<&Claim> = claims.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    for claim in sorted {
        let field = match fields.get(&claim.q) {
            Some(f) => f.clone(),
            None => match Field::from_order(claim.q) {
                Ok(f) => fields.entry(claim.q).or_insert(f).clone(),
                Err(e) => {
                    rec.push(&claim.id, &claim.paper_ref, false, &claim.expect, format!("error: {e}"));
                    continue;
                }
            },
        };
        let values = match claim.parameters(&field) {
            Ok(v) => v,
            Err(e) => {
                rec.push(&claim.id, &claim.paper_ref, false, &claim.expect, format!("error: {e}"));
                continue;
            }
        };
        let (word, restrict) = claim.split_word();
        for a in values {
            let name = format!("{} (n={}, q={}, a={}): {}", claim.id, claim.n, claim.q, field.fmt_elem(a), claim.word);
            let outcome = build_pair(claim.n, &field, a, claim.force).and_then(|p| evaluate(&p, word, restrict, cfg));
            match outcome {
                Ok(res) => {
                    let ok = claim.expect.holds(&res);
                    rec.push(name, &claim.paper_ref, ok, &claim.expect, describe(&res));
                }
                Err(e) => rec.push(name, &claim.paper_ref, false, &claim.expect, format!("error: {e}")),
            }
        }
    }
    rec.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_table_parses() {
        let claims = load_claims(CLAIMS_JSONL).unwrap();
        assert!(claims.len() >= 40);
        assert!(claims.iter().any(|c| c.split_word().1));
        let mut ids: Vec<&str> = claims.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), claims.len(), "claim ids must be unique");
    }

    #[test]
    fn bad_lines_are_reported() {
        assert!(matches!(load_claims("{\"id\": 1}"), Err(Error::Data(_))));
        let bad_word = r#"{"id":"x","n":9,"q":3,"a":2,"word":"[x,","expect":{"exact_order":1}}"#;
        assert!(matches!(load_claims(bad_word), Err(Error::Parse { .. })));
    }

    #[test]
    fn commutator_order_156() {
        let claims = load_claims(CLAIMS_JSONL).unwrap();
        let row: Vec<Claim> = claims.into_iter().filter(|c| c.id == "n9-q5-commutator").collect();
        let r = verify_order_claims(&row);
        assert_eq!(r.checks.len(), 1);
        assert!(r.passed(), "{}", r.failure_summary());
    }

    #[test]
    fn unbuildable_row_fails_without_panicking() {
        let row = load_claims(r#"{"id":"x","n":10,"q":3,"a":1,"word":"x","expect":{"exact_order":2}}"#).unwrap();
        let r = verify_order_claims(&row);
        assert!(!r.passed());
        assert!(r.checks[0].actual.starts_with("error"));
    }
}

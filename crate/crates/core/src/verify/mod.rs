//! Exact checks of the construction and of every finite computation the generation
//! argument relies on, collected into serializable reports.

pub mod case_a;
pub mod case_b;
pub mod claims;
pub mod reps;
pub mod structural;

use std::fmt::Display;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ff::{Field, Fq};
use crate::gens::{Case, GenPair};

pub use case_a::verify_case_a;
pub use case_b::verify_case_b;
pub use claims::{load_claims, verify_order_claims, verify_order_claims_with, Claim, Expectation, CLAIMS_JSONL};
pub use reps::{hermitian_rep, psi, psi_form, sym_power_rep};
pub use structural::verify_structural;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    /// Short identifier of the claim being checked.
    pub paper_ref: String,
    /// Present exactly when the check was skipped.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: Value,
    pub checks: Vec<Check>,
    pub timing_ms: u64,
}

impl VerificationReport {
    /// No check failed (skips are fine).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// Appends `other`'s checks, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        self.timing_ms += other.timing_ms;
    }

    /// One line per failure, for assertion messages.
    pub fn failure_summary(&self) -> String {
        self.failures()
            .map(|c| format!("{}: expected {}, got {}", c.name, c.expected, c.actual))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `{"n","q","field","a","case","eps","forced","admissible"}` for a pair.
pub fn pair_params(pair: &GenPair) -> Value {
    serde_json::json!({
        "n": pair.n,
        "q": pair.field.q(),
        "field": pair.field.header(),
        "a": pair.field.to_json(pair.a),
        "case": pair.tag.case.to_string(),
        "eps": pair.eps(),
        "forced": pair.forced,
        "admissible": pair.admissibility.ok(),
    })
}

/// Accumulates checks and stamps the elapsed time when finished.
pub(crate) struct Recorder {
    params: Value,
    checks: Vec<Check>,
    start: Instant,
}

impl Recorder {
    pub fn new(params: Value) -> Recorder {
        Recorder { params, checks: Vec::new(), start: Instant::now() }
    }

    pub fn push(&mut self, name: impl Into<String>, tag: &str, ok: bool, expected: impl Display, actual: impl Display) {
        self.checks.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            actual: actual.to_string(),
            paper_ref: tag.into(),
            reason: None,
        });
    }

    /// Pass iff `expected == actual`.
    pub fn eq<T: PartialEq + Display>(&mut self, name: impl Into<String>, tag: &str, expected: T, actual: T) {
        let ok = expected == actual;
        self.push(name, tag, ok, expected, actual);
    }

    pub fn elem(&mut self, field: &Field, name: impl Into<String>, tag: &str, expected: Fq, actual: Fq) {
        self.push(name, tag, expected == actual, field.fmt_elem(expected), field.fmt_elem(actual));
    }

    pub fn skip(&mut self, name: impl Into<String>, tag: &str, reason: impl Into<String>) {
        let reason = reason.into();
        self.checks.push(Check {
            name: name.into(),
            status: Status::Skip,
            expected: String::new(),
            actual: String::new(),
            paper_ref: tag.into(),
            reason: Some(reason),
        });
    }

    /// Records `Err` as a failed check, otherwise hands the value on.
    pub fn attempt<T>(&mut self, name: &str, tag: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.push(name, tag, false, "no error", format!("error: {e}"));
                None
            }
        }
    }

    pub fn finish(self) -> VerificationReport {
        VerificationReport {
            params: self.params,
            checks: self.checks,
            timing_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// `Σ c·a^e` over the field, for closed forms with integer coefficients.
pub(crate) fn laurent(field: &Field, a: Fq, terms: &[(i64, i64)]) -> Fq {
    terms.iter().fold(Fq::ZERO, |acc, &(c, e)| {
        let pow = field.pow_i(a, e).expect("a is nonzero");
        field.add(acc, field.mul(field.from_i64(c), pow))
    })
}

/// Structural checks followed by the battery for the pair's family.
pub fn verify_all(pair: &GenPair) -> Result<VerificationReport> {
    let mut report = verify_structural(pair);
    let battery = match pair.tag.case {
        Case::A => verify_case_a(pair)?,
        Case::B5 | Case::B6 => verify_case_b(pair)?,
    };
    report.absorb("", battery);
    Ok(report)
}

pub(crate) fn wrong_case(what: &str) -> Error {
    Error::WrongCase(what.into())
}

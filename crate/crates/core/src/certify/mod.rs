//! Exact order certification: `⟨x, y⟩ = Ω` is proved by building a stabilizer chain whose
//! order equals `|Ω|`. The chain order never exceeds the order of the group it came from,
//! and that group lies in `Ω` (checked first), so equality is a proof.

pub mod chain;
pub mod orbit;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::forms::{omega_order, Eps, OrthoSpace};
use crate::gens::{Case, GenPair, TAU_CONVENTION};
use crate::matrix::Matrix;

pub use chain::{stabilizer_chain, ChainConfig, RandomElements, StabilizerChain};
pub use orbit::{orbit, Orbit, PointCodec, DEFAULT_ORBIT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Generates,
    ProperSubgroup,
    Inconclusive,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertResult {
    pub n: usize,
    pub q: u32,
    pub a: Value,
    pub eps: Eps,
    /// Certified on `S₉` only (generators `y|S₉`, `τ|S₉`).
    pub restricted: bool,
    #[serde(with = "decimal")]
    pub computed_order: BigUint,
    #[serde(with = "decimal")]
    pub target_order: BigUint,
    pub verdict: Verdict,
    pub seed: u64,
    pub base_size: usize,
    pub orbit_sizes: Vec<usize>,
    pub elapsed_ms: u64,
    /// Why the run was inconclusive, if it was.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CertBudget {
    pub time_limit: Option<Duration>,
    pub orbit_cap: usize,
    pub trivial_sifts: usize,
}

impl Default for CertBudget {
    fn default() -> Self {
        CertBudget { time_limit: None, orbit_cap: DEFAULT_ORBIT_CAP, trivial_sifts: 64 }
    }
}

/// The generators and form being certified: `x, y` on the whole space, or `y, τ` on `S₉`.
pub fn certification_input(pair: &GenPair, restrict_s9: bool) -> Result<(Vec<Matrix>, OrthoSpace)> {
    if !restrict_s9 {
        return Ok((vec![pair.x.clone(), pair.y.clone()], pair.space.clone()));
    }
    if pair.tag.case == Case::A {
        return Err(Error::WrongCase("restriction to S9 needs the second family".into()));
    }
    let s9 = pair.s9_basis();
    let n = pair.n;
    let j = pair.space.gram();
    let j9 = Matrix::from_rows(&pair.field, (n - 9..n).map(|i| j.row(i)[n - 9..].to_vec()).collect())?;
    let gens = vec![pair.y.restrict(&s9)?, pair.tau(TAU_CONVENTION)?.restrict(&s9)?];
    Ok((gens, OrthoSpace::new(j9)?))
}

/// Certifies `⟨x, y⟩ = Ω_n^ε(q)` (or `⟨y, τ⟩|S₉ = Ω₉(q)` when restricted).
pub fn certify_generation(pair: &GenPair, restrict_s9: bool, seed: u64, budget: &CertBudget) -> Result<CertResult> {
    let start = Instant::now();
    let (gens, space) = certification_input(pair, restrict_s9)?;
    let q = pair.field.q();
    let target = omega_order(space.n(), space.eps(), q as u64)?;
    let contained = gens.iter().all(|g| space.in_omega(g).ok());
    let cfg = ChainConfig {
        trivial_sifts: budget.trivial_sifts,
        orbit_cap: budget.orbit_cap,
        time_limit: budget.time_limit,
        ..ChainConfig::default()
    };
    // without containment the divisibility argument is unavailable: no early exit
    let early = contained.then_some(&target);
    let mut result = CertResult {
        n: pair.n,
        q,
        a: pair.field.to_json(pair.a),
        eps: space.eps(),
        restricted: restrict_s9,
        computed_order: BigUint::from(0u32),
        target_order: target.clone(),
        verdict: Verdict::Inconclusive,
        seed,
        base_size: 0,
        orbit_sizes: Vec::new(),
        elapsed_ms: 0,
        note: None,
    };
    match stabilizer_chain(&gens, early, seed, &cfg) {
        Ok(chain) => {
            let order = chain.order();
            result.verdict = if !contained {
                result.note = Some("generators are not all in Omega; order reported only".into());
                Verdict::Inconclusive
            } else if order == target {
                Verdict::Generates
            } else if chain.verified {
                assert!((&target % &order) == BigUint::from(0u32), "subgroup order {order} does not divide {target}");
                Verdict::ProperSubgroup
            } else {
                Verdict::Inconclusive
            };
            result.computed_order = order;
            result.base_size = chain.levels.len();
            result.orbit_sizes = chain.orbit_sizes();
        }
        Err(e @ (Error::Budget(_) | Error::OrbitCap(_))) => result.note = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    result.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(result)
}

//! Randomized Schreier–Sims on the natural action on vectors.
//!
//! Random elements come from product replacement and are sifted through the chain; a
//! nontrivial residue becomes a new strong generator. The run stops early once the
//! chain order reaches a supplied target (the caller guarantees the group order divides
//! it), or after enough consecutive trivial sifts followed by a deterministic check that
//! every Schreier generator sifts to the identity.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::orbit::{Orbit, DEFAULT_ORBIT_CAP};
use crate::error::{Error, Result};
use crate::ff::Field;
use crate::matrix::{Matrix, Vector};

#[derive(Clone, Debug)]
pub struct ChainConfig {
    /// Consecutive trivial sifts before the closure check.
    pub trivial_sifts: usize,
    pub orbit_cap: usize,
    pub time_limit: Option<Duration>,
    /// Upper bound on sifted random elements.
    pub max_sifts: usize,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig { trivial_sifts: 64, orbit_cap: DEFAULT_ORBIT_CAP, time_limit: None, max_sifts: 1_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct Level {
    pub base: Vector,
    pub gens: Vec<Matrix>,
    inverses: Vec<Matrix>,
    pub orbit: Orbit,
}

#[derive(Clone, Debug)]
pub struct StabilizerChain {
    pub field: Field,
    pub n: usize,
    pub levels: Vec<Level>,
    /// Whether the closure check ran and passed (always true without a target).
    pub verified: bool,
}

impl StabilizerChain {
    pub fn order(&self) -> BigUint {
        self.levels.iter().map(|l| BigUint::from(l.orbit.len())).product()
    }

    pub fn base(&self) -> Vec<Vector> {
        self.levels.iter().map(|l| l.base.clone()).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Residue of `h` and the level at which sifting stopped (`levels.len()` if it passed
    /// every level).
    pub fn sift_from(&self, mut h: Matrix, start: usize) -> (Matrix, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let codec = level.orbit.codec();
            let p = codec.pack(&h.apply(&level.base));
            if !level.orbit.contains_code(p) {
                return (h, i);
            }
            h = level.orbit.strip(h, p, &level.inverses);
        }
        (h, self.levels.len())
    }

    pub fn sift(&self, h: &Matrix) -> (Matrix, usize) {
        self.sift_from(h.clone(), 0)
    }

    /// Whether `h` lies in the group described by the chain.
    pub fn contains(&self, h: &Matrix) -> bool {
        let (r, l) = self.sift(h);
        l == self.levels.len() && r.is_identity()
    }

    /// Transversal element of `level` taking its base point to `p`.
    pub fn transversal(&self, level: usize, p: &[crate::Fq]) -> Option<Matrix> {
        let l = &self.levels[level];
        l.orbit.transversal(l.orbit.codec().pack(p), &l.gens)
    }

    /// Adds a residue that survived to `level`, creating a new level if needed.
    fn extend(&mut self, h: Matrix, level: usize, cap: usize) -> Result<()> {
        let inv = h.inverse()?;
        if level == self.levels.len() {
            let base = first_moved(&h).expect("nontrivial residue moves a basis vector");
            let orbit = Orbit::new(&[], &base, &self.field, cap)?;
            self.levels.push(Level { base, gens: Vec::new(), inverses: Vec::new(), orbit });
        }
        for l in self.levels.iter_mut().take(level + 1) {
            l.gens.push(h.clone());
            l.inverses.push(inv.clone());
            let first_new = l.gens.len() - 1;
            l.orbit.grow(&l.gens, first_new, cap)?;
        }
        Ok(())
    }

    /// Sifts every Schreier generator; returns the first nontrivial residue.
    fn find_schreier_residue(&self, deadline: Option<Instant>) -> Result<Option<(Matrix, usize)>> {
        for (i, level) in self.levels.iter().enumerate().rev() {
            let transversals: Vec<Matrix> = level
                .orbit
                .points
                .iter()
                .map(|&p| level.orbit.transversal(p, &level.gens).expect("orbit point"))
                .collect();
            for u in &transversals {
                for s in &level.gens {
                    check_deadline(deadline)?;
                    let su = s * u;
                    let (r, l) = self.sift_from(su, i);
                    if l < self.levels.len() || !r.is_identity() {
                        return Ok(Some((r, l)));
                    }
                }
            }
        }
        Ok(None)
    }
}

fn first_moved(h: &Matrix) -> Option<Vector> {
    let n = h.rows();
    (1..=n).map(|i| crate::matrix::unit_vector(n, i)).find(|e| h.apply(e) != *e)
}

fn check_deadline(deadline: Option<Instant>) -> Result<()> {
    match deadline {
        Some(d) if Instant::now() > d => Err(Error::Budget("time limit reached".into())),
        _ => Ok(()),
    }
}

/// Product replacement: a pool of group elements repeatedly multiplied into each other,
/// with an accumulator that is returned as the next random element.
pub struct RandomElements {
    pool: Vec<Matrix>,
    acc: Matrix,
    rng: ChaCha8Rng,
}

impl RandomElements {
    pub fn new(gens: &[Matrix], seed: u64) -> RandomElements {
        let size = (2 * gens.len()).max(10);
        let pool: Vec<Matrix> = (0..size).map(|i| gens[i % gens.len()].clone()).collect();
        let acc = Matrix::identity(gens[0].field(), gens[0].rows());
        let mut r = RandomElements { pool, acc, rng: ChaCha8Rng::seed_from_u64(seed) };
        for _ in 0..50 {
            r.next_element();
        }
        r
    }

    pub fn next_element(&mut self) -> Matrix {
        let len = self.pool.len();
        let i = self.rng.random_range(0..len);
        let mut j = self.rng.random_range(0..len - 1);
        if j >= i {
            j += 1;
        }
        self.pool[i] =
            if self.rng.random_bool(0.5) { &self.pool[i] * &self.pool[j] } else { &self.pool[j] * &self.pool[i] };
        self.acc = &self.acc * &self.pool[i];
        self.acc.clone()
    }
}

/// Builds a stabilizer chain for `⟨gens⟩`. With a target, stops as soon as the chain order
/// equals it; otherwise (or if the target is never reached) finishes with the closure check.
pub fn stabilizer_chain(
    gens: &[Matrix],
    target: Option<&BigUint>,
    seed: u64,
    cfg: &ChainConfig,
) -> Result<StabilizerChain> {
    let first = gens.first().ok_or_else(|| Error::DimensionMismatch("no generators".into()))?;
    let field = first.field().clone();
    let n = first.rows();
    for g in gens {
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch("generators of different sizes".into()));
        }
        g.inverse()?;
    }
    let deadline = cfg.time_limit.map(|t| Instant::now() + t);
    let mut chain = StabilizerChain { field, n, levels: Vec::new(), verified: false };
    let nontrivial: Vec<Matrix> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    if nontrivial.is_empty() {
        chain.verified = true;
        return Ok(chain);
    }
    for g in &nontrivial {
        let (r, l) = chain.sift(g);
        if l < chain.levels.len() || !r.is_identity() {
            chain.extend(r, l, cfg.orbit_cap)?;
        }
    }
    let reached = |c: &StabilizerChain| target.is_some_and(|t| c.order() == *t);
    let mut random = RandomElements::new(&nontrivial, seed);
    let mut trivial = 0;
    let mut sifted = 0;
    while !reached(&chain) {
        check_deadline(deadline)?;
        if trivial >= cfg.trivial_sifts {
            match chain.find_schreier_residue(deadline)? {
                None => {
                    chain.verified = true;
                    break;
                }
                Some((r, l)) => {
                    chain.extend(r, l, cfg.orbit_cap)?;
                    trivial = 0;
                    continue;
                }
            }
        }
        if sifted >= cfg.max_sifts {
            return Err(Error::Budget(format!("{sifted} random elements sifted")));
        }
        sifted += 1;
        let (r, l) = chain.sift(&random.next_element());
        if l < chain.levels.len() || !r.is_identity() {
            chain.extend(r, l, cfg.orbit_cap)?;
            trivial = 0;
        } else {
            trivial += 1;
        }
    }
    if reached(&chain) {
        // the chain order is a lower bound for the group order, which divides the target
        chain.verified = true;
    }
    Ok(chain)
}

//! Exact multiplicative orders of invertible matrices.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{self, Factorization};
use crate::error::{Error, Result};
use crate::factor::factor_poly;
use crate::ff::Field;
use crate::matrix::Matrix;
use crate::poly::Poly;

pub const DEFAULT_POWER_CAP: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderMethod {
    Powering,
    MinpolyRoute,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderResult {
    pub order: BigUint,
    pub method: OrderMethod,
    /// Prime factorization of `order`.
    pub factors: Factorization,
}

impl OrderResult {
    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.factors.keys().next_back()
    }

    pub fn divisible_by(&self, r: u64) -> bool {
        (&self.order % BigUint::from(r)).is_zero()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OrderConfig {
    pub power_cap: u64,
    pub seed: u64,
    pub rho_budget: u64,
}

impl Default for OrderConfig {
    fn default() -> Self {
        OrderConfig { power_cap: DEFAULT_POWER_CAP, seed: crate::DEFAULT_SEED, rho_budget: arith::DEFAULT_RHO_BUDGET }
    }
}

/// Exact order: powering up to `cap`, then the minimal-polynomial route.
pub fn element_order(m: &Matrix, cap: u64, seed: u64) -> Result<OrderResult> {
    element_order_with(m, &OrderConfig { power_cap: cap, seed, ..OrderConfig::default() })
}

pub fn element_order_with(m: &Matrix, cfg: &OrderConfig) -> Result<OrderResult> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    if m.det()?.is_zero() {
        return Err(Error::Singular);
    }
    if let Some(k) = order_by_powering(m, cfg.power_cap) {
        return Ok(OrderResult {
            order: BigUint::from(k),
            method: OrderMethod::Powering,
            factors: arith::factor_u64(k),
        });
    }
    order_by_minpoly(m, cfg)
}

/// Least `k <= cap` with `M^k = I`.
pub fn order_by_powering(m: &Matrix, cap: u64) -> Option<u64> {
    let mut acc = m.clone();
    for k in 1..=cap {
        if acc.is_identity() {
            return Some(k);
        }
        acc = &acc * m;
    }
    None
}

/// Order as `lcm_g ord(t mod g) * p^ceil(log_p mult_g)` over the irreducible factors `g`
/// of the minimal polynomial.
pub fn order_by_minpoly(m: &Matrix, cfg: &OrderConfig) -> Result<OrderResult> {
    let field = m.field();
    let mu = m.minpoly()?;
    let mut total = Factorization::new();
    for (g, mult) in factor_poly(field, &mu, cfg.seed)? {
        if g == Poly::t(field) {
            return Err(Error::Singular);
        }
        let semisimple = order_of_t_mod(field, &g, cfg.rho_budget)?;
        let mut unipotent = Factorization::new();
        let p = field.p() as u64;
        let mut pk = 1u64;
        let mut e = 0u32;
        while pk < mult as u64 {
            pk *= p;
            e += 1;
        }
        if e > 0 {
            unipotent.insert(BigUint::from(p), e);
        }
        let local = arith::lcm_factored(&semisimple, &unipotent);
        total = arith::lcm_factored(&total, &local);
    }
    Ok(OrderResult { order: arith::product(&total), method: OrderMethod::MinpolyRoute, factors: total })
}

/// Multiplicative order of `t` in `F_q[t]/(g)` for irreducible `g` with `g(0) != 0`.
pub fn order_of_t_mod(field: &Field, g: &Poly, budget: u64) -> Result<Factorization> {
    let d = g.degree().ok_or(Error::ZeroPolynomial)? as u32;
    let group = arith::factor_q_pow_minus_one(field.q() as u64, d, budget)?;
    let t = Poly::t(field);
    let one = Poly::one(field);
    let mut ord = group.clone();
    for (r, &e) in &group {
        for _ in 0..e {
            let mut trial = ord.clone();
            let slot = trial.get_mut(r).unwrap();
            *slot -= 1;
            if *slot == 0 {
                trial.remove(r);
            }
            if t.pow_mod(&arith::product(&trial), g) == one.rem(g) {
                ord = trial;
            } else {
                break;
            }
        }
    }
    Ok(ord)
}

/// Checks `M^order = I` and `M^(order/r) != I` for every prime `r | order`.
pub fn is_exact_order(m: &Matrix, res: &OrderResult) -> bool {
    let pow = |e: &BigUint| -> Matrix {
        let mut acc = Matrix::identity(m.field(), m.rows());
        for i in (0..e.bits()).rev() {
            acc = &acc * &acc;
            if e.bit(i) {
                acc = &acc * m;
            }
        }
        acc
    };
    if !pow(&res.order).is_identity() {
        return false;
    }
    res.factors.keys().all(|r| !pow(&(&res.order / r)).is_identity()) || res.order.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Fq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_has_order_one() {
        let k = Field::new(5, 1).unwrap();
        let r = element_order(&Matrix::identity(&k, 4), 100, 1).unwrap();
        assert_eq!(r.order, BigUint::one());
    }

    #[test]
    fn singular_is_rejected() {
        let k = Field::new(5, 1).unwrap();
        let m = Matrix::from_ints(&k, &[&[1, 1], &[1, 1]]);
        assert_eq!(element_order(&m, 100, 1).unwrap_err(), Error::Singular);
    }

    #[test]
    fn both_strategies_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for q in [3u64, 5, 9, 7] {
            let k = Field::from_order(q).unwrap();
            let mut checked = 0;
            while checked < 15 {
                let n = rng.random_range(1..6);
                let rows = (0..n).map(|_| (0..n).map(|_| Fq(rng.random_range(0..k.q()))).collect()).collect();
                let m = Matrix::from_rows(&k, rows).unwrap();
                if m.det().unwrap().is_zero() {
                    continue;
                }
                let Some(brute) = order_by_powering(&m, 100_000) else { continue };
                let via = order_by_minpoly(&m, &OrderConfig::default()).unwrap();
                assert_eq!(via.order, BigUint::from(brute));
                assert!(is_exact_order(&m, &via));
                checked += 1;
            }
        }
    }

    #[test]
    fn unipotent_jordan_blocks() {
        let k = Field::new(3, 1).unwrap();
        // single Jordan block of size 4 at eigenvalue 1 has order 9 in characteristic 3
        let mut m = Matrix::identity(&k, 4);
        for i in 0..3 {
            m.set(i, i + 1, Fq::ONE);
        }
        let r = order_by_minpoly(&m, &OrderConfig::default()).unwrap();
        assert_eq!(r.order, BigUint::from(9u32));
        assert_eq!(order_by_powering(&m, 100), Some(9));
    }
}

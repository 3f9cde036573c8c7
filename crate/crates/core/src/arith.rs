//! Big-integer helpers: primality, factorization (trial division + Pollard–Brent rho),
//! and factorizations of `q^d - 1` split along cyclotomic values.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Prime factorization as an ordered map prime -> exponent.
pub type Factorization = BTreeMap<BigUint, u32>;

const SMALL_PRIME_BOUND: u32 = 1 << 14;

/// Iteration budget for a single rho run before giving up.
pub const DEFAULT_RHO_BUDGET: u64 = 2_000_000;

fn small_primes() -> impl Iterator<Item = u32> {
    (2..SMALL_PRIME_BOUND).filter(|&n| crate::ff::is_prime_u64(n as u64))
}

/// Miller–Rabin with the first 20 prime bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    const BASES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];
    for b in BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for b in BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; returns a nontrivial factor or `None` within `budget` steps.
fn rho(n: &BigUint, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    let mut spent = 0u64;
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const M: u64 = 64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..M.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
            spent += r;
            if spent > budget {
                return None;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
        if c > BigUint::from(20u32) {
            return None;
        }
    }
    None
}

/// Full factorization of `n > 0`.
pub fn factorize(n: &BigUint, budget: u64) -> Result<Factorization> {
    let mut out = Factorization::new();
    if n.is_zero() {
        return Err(Error::OrderSearchExceeded("cannot factor zero".into()));
    }
    let mut rest = n.clone();
    for p in small_primes() {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            *out.entry(bp.clone()).or_insert(0) += 1;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        // perfect powers defeat rho; peel square roots first
        let s = m.sqrt();
        if &s * &s == m {
            stack.push(s.clone());
            stack.push(s);
            continue;
        }
        let d = rho(&m, budget).ok_or_else(|| Error::OrderSearchExceeded(format!("could not split {m}")))?;
        let e = &m / &d;
        stack.push(d);
        stack.push(e);
    }
    Ok(out)
}

fn merge(into: &mut Factorization, from: &Factorization) {
    for (p, e) in from {
        *into.entry(p.clone()).or_insert(0) += e;
    }
}

/// Factorization of `q^d - 1` computed through `q^d - 1 = prod_{k | d} Phi_k(q)`.
pub fn factor_q_pow_minus_one(q: u64, d: u32, budget: u64) -> Result<Factorization> {
    let qb = BigUint::from(q);
    let mut cyclo: BTreeMap<u32, BigUint> = BTreeMap::new();
    let mut out = Factorization::new();
    for k in (1..=d).filter(|k| d.is_multiple_of(*k)) {
        let mut v = qb.pow(k) - BigUint::one();
        for (j, phi) in &cyclo {
            if k % j == 0 {
                v /= phi;
            }
        }
        merge(&mut out, &factorize(&v, budget)?);
        cyclo.insert(k, v);
    }
    Ok(out)
}

pub fn product(f: &Factorization) -> BigUint {
    f.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
}

/// Componentwise maximum (lcm of the underlying integers).
pub fn lcm_factored(a: &Factorization, b: &Factorization) -> Factorization {
    let mut out = a.clone();
    for (p, e) in b {
        let slot = out.entry(p.clone()).or_insert(0);
        *slot = (*slot).max(*e);
    }
    out
}

/// Factorization of a machine integer by trial division.
pub fn factor_u64(mut n: u64) -> Factorization {
    let mut out = Factorization::new();
    let mut d = 2u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            *out.entry(BigUint::from(d)).or_insert(0) += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *out.entry(BigUint::from(n)).or_insert(0) += 1;
    }
    out
}

pub fn to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}

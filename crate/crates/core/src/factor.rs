//! Factorization of polynomials over `F_q` (q odd): square-free decomposition,
//! distinct-degree splitting, then Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{Field, Fq};
use crate::poly::Poly;

/// Irreducible monic factors with multiplicities, sorted canonically.
/// The product of `factor^multiplicity` equals the monic associate of the input.
pub fn factor_poly(field: &Field, f: &Poly, seed: u64) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (sqf, mult) in squarefree(&f.monic()) {
        for (g, d) in distinct_degree(field, &sqf) {
            for h in equal_degree(field, &g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort_by_key(|(g, m)| (g.sort_key(), *m));
    Ok(out)
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with `g` square-free,
/// pairwise coprime, and `f = prod g^m`.
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let k = f.field().clone();
    let p = k.p();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree(&f.pth_root()) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, m) in squarefree(&c.monic().pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of equal degree.
pub fn distinct_degree(field: &Field, f: &Poly) -> Vec<(Poly, usize)> {
    let q = BigUint::from(field.q());
    let t = Poly::t(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = t.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&q, &rest);
        let g = h.sub(&t).gcd(&rest);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest.monic(), deg));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
pub fn equal_degree(field: &Field, f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.monic()];
    }
    let exp = (BigUint::from(field.q()).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let r = Poly::new(field, (0..n).map(|_| Fq(rng.random_range(0..field.q()))).collect());
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let s = r.pow_mod(&exp, f).sub(&Poly::one(field));
        let g = s.gcd(f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_rem(&g).0;
            let mut out = equal_degree(field, &g, d, rng);
            out.extend(equal_degree(field, &h.monic(), d, rng));
            return out;
        }
    }
}

/// Roots in `F_q`, ascending, without multiplicity.
pub fn roots(field: &Field, f: &Poly, seed: u64) -> Result<Vec<Fq>> {
    let mut out: Vec<Fq> = factor_poly(field, f, seed)?
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| field.neg(g.coeff(0)))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn product(fs: &[(Poly, u32)], k: &Field) -> Poly {
        fs.iter().fold(Poly::one(k), |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
    }

    #[test]
    fn t2_minus_1_over_f5() {
        let k = Field::new(5, 1).unwrap();
        let f = Poly::from_ints(&k, &[-1, 0, 1]);
        let fs = factor_poly(&k, &f, 1).unwrap();
        assert_eq!(fs, vec![(Poly::linear(&k, k.from_i64(-1)), 1), (Poly::linear(&k, k.from_i64(1)), 1)]);
    }

    #[test]
    fn t2_plus_1_irreducible_over_f3() {
        let k = Field::new(3, 1).unwrap();
        let f = Poly::from_ints(&k, &[1, 0, 1]);
        assert_eq!(factor_poly(&k, &f, 1).unwrap(), vec![(f, 1)]);
    }

    #[test]
    fn zero_is_rejected() {
        let k = Field::new(3, 1).unwrap();
        assert_eq!(factor_poly(&k, &Poly::zero(&k), 1).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn high_multiplicity_in_small_characteristic() {
        let k = Field::new(3, 1).unwrap();
        // (t - 1)^7 (t^2 + 1)^3
        let a = Poly::linear(&k, Fq::ONE).pow(7);
        let b = Poly::from_ints(&k, &[1, 0, 1]).pow(3);
        let f = a.mul(&b);
        let fs = factor_poly(&k, &f, 9).unwrap();
        assert_eq!(fs, vec![(Poly::linear(&k, Fq::ONE), 7), (Poly::from_ints(&k, &[1, 0, 1]), 3)]);
    }

    #[test]
    fn deterministic_given_seed() {
        let k = Field::new(7, 2).unwrap();
        let f = Poly::new(&k, (0..13).map(|i| Fq((i * 17 + 3) % 49)).collect());
        assert_eq!(factor_poly(&k, &f, 42).unwrap(), factor_poly(&k, &f, 42).unwrap());
    }

    fn is_irreducible_by_frobenius(k: &Field, g: &Poly) -> bool {
        // t^{q^d} = t mod g and gcd(t^{q^e} - t, g) = 1 for e < d
        let d = g.degree().unwrap();
        let q = BigUint::from(k.q());
        let t = Poly::t(k);
        let mut h = t.rem(g);
        for e in 1..=d {
            h = h.pow_mod(&q, g);
            let diff = h.sub(&t);
            if e < d && diff.gcd(g).degree() != Some(0) {
                return false;
            }
            if e == d && !diff.rem(g).is_zero() {
                return false;
            }
        }
        true
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn factorization_multiplies_back(q in prop::sample::select(vec![3u64, 5, 7, 9, 25, 27]),
                                         coeffs in prop::collection::vec(0u32..1000, 2..16),
                                         seed in 0u64..1000) {
            let k = Field::from_order(q).unwrap();
            let f = Poly::new(&k, coeffs.iter().map(|&c| Fq(c % k.q())).collect());
            prop_assume!(!f.is_zero());
            let fs = factor_poly(&k, &f, seed).unwrap();
            prop_assert_eq!(product(&fs, &k), f.monic());
            for (g, _) in &fs {
                prop_assert!(g.is_monic());
                prop_assert!(is_irreducible_by_frobenius(&k, g));
            }
        }
    }
}

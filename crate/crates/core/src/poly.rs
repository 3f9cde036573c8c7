//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use num_bigint::BigUint;

use crate::ff::{Field, Fq};
use crate::matrix::Matrix;

/// Polynomial with little-endian coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fq>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.field.fmt_elem(c);
            match (i, c == Fq::ONE) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{cs}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{cs}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Fq>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Fq::ONE)
    }

    pub fn constant(field: &Field, c: Fq) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The monomial `t`.
    pub fn t(field: &Field) -> Poly {
        Poly::new(field, vec![Fq::ZERO, Fq::ONE])
    }

    /// `t - c`.
    pub fn linear(field: &Field, c: Fq) -> Poly {
        Poly::new(field, vec![field.neg(c), Fq::ONE])
    }

    /// Builds from small integer coefficients, little-endian.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fq::ONE
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).unwrap();
        self.scale(inv)
    }

    pub fn scale(&self, c: Fq) -> Poly {
        let k = &self.field;
        Poly::new(k, self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(k, (0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(k, (0..n).map(|i| k.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let k = &self.field;
        let mut out = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Poly::new(k, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let k = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(k), self.clone());
        }
        let inv = k.inv(d.lead()).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![Fq::ZERO; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(r[i + dd], inv);
            q[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[i + j] = k.sub(r[i + j], k.mul(c, dj));
            }
        }
        r.truncate(dd);
        (Poly::new(k, q), Poly::new(k, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        self.div_rem(&g).0.mul(other).monic()
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let k = &self.field;
        Poly::new(k, self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| k.mul(k.from_i64(i as i64), c)).collect())
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let k = &self.field;
        self.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zero(&self.field, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(&self.field, n).scale(c);
        }
        acc
    }

    /// For `g = h^p` (all exponents divisible by `p`), returns `h`.
    pub fn pth_root(&self) -> Poly {
        let k = &self.field;
        let p = k.p() as usize;
        // inverse Frobenius on coefficients: c -> c^{p^{f-1}}
        let e = (k.q() / k.p()) as u64;
        let coeffs = self.coeffs.iter().step_by(p).map(|&c| k.pow(c, e)).collect();
        Poly::new(k, coeffs)
    }

    /// Product of `(t - c)` over the given roots.
    pub fn from_roots(field: &Field, roots: &[Fq]) -> Poly {
        roots.iter().fold(Poly::one(field), |acc, &r| acc.mul(&Poly::linear(field, r)))
    }

    /// Canonical sort key: degree first, then coefficients from the top.
    pub(crate) fn sort_key(&self) -> (usize, Vec<u32>) {
        (self.coeffs.len(), self.coeffs.iter().rev().map(|c| c.code()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let k = Field::new(5, 1).unwrap();
        let a = Poly::from_ints(&k, &[1, 2, 3, 4, 1]);
        let b = Poly::from_ints(&k, &[2, 0, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_and_lcm() {
        let k = Field::new(7, 1).unwrap();
        let x = Poly::from_roots(&k, &[k.from_i64(1), k.from_i64(2)]);
        let y = Poly::from_roots(&k, &[k.from_i64(2), k.from_i64(3)]);
        assert_eq!(x.gcd(&y), Poly::linear(&k, k.from_i64(2)));
        assert_eq!(x.lcm(&y), Poly::from_roots(&k, &[k.from_i64(1), k.from_i64(2), k.from_i64(3)]));
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let k = Field::new(3, 2).unwrap();
        let a = k.generator();
        let h = Poly::new(&k, vec![a, Fq::ONE, k.from_i64(2)]);
        let g = h.pow(3);
        assert_eq!(g.pth_root(), h);
    }

    #[test]
    fn display_is_readable() {
        let k = Field::new(5, 1).unwrap();
        let p = Poly::from_ints(&k, &[-1, 0, 1]);
        assert_eq!(p.to_string(), "t^2 + 4");
    }
}

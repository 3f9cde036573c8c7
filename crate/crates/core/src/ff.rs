//! Arithmetic in `F_q`, `q = p^f` odd.
//!
//! Elements are stored as integer codes: the element `c_0 + c_1 t + ... + c_{f-1} t^{f-1}`
//! (reduced modulo the defining polynomial) has code `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`.
//! The numeric order of codes is the canonical element order used throughout the crate.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde_json::Value;

use crate::error::{Error, Result};

/// An element of some [`Field`]. Meaningless without its field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub(crate) u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// The integer code of this element.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Largest `q` for which multiplication goes through exp/log tables.
const TABLE_LIMIT: u64 = 1 << 20;

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// A finite field of odd order with a fixed defining modulus.
///
/// Cloning is cheap; all clones share the same context.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.0.p, self.0.f, self.0.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense polynomial arithmetic over `F_p` on plain residues; only used while setting up the field.
mod prime_poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv_lead = inv(m[dm], p);
        while r.len() > dm {
            let c = r[r.len() - 1] * inv_lead % p;
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    /// Rabin-style test: `gcd(t^{p^i} - t, m) = 1` for `1 <= i <= deg/2`.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let deg = m.len() - 1;
        if deg == 1 {
            return true;
        }
        if m[0] == 0 {
            return false;
        }
        let t = vec![0, 1];
        let mut h = t.clone();
        for _ in 1..=deg / 2 {
            // h <- h^p mod m
            let mut acc = vec![1u64];
            let mut base = h.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, m, p);
                }
                base = mulmod(&base, &base, m, p);
                e >>= 1;
            }
            h = acc;
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(m, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl Field {
    /// Builds `F_{p^f}` with the lexicographically smallest monic irreducible modulus
    /// (coefficients compared from the constant term upwards).
    pub fn new(p: u64, f: u32) -> Result<Field> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime_u64(p) {
            return Err(Error::NonPrime(p));
        }
        if f < 1 {
            return Err(Error::BadDegree(f));
        }
        let q = p.checked_pow(f).filter(|&q| q <= 1 << 31).ok_or(Error::FieldTooLarge(p, f))?;
        let modulus = smallest_irreducible(p, f);
        let mut inner =
            Inner { p: p as u32, f, q: q as u32, modulus: modulus.iter().map(|&c| c as u32).collect(), tables: None };
        if f > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    /// Builds the field of order `q`, factoring `q` as a prime power.
    pub fn from_order(q: u64) -> Result<Field> {
        let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, f)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn f(&self) -> u32 {
        self.0.f
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Coefficients `[m_0, ..., m_f]` of the defining polynomial (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }

    pub fn one(&self) -> Fq {
        Fq(1)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.0.q).map(Fq)
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = Fq> {
        (1..self.0.q).map(Fq)
    }

    pub fn elem(&self, code: u32) -> Result<Fq> {
        if code < self.0.q {
            Ok(Fq(code))
        } else {
            Err(Error::BadElement(format!("code {code} out of range for q = {}", self.0.q)))
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_i64(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// The element with the given coefficients on `1, t, ..., t^{f-1}`.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fq> {
        if coeffs.len() != self.0.f as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::BadElement(format!("expected {} coefficients in [0, {})", self.0.f, self.0.p)));
        }
        let mut code = 0u32;
        for &c in coeffs.iter().rev() {
            code = code * self.0.p + c;
        }
        Ok(Fq(code))
    }

    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.f as usize);
        let mut c = a.0;
        for _ in 0..self.0.f {
            out.push(c % self.0.p);
            c /= self.0.p;
        }
        out
    }

    /// The class of `t` modulo the defining polynomial (for `f = 1`, the element `-m_0`).
    pub fn generator(&self) -> Fq {
        if self.0.f == 1 {
            self.neg(Fq(self.0.modulus[0]))
        } else {
            Fq(self.0.p)
        }
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.0.p;
        if self.0.f == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return Fq((s % p as u64) as u32);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.0.f {
            out += ((x % p + y % p) % p) * scale;
            x /= p;
            y /= p;
            scale = scale.wrapping_mul(p);
        }
        Fq(out)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.0.p;
        if self.0.f == 1 {
            return Fq(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.0.f {
            out += ((p - x % p) % p) * scale;
            x /= p;
            scale = scale.wrapping_mul(p);
        }
        Fq(out)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        if self.0.f == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % self.0.p as u64) as u32);
        }
        match &self.0.tables {
            Some(t) => {
                let n = self.0.q - 1;
                let s = t.log[a.0 as usize] + t.log[b.0 as usize];
                Fq(t.exp[(if s >= n { s - n } else { s }) as usize])
            }
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: Fq, b: Fq) -> Fq {
        let p = self.0.p as u64;
        let m: Vec<u64> = self.0.modulus.iter().map(|&c| c as u64).collect();
        let x: Vec<u64> = self.coeffs(a).into_iter().map(u64::from).collect();
        let y: Vec<u64> = self.coeffs(b).into_iter().map(u64::from).collect();
        let mut r = prime_poly::mulmod(&x, &y, &m, p);
        r.resize(self.0.f as usize, 0);
        let c: Vec<u32> = r.into_iter().map(|c| c as u32).collect();
        self.from_coeffs(&c).expect("reduced product")
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.q - 1;
            let l = t.log[a.0 as usize];
            return Some(Fq(t.exp[((n - l) % n) as usize]));
        }
        Some(self.pow(a, self.0.q as u64 - 2))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for a signed exponent; `None` if `a = 0` and `e < 0`.
    pub fn pow_i(&self, a: Fq, e: i64) -> Option<Fq> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(ai, e.unsigned_abs()))
        }
    }

    pub fn pow_big(&self, a: Fq, e: &BigUint) -> Fq {
        let mut acc = Fq(1);
        for i in (0..e.bits()).rev() {
            acc = self.mul(acc, acc);
            if e.bit(i) {
                acc = self.mul(acc, a);
            }
        }
        acc
    }

    /// `a -> a^p`.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.0.p as u64)
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(&self, a: Fq) -> bool {
        if a.0 == 0 {
            return true;
        }
        self.pow(a, (self.0.q as u64 - 1) / 2) == Fq(1)
    }

    /// Degree over `F_p` of the minimal polynomial of `a`: least `d` with `a^{p^d} = a`.
    pub fn subfield_degree(&self, a: Fq) -> u32 {
        let mut b = self.frobenius(a);
        let mut d = 1;
        while b != a {
            b = self.frobenius(b);
            d += 1;
        }
        d
    }

    /// Some fixed nonsquare (the first in canonical order).
    pub fn nonsquare(&self) -> Fq {
        self.units().find(|&a| !self.is_square(a)).expect("odd q has nonsquares")
    }

    /// JSON form: integer for prime fields, coefficient array otherwise.
    pub fn to_json(&self, a: Fq) -> Value {
        if self.0.f == 1 {
            Value::from(a.0)
        } else {
            Value::from(self.coeffs(a))
        }
    }

    /// Accepts an integer (reduced into the prime subfield, negatives allowed) or a
    /// coefficient array of length `f`.
    pub fn from_json(&self, v: &Value) -> Result<Fq> {
        match v {
            Value::Number(n) => {
                n.as_i64().map(|i| self.from_i64(i)).ok_or_else(|| Error::BadElement(format!("{n} is not an integer")))
            }
            Value::Array(items) => {
                let coeffs = items
                    .iter()
                    .map(|c| {
                        c.as_i64()
                            .map(|i| i.rem_euclid(self.0.p as i64) as u32)
                            .ok_or_else(|| Error::BadElement(format!("bad coefficient {c}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.from_coeffs(&coeffs)
            }
            other => Err(Error::BadElement(format!("unexpected JSON {other}"))),
        }
    }

    /// Parses the textual element syntax: an integer, or a JSON coefficient array.
    pub fn parse_elem(&self, s: &str) -> Result<Fq> {
        let v: Value = serde_json::from_str(s.trim()).map_err(|e| Error::BadElement(format!("{s:?}: {e}")))?;
        self.from_json(&v)
    }

    /// Compact text form matching the JSON encoding.
    pub fn fmt_elem(&self, a: Fq) -> String {
        self.to_json(a).to_string()
    }

    /// `{"p", "f", "modulus"}` header embedded in every report.
    pub fn header(&self) -> Value {
        serde_json::json!({
            "p": self.0.p,
            "f": self.0.f,
            "modulus": self.0.modulus,
        })
    }
}

/// `(p, f)` with `q = p^f`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut r, mut f) = (q, 0);
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

fn smallest_irreducible(p: u64, f: u32) -> Vec<u64> {
    if f == 1 {
        return vec![0, 1];
    }
    let count = p.pow(f);
    for k in 0..count {
        // c_0 is the most significant digit of k.
        let mut digits = vec![0u64; f as usize];
        let mut r = k;
        for i in (0..f as usize).rev() {
            digits[i] = r % p;
            r /= p;
        }
        let mut m = digits;
        m.push(1);
        if prime_poly::is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q as u64;
    let n = q - 1;
    let p = inner.p as u64;
    let m: Vec<u64> = inner.modulus.iter().map(|&c| c as u64).collect();
    let to_vec = |code: u64| -> Vec<u64> {
        let mut v = Vec::new();
        let mut c = code;
        for _ in 0..inner.f {
            v.push(c % p);
            c /= p;
        }
        prime_poly::trim(&mut v);
        v
    };
    let to_code = |v: &[u64]| -> u64 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
    let prime_factors: Vec<u64> = {
        let mut fs = Vec::new();
        let mut r = n;
        let mut d = 2;
        while d * d <= r {
            if r.is_multiple_of(d) {
                fs.push(d);
                while r.is_multiple_of(d) {
                    r /= d;
                }
            }
            d += 1;
        }
        if r > 1 {
            fs.push(r);
        }
        fs
    };
    let pow_code = |g: &[u64], mut e: u64| -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = g.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = prime_poly::mulmod(&acc, &base, &m, p);
            }
            base = prime_poly::mulmod(&base, &base, &m, p);
            e >>= 1;
        }
        acc
    };
    let gen = (2..q)
        .map(to_vec)
        .find(|g| prime_factors.iter().all(|&r| pow_code(g, n / r) != vec![1u64]))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; q as usize];
    let mut cur = vec![1u64];
    for (i, slot) in exp.iter_mut().enumerate() {
        let code = to_code(&cur);
        *slot = code as u32;
        log[code as usize] = i as u32;
        cur = prime_poly::mulmod(&cur, &gen, &m, p);
    }
    Tables { exp, log }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.modulus(), &[0, 1]);
        assert!(!f3.is_square(f3.from_i64(2)));
        assert!(f3.is_square(Fq::ZERO));
        assert_eq!(f3.from_i64(-1), Fq(2));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(Field::new(2, 3).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(Field::new(9, 1).unwrap_err(), Error::NonPrime(9));
        assert_eq!(Field::new(3, 0).unwrap_err(), Error::BadDegree(0));
        assert!(Field::from_order(12).is_err());
    }

    #[test]
    fn f9_uses_t2_plus_1() {
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let a = f9.generator();
        // a^2 + 1 = 0
        assert_eq!(f9.add(f9.mul(a, a), Fq::ONE), Fq::ZERO);
        // -a = (a + 1)^2 is a square
        let a1 = f9.add(a, Fq::ONE);
        assert_eq!(f9.mul(a1, a1), f9.neg(a));
        assert!(f9.is_square(f9.neg(a)));
        assert_eq!(f9.subfield_degree(a), 2);
        assert_eq!(f9.subfield_degree(Fq::ONE), 1);
    }

    #[test]
    fn f27_has_no_intermediate_subfield() {
        let f = Field::new(3, 3).unwrap();
        for a in f.elements() {
            let d = f.subfield_degree(a);
            if a.code() < 3 {
                assert_eq!(d, 1);
            } else {
                assert_eq!(d, 3);
            }
        }
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, e) in [(3, 1), (5, 1), (3, 2), (5, 2), (3, 3), (7, 2), (3, 4)] {
            let k = Field::new(p, e).unwrap();
            for a in k.units() {
                assert_eq!(k.mul(a, k.inv(a).unwrap()), Fq::ONE);
                assert_eq!(k.add(a, k.neg(a)), Fq::ZERO);
            }
            // distributivity on a sample
            for a in k.elements().step_by(3) {
                for b in k.elements().step_by(5) {
                    for c in k.elements().step_by(7) {
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn squares_are_half_the_units() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81] {
            let k = Field::from_order(q).unwrap();
            let ns = k.nonsquare();
            for a in k.units() {
                assert!(k.is_square(a) ^ k.is_square(k.mul(ns, a)));
            }
            let count = k.units().filter(|&a| k.is_square(a)).count() as u64;
            assert_eq!(count, (q - 1) / 2);
        }
    }

    #[test]
    fn subfield_degree_divides_f() {
        for q in [9u64, 25, 27, 49, 81] {
            let k = Field::from_order(q).unwrap();
            for a in k.elements() {
                assert_eq!(k.f() % k.subfield_degree(a), 0);
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism_fixing_prime_field() {
        for q in [9u64, 25, 27, 81] {
            let k = Field::from_order(q).unwrap();
            let fixed = k.elements().filter(|&a| k.frobenius(a) == a).count();
            assert_eq!(fixed as u32, k.p());
            for a in k.elements().step_by(2) {
                for b in k.elements().step_by(3) {
                    assert_eq!(k.frobenius(k.mul(a, b)), k.mul(k.frobenius(a), k.frobenius(b)));
                    assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn slow_and_table_multiplication_agree() {
        let k = Field::new(5, 3).unwrap();
        for a in k.elements().step_by(7) {
            for b in k.elements().step_by(11) {
                assert_eq!(k.mul(a, b), k.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let k = Field::new(3, 2).unwrap();
        let a = k.from_coeffs(&[2, 1]).unwrap();
        assert_eq!(k.to_json(a), serde_json::json!([2, 1]));
        assert_eq!(k.from_json(&k.to_json(a)).unwrap(), a);
        assert_eq!(k.parse_elem("-1").unwrap(), k.from_i64(2));
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.parse_elem("2").unwrap(), Fq(2));
        assert_eq!(k.header()["modulus"], serde_json::json!([1, 0, 1]));
    }

    #[test]
    fn prime_power_factoring() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(15), None);
    }
}

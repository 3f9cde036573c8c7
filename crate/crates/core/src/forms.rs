//! Orthogonal geometry: Gram matrices, quadratic values, reflections, spinor norms,
//! membership in `Ω`, Witt types and group orders.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Field, Fq};
use crate::matrix::{Matrix, Vector};

/// Witt type of a nondegenerate quadratic space; odd dimensions have a single type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Eps {
    Circ,
    Plus,
    Minus,
}

impl Eps {
    pub fn sign(self) -> i32 {
        match self {
            Eps::Circ => 0,
            Eps::Plus => 1,
            Eps::Minus => -1,
        }
    }

    pub fn parse(s: &str) -> Result<Eps> {
        match s {
            "circ" | "o" | "0" => Ok(Eps::Circ),
            "plus" | "+" => Ok(Eps::Plus),
            "minus" | "-" => Ok(Eps::Minus),
            _ => Err(Error::BadElement(format!("unknown form type '{s}'"))),
        }
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eps::Circ => "circ",
            Eps::Plus => "plus",
            Eps::Minus => "minus",
        })
    }
}

/// Which of the two Gram-matrix families a construction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `diag(I_{n-3}, antidiag(1,1,1))`, determinant `-1`.
    A,
    /// `I_{n-8}` plus two 4-blocks paired hyperbolically, determinant `1`.
    B,
}

/// Element of `F_q^* / (F_q^*)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareClass {
    pub is_square: bool,
}

impl SquareClass {
    pub const TRIVIAL: SquareClass = SquareClass { is_square: true };

    pub fn of(field: &Field, a: Fq) -> SquareClass {
        debug_assert!(!a.is_zero());
        SquareClass { is_square: field.is_square(a) }
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;
    fn mul(self, rhs: SquareClass) -> SquareClass {
        SquareClass { is_square: self.is_square == rhs.is_square }
    }
}

/// A quadratic space `(F_q^n, Q)` with `Q(v) = ½ vᵀJv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoSpace {
    j: Matrix,
    eps: Eps,
}

impl OrthoSpace {
    /// Wraps a symmetric nonsingular Gram matrix; the type is read off the discriminant.
    pub fn new(j: Matrix) -> Result<OrthoSpace> {
        if !j.is_square() {
            return Err(Error::NotSquare(j.rows(), j.cols()));
        }
        if j.transpose() != j {
            return Err(Error::Construction("Gram matrix is not symmetric".into()));
        }
        let det = j.det()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let eps = discriminant_type(j.field(), j.rows(), det);
        Ok(OrthoSpace { j, eps })
    }

    pub fn n(&self) -> usize {
        self.j.rows()
    }

    pub fn field(&self) -> &Field {
        self.j.field()
    }

    pub fn gram(&self) -> &Matrix {
        &self.j
    }

    pub fn eps(&self) -> Eps {
        self.eps
    }

    /// `uᵀJv`.
    pub fn bilinear(&self, u: &[Fq], v: &[Fq]) -> Fq {
        let k = self.field();
        let jv = self.j.apply(v);
        u.iter().zip(&jv).fold(Fq::ZERO, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
    }

    pub fn quadratic_value(&self, v: &[Fq]) -> Result<Fq> {
        self.check_len(v)?;
        let k = self.field();
        Ok(k.mul(self.bilinear(v, v), k.inv(k.from_i64(2)).unwrap()))
    }

    fn check_len(&self, v: &[Fq]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", v.len(), self.n())));
        }
        Ok(())
    }

    /// `r_v : w ↦ w − Q(v)⁻¹ (wᵀJv) v`.
    pub fn reflection(&self, v: &[Fq]) -> Result<Matrix> {
        let qv = self.quadratic_value(v)?;
        let k = self.field();
        let inv = k.inv(qv).ok_or(Error::IsotropicCenter)?;
        let jv = self.j.apply(v);
        let n = self.n();
        let mut r = Matrix::identity(k, n);
        // column c is r_v(e_c) = e_c − Q(v)⁻¹ (Jv)_c v
        for (c, &jc) in jv.iter().enumerate() {
            let s = k.mul(inv, jc);
            if s.is_zero() {
                continue;
            }
            for (i, &vi) in v.iter().enumerate() {
                let cur = r.get(i, c);
                r.set(i, c, k.sub(cur, k.mul(s, vi)));
            }
        }
        Ok(r)
    }

    pub fn preserves(&self, g: &Matrix) -> bool {
        g.rows() == self.n() && g.cols() == self.n() && &(&g.transpose() * &self.j) * g == self.j
    }

    /// Columns of `P` form a `J`-orthogonal basis: `PᵀJP` is diagonal with nonzero entries.
    pub fn orthogonal_basis(&self) -> Matrix {
        let k = self.field().clone();
        let n = self.n();
        let mut pending: Vec<Vector> = (0..n).map(|i| crate::matrix::unit_vector(n, i + 1)).collect();
        let mut basis = Vec::with_capacity(n);
        while !pending.is_empty() {
            let idx = match pending.iter().position(|w| !self.bilinear(w, w).is_zero()) {
                Some(i) => i,
                None => {
                    // all remaining vectors are isotropic; some pair is not orthogonal
                    let (i, j) = (0..pending.len())
                        .flat_map(|i| (i + 1..pending.len()).map(move |j| (i, j)))
                        .find(|&(i, j)| !self.bilinear(&pending[i], &pending[j]).is_zero())
                        .expect("nondegenerate form");
                    let sum: Vector = pending[i].iter().zip(&pending[j]).map(|(&a, &b)| k.add(a, b)).collect();
                    pending[i] = sum;
                    i
                }
            };
            let v = pending.swap_remove(idx);
            let vv_inv = k.inv(self.bilinear(&v, &v)).unwrap();
            for w in pending.iter_mut() {
                let c = k.mul(self.bilinear(w, &v), vv_inv);
                if !c.is_zero() {
                    for (wi, &vi) in w.iter_mut().zip(&v) {
                        *wi = k.sub(*wi, k.mul(c, vi));
                    }
                }
            }
            basis.push(v);
        }
        Matrix::from_columns(&k, &basis).unwrap()
    }

    /// Centers `c_1, …, c_m` (all anisotropic, `m ≤ 2n`) with `g = r_{c_1} ⋯ r_{c_m}`.
    pub fn reflection_decomposition(&self, g: &Matrix) -> Result<Vec<Vector>> {
        if !self.preserves(g) {
            return Err(Error::NotAnIsometry);
        }
        let k = self.field().clone();
        let n = self.n();
        let p = self.orthogonal_basis();
        let p_inv = p.inverse()?;
        let diag = OrthoSpace { j: &(&p.transpose() * &self.j) * &p, eps: self.eps };
        let mut h = &(&p_inv * g) * &p;
        let mut centers_d: Vec<Vector> = Vec::new();
        for i in 0..n {
            let e = crate::matrix::unit_vector(n, i + 1);
            let he = h.column(i);
            if he == e {
                continue;
            }
            let minus: Vector = he.iter().zip(&e).map(|(&a, &b)| k.sub(a, b)).collect();
            if !diag.quadratic_value(&minus)?.is_zero() {
                h = &diag.reflection(&minus)? * &h;
                centers_d.push(minus);
            } else {
                // Q(he−e) + Q(he+e) = 4Q(e) ≠ 0, so he+e is anisotropic
                let plus: Vector = he.iter().zip(&e).map(|(&a, &b)| k.add(a, b)).collect();
                h = &(&diag.reflection(&e)? * &diag.reflection(&plus)?) * &h;
                centers_d.push(plus);
                centers_d.push(e);
            }
        }
        debug_assert!(h.is_identity());
        let centers: Vec<Vector> = centers_d.iter().map(|c| p.apply(c)).collect();
        let mut rebuilt = Matrix::identity(&k, n);
        for c in &centers {
            rebuilt = &rebuilt * &self.reflection(c)?;
        }
        if &rebuilt != g {
            return Err(Error::Construction("reflection product does not reconstruct the input".into()));
        }
        Ok(centers)
    }

    /// `θ(g)`, with the convention `θ(r_v) = Q(v)·(F_q^*)²`.
    pub fn spinor_norm(&self, g: &Matrix) -> Result<SquareClass> {
        let k = self.field();
        let mut class = SquareClass::TRIVIAL;
        for c in self.reflection_decomposition(g)? {
            class = class * SquareClass::of(k, self.quadratic_value(&c)?);
        }
        Ok(class)
    }

    /// Membership in `Ω`, with the reason for every failing clause.
    pub fn in_omega(&self, g: &Matrix) -> Membership {
        let mut failures = Vec::new();
        if !self.preserves(g) {
            failures.push(MembershipFailure::NotAnIsometry);
            return Membership { failures };
        }
        if g.det().ok() != Some(Fq::ONE) {
            failures.push(MembershipFailure::DeterminantNotOne);
        }
        match self.spinor_norm(g) {
            Ok(c) if c.is_square => {}
            _ => failures.push(MembershipFailure::NontrivialSpinorNorm),
        }
        Membership { failures }
    }

    pub fn isotropic_count(&self) -> Result<u64> {
        let n = self.n() as u32;
        let q = self.field().q() as u64;
        let total = q
            .checked_pow(n)
            .filter(|&t| t <= ISOTROPIC_CAP)
            .ok_or_else(|| Error::TooLarge(format!("q^n = {q}^{n} exceeds {ISOTROPIC_CAP}")))?;
        let mut v = vec![Fq::ZERO; n as usize];
        let mut count = 0u64;
        for _ in 1..total {
            for slot in v.iter_mut() {
                if slot.0 + 1 < q as u32 {
                    slot.0 += 1;
                    break;
                }
                slot.0 = 0;
            }
            if self.bilinear(&v, &v).is_zero() {
                count += 1;
            }
        }
        Ok(count)
    }
}

pub const ISOTROPIC_CAP: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipFailure {
    NotAnIsometry,
    DeterminantNotOne,
    NontrivialSpinorNorm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub failures: Vec<MembershipFailure>,
}

impl Membership {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Plus iff `(−1)^{n/2}·det J` is a square.
fn discriminant_type(field: &Field, n: usize, det: Fq) -> Eps {
    if n % 2 == 1 {
        return Eps::Circ;
    }
    let sign = if (n / 2).is_multiple_of(2) { det } else { field.neg(det) };
    if field.is_square(sign) {
        Eps::Plus
    } else {
        Eps::Minus
    }
}

/// The Gram matrix of the given family in dimension `n`.
pub fn gram_matrix(family: Family, n: usize, field: &Field) -> Result<OrthoSpace> {
    let j = match family {
        Family::A => {
            if ![9, 11, 13, 17].contains(&n) {
                return Err(Error::UnsupportedDimension(n));
            }
            gram_a(field, n)
        }
        Family::B => {
            if n < 12 || n == 14 {
                return Err(Error::UnsupportedDimension(n));
            }
            gram_b(field, n)
        }
    };
    let space = OrthoSpace::new(j)?;
    let want = match family {
        Family::A => field.neg(Fq::ONE),
        Family::B => Fq::ONE,
    };
    if space.gram().det()? != want {
        return Err(Error::Construction("Gram determinant".into()));
    }
    Ok(space)
}

/// `diag(I_{n−3}, antidiag(1,1,1))` for any `n ≥ 3`.
pub fn gram_a(field: &Field, n: usize) -> Matrix {
    let mut j = Matrix::zero(field, n, n);
    for i in 0..n - 3 {
        j.set(i, i, Fq::ONE);
    }
    for i in 0..3 {
        j.set(n - 3 + i, n - 1 - i, Fq::ONE);
    }
    j
}

/// `[[I_{n−8},0,0],[0,0,I_4],[0,I_4,0]]` for any `n ≥ 8`.
pub fn gram_b(field: &Field, n: usize) -> Matrix {
    let mut j = Matrix::zero(field, n, n);
    for i in 0..n - 8 {
        j.set(i, i, Fq::ONE);
    }
    for i in 0..4 {
        j.set(n - 8 + i, n - 4 + i, Fq::ONE);
        j.set(n - 4 + i, n - 8 + i, Fq::ONE);
    }
    j
}

/// Type of the determinant-one forms in even dimension: plus iff `n(q−1)/4` is even.
pub fn witt_type(n: usize, q: u64) -> Eps {
    if n % 2 == 1 {
        return Eps::Circ;
    }
    if (n as u64 * (q - 1) / 4).is_multiple_of(2) {
        Eps::Plus
    } else {
        Eps::Minus
    }
}

/// `|Ω_n^ε(q)|` for `q` odd, `n ≥ 2`.
pub fn omega_order(n: usize, eps: Eps, q: u64) -> Result<BigUint> {
    if n < 2 || (n % 2 == 1) != (eps == Eps::Circ) {
        return Err(Error::UnsupportedDimension(n));
    }
    let qb = BigUint::from(q);
    let k = (n / 2) as u32;
    let so = if n % 2 == 1 {
        (1..=k).fold(qb.pow(k * k), |acc, i| acc * (qb.pow(2 * i) - 1u32))
    } else {
        let top = match eps {
            Eps::Plus => qb.pow(k) - 1u32,
            _ => qb.pow(k) + 1u32,
        };
        (1..k).fold(qb.pow(k * (k - 1)) * top, |acc, i| acc * (qb.pow(2 * i) - 1u32))
    };
    Ok(so / 2u32)
}

/// Number of nonzero isotropic vectors in the determinant-one space `(F_q^n, Σ x_i²)`,
/// as predicted for each type (`n = 2k`).
pub fn predicted_isotropic_count(n: usize, eps: Eps, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let k = (n / 2) as u32;
    match eps {
        Eps::Circ => qb.pow(2 * k) - 1u32,
        Eps::Plus => (qb.pow(k) - 1u32) * (qb.pow(k - 1) + 1u32),
        Eps::Minus => (qb.pow(k) + 1u32) * (qb.pow(k - 1) - 1u32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::unit_vector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vector(k: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vector {
        (0..n).map(|_| Fq(rng.random_range(0..k.q()))).collect()
    }

    #[test]
    fn gram_examples() {
        let k = Field::new(5, 1).unwrap();
        let a = gram_matrix(Family::A, 9, &k).unwrap();
        assert_eq!(a.gram().det().unwrap(), k.from_i64(-1));
        assert_eq!(a.eps(), Eps::Circ);
        let b = gram_matrix(Family::B, 15, &k).unwrap();
        assert_eq!(b.gram().get(7, 11), Fq::ONE);
        assert_eq!(b.gram().get(11, 7), Fq::ONE);
        assert_eq!(b.gram().get(7, 7), Fq::ZERO);
        assert_eq!(gram_matrix(Family::A, 10, &k).unwrap_err(), Error::UnsupportedDimension(10));
    }

    #[test]
    fn quadratic_values() {
        let k = Field::new(7, 1).unwrap();
        let s = gram_matrix(Family::A, 9, &k).unwrap();
        assert_eq!(s.quadratic_value(&unit_vector(9, 1)).unwrap(), k.inv(k.from_i64(2)).unwrap());
        let a = k.from_i64(3);
        let mut v = vec![Fq::ZERO; 9];
        v[6] = a;
        v[8] = k.from_i64(-2);
        assert_eq!(s.quadratic_value(&v).unwrap(), k.mul(k.from_i64(-2), a));
        let b = gram_matrix(Family::B, 15, &k).unwrap();
        assert!(b.quadratic_value(&unit_vector(15, 8)).unwrap().is_zero());
        assert!(s.quadratic_value(&unit_vector(8, 1)).is_err());
    }

    #[test]
    fn reflection_properties() {
        let k = Field::from_order(9).unwrap();
        let s = gram_matrix(Family::A, 9, &k).unwrap();
        let r = s.reflection(&unit_vector(9, 8)).unwrap();
        let mut expect = Matrix::identity(&k, 9);
        expect.set(7, 7, k.from_i64(-1));
        assert_eq!(r, expect);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let v = random_vector(&k, 9, &mut rng);
            let Ok(r) = s.reflection(&v) else { continue };
            assert!((&r * &r).is_identity());
            assert_eq!(r.det().unwrap(), k.from_i64(-1));
            assert!(s.preserves(&r));
            let neg: Vector = v.iter().map(|&c| k.neg(c)).collect();
            assert_eq!(r.apply(&v), neg);
        }
        assert_eq!(s.reflection(&unit_vector(9, 7)).ok(), None);
        let mut iso = vec![Fq::ZERO; 9];
        iso[6] = Fq::ONE;
        assert_eq!(s.reflection(&iso).unwrap_err(), Error::IsotropicCenter);
    }

    #[test]
    fn spinor_norm_of_the_three_block() {
        // x₃ = r_{a e_{n−2} − 2 e_n} r_{e_{n−1}} restricted to the last three coordinates
        for q in [3u64, 5, 7, 9, 11, 13] {
            let k = Field::from_order(q).unwrap();
            let s = OrthoSpace::new(gram_a(&k, 3)).unwrap();
            for a in k.units() {
                let v = vec![a, Fq::ZERO, k.from_i64(-2)];
                let Ok(r1) = s.reflection(&v) else { continue };
                let x3 = &r1 * &s.reflection(&unit_vector(3, 2)).unwrap();
                let theta = s.spinor_norm(&x3).unwrap();
                assert_eq!(theta.is_square, k.is_square(k.neg(a)), "q={q} a={a:?}");
                assert_eq!(s.in_omega(&x3).ok(), k.is_square(k.neg(a)));
            }
        }
    }

    #[test]
    fn spinor_norm_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for q in [3u64, 5, 7, 9] {
            let k = Field::from_order(q).unwrap();
            for (fam, n) in [(Family::A, 9), (Family::B, 12)] {
                let s = gram_matrix(fam, n, &k).unwrap();
                let random_isometry = |rng: &mut ChaCha8Rng| {
                    let mut g = Matrix::identity(&k, n);
                    let mut theta = SquareClass::TRIVIAL;
                    for _ in 0..rng.random_range(0..6) {
                        let v = random_vector(&k, n, rng);
                        if let Ok(r) = s.reflection(&v) {
                            theta = theta * SquareClass::of(&k, s.quadratic_value(&v).unwrap());
                            g = &g * &r;
                        }
                    }
                    (g, theta)
                };
                for _ in 0..100 {
                    let (g, tg) = random_isometry(&mut rng);
                    let (h, th) = random_isometry(&mut rng);
                    assert_eq!(s.spinor_norm(&g).unwrap(), tg);
                    assert_eq!(s.spinor_norm(&(&g * &h)).unwrap(), tg * th);
                    let centers = s.reflection_decomposition(&g).unwrap();
                    assert!(centers.len() <= 2 * n);
                    for c in &centers {
                        assert!(!s.quadratic_value(c).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn non_isometry_is_rejected() {
        let k = Field::new(3, 1).unwrap();
        let s = OrthoSpace::new(gram_a(&k, 3)).unwrap();
        let g = Matrix::from_ints(&k, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(s.spinor_norm(&g).unwrap_err(), Error::NotAnIsometry);
        assert_eq!(s.in_omega(&g).failures, vec![MembershipFailure::NotAnIsometry]);
        let r = s.reflection(&unit_vector(3, 2)).unwrap();
        assert!(s.in_omega(&r).failures.contains(&MembershipFailure::DeterminantNotOne));
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_type(12, 3), Eps::Plus);
        assert_eq!(witt_type(18, 3), Eps::Minus);
        assert_eq!(witt_type(18, 5), Eps::Plus);
        assert_eq!(witt_type(9, 5), Eps::Circ);
        let k = Field::new(3, 1).unwrap();
        for n in [12, 16, 18, 20] {
            assert_eq!(gram_matrix(Family::B, n, &k).unwrap().eps(), witt_type(n, 3));
        }
    }

    #[test]
    fn isotropic_counts() {
        let k = Field::new(3, 1).unwrap();
        let hyp = OrthoSpace::new(Matrix::from_ints(&k, &[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(hyp.isotropic_count().unwrap(), 4);
        let id = OrthoSpace::new(Matrix::identity(&k, 2)).unwrap();
        assert_eq!(id.isotropic_count().unwrap(), 0);
        let big = OrthoSpace::new(Matrix::identity(&Field::new(101, 1).unwrap(), 5)).unwrap();
        assert!(matches!(big.isotropic_count(), Err(Error::TooLarge(_))));
    }

    #[test]
    fn small_orders() {
        assert_eq!(omega_order(3, Eps::Circ, 3).unwrap(), BigUint::from(12u32));
        assert_eq!(omega_order(3, Eps::Circ, 5).unwrap(), BigUint::from(60u32));
        assert_eq!(omega_order(4, Eps::Plus, 3).unwrap(), BigUint::from(288u32));
        assert!(omega_order(4, Eps::Circ, 3).is_err());
    }
}

//! Dense matrices over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::ff::{Field, Fq};
use crate::poly::Poly;

/// Column vectors are plain coefficient vectors.
pub type Vector = Vec<Fq>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        write!(f, "{}", self.to_text())
    }
}

impl Matrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Fq::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Fq::ONE;
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Fq>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data: rows.concat() })
    }

    /// Builds from small integers, reduced into the prime subfield.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows.iter().map(|row| row.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, rows).expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, cols: &[Vector]) -> Result<Matrix> {
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch("columns of different length".into()));
        }
        let mut m = Matrix::zero(field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Permutation matrix sending `e_i` to `e_{perm[i]}` (0-based).
    pub fn permutation(field: &Field, perm: &[usize]) -> Matrix {
        let n = perm.len();
        let mut m = Matrix::zero(field, n, n);
        for (i, &j) in perm.iter().enumerate() {
            m.set(j, i, Fq::ONE);
        }
        m
    }

    pub fn diagonal(field: &Field, diag: &[Fq]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zero(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let field = blocks[0].field.clone();
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zero(&field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[Fq] {
        &self.data
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare(self.rows, self.cols))
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn scale(&self, c: Fq) -> Matrix {
        let k = &self.field;
        Matrix {
            field: k.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| k.mul(a, c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { Fq::ONE } else { Fq::ZERO }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn trace(&self) -> Fq {
        (0..self.rows.min(self.cols)).fold(Fq::ZERO, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Fq]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        let k = &self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Fq::ZERO, |acc, (&a, &b)| k.add(acc, k.mul(a, b))))
            .collect()
    }

    /// `M^e`; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Matrix> {
        self.require_square()?;
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        Ok(base.pow_u(e.unsigned_abs()))
    }

    pub fn pow_u(&self, mut e: u64) -> Matrix {
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let k = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = k.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = k.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = k.sub(m.get(i, j), k.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vector> {
        let k = &self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Fq::ZERO; self.cols];
            v[free] = Fq::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> Result<Fq> {
        self.require_square()?;
        let k = &self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Fq::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Fq::ZERO);
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = k.neg(det);
            }
            let pivot = m.get(c, c);
            det = k.mul(det, pivot);
            let inv = k.inv(pivot).unwrap();
            for i in c + 1..n {
                let f = k.mul(m.get(i, c), inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = k.sub(m.get(i, j), k.mul(f, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Matrix::zero(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fq::ONE);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zero(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// `det(tI - M)` by Berkowitz's division-free algorithm.
    pub fn charpoly(&self) -> Result<Poly> {
        self.require_square()?;
        let k = &self.field;
        let n = self.rows;
        // descending coefficients of det(tI - A_k) for the leading k x k block
        let mut vect = vec![Fq::ONE];
        for s in 0..n {
            let a = self.get(s, s);
            let mut col = vec![Fq::ZERO; s + 2];
            col[0] = Fq::ONE;
            col[1] = k.neg(a);
            let mut v: Vector = (0..s).map(|i| self.get(i, s)).collect();
            for slot in col.iter_mut().skip(2) {
                let rv = (0..s).fold(Fq::ZERO, |acc, j| k.add(acc, k.mul(self.get(s, j), v[j])));
                *slot = k.neg(rv);
                v = (0..s).map(|i| (0..s).fold(Fq::ZERO, |acc, j| k.add(acc, k.mul(self.get(i, j), v[j])))).collect();
            }
            let mut next = vec![Fq::ZERO; s + 2];
            for (r, slot) in next.iter_mut().enumerate() {
                let mut acc = Fq::ZERO;
                for c in 0..=r.min(s) {
                    acc = k.add(acc, k.mul(col[r - c], vect[c]));
                }
                *slot = acc;
            }
            vect = next;
        }
        vect.reverse();
        Ok(Poly::new(k, vect))
    }

    /// Minimal polynomial, as the lcm of the local minimal polynomials on the
    /// Krylov spaces of the standard basis vectors.
    pub fn minpoly(&self) -> Result<Poly> {
        self.require_square()?;
        let k = &self.field;
        let n = self.rows;
        let mut acc = Poly::one(k);
        for i in 0..n {
            let mut e = vec![Fq::ZERO; n];
            e[i] = Fq::ONE;
            if acc.eval_at_vector(self, &e).iter().all(|c| c.is_zero()) {
                continue;
            }
            let local = self.local_minpoly(&e);
            acc = acc.lcm(&local);
            if acc.degree() == Some(n) {
                break;
            }
        }
        Ok(acc)
    }

    /// Monic least-degree `g` with `g(M) v = 0`.
    pub fn local_minpoly(&self, v: &[Fq]) -> Poly {
        let k = &self.field;
        let mut krylov: Vec<Vector> = vec![v.to_vec()];
        loop {
            let next = self.apply(krylov.last().unwrap());
            krylov.push(next);
            let m = Matrix::from_columns(k, &krylov).unwrap();
            let null = m.nullspace();
            if let Some(rel) = null.first() {
                // earlier columns are independent, so the relation has a nonzero top entry
                return Poly::new(k, rel.clone()).monic();
            }
        }
    }

    /// Canonical (reduced echelon) basis of `ker(M - lambda I)`.
    pub fn eigenspace(&self, lambda: Fq) -> Result<Vec<Vector>> {
        self.require_square()?;
        let shifted = self - &Matrix::identity(&self.field, self.rows).scale(lambda);
        Ok(span_basis(&self.field, &shifted.nullspace()))
    }

    /// Dimension of the fixed space `ker(M - I)`.
    pub fn fixed_dim(&self) -> usize {
        let shifted = self - &Matrix::identity(&self.field, self.rows);
        self.rows - shifted.rank()
    }

    /// Matrix of `M` acting on the span of `basis`, in that basis order.
    pub fn restrict(&self, basis: &[Vector]) -> Result<Matrix> {
        self.require_square()?;
        let k = &self.field;
        if basis.iter().any(|b| b.len() != self.rows) {
            return Err(Error::DimensionMismatch("basis vector length".into()));
        }
        let b = Matrix::from_columns(k, basis)?;
        let dim = basis.len();
        let (_, pivots) = b.transpose().rref();
        if pivots.len() < dim {
            return Err(Error::DependentBasis);
        }
        // rows of B that form an invertible square block
        let rows = pivots;
        let mut sq = Matrix::zero(k, dim, dim);
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..dim {
                sq.set(i, j, b.get(r, j));
            }
        }
        let image = self * &b;
        let mut im_rows = Matrix::zero(k, dim, dim);
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..dim {
                im_rows.set(i, j, image.get(r, j));
            }
        }
        let res = &sq.inverse()? * &im_rows;
        if &b * &res != image {
            return Err(Error::NotInvariant);
        }
        Ok(res)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let k = &self.field;
        let mut m = Matrix::zero(k, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for r in 0..other.rows {
                    for c in 0..other.cols {
                        m.set(i * other.rows + r, j * other.cols + c, k.mul(a, other.get(r, c)));
                    }
                }
            }
        }
        m
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows)
            .map(|i| Value::from(self.row(i).iter().map(|&c| self.field.to_json(c)).collect::<Vec<_>>()))
            .collect();
        serde_json::json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }

    pub fn from_json(field: &Field, v: &Value) -> Result<Matrix> {
        let bad = |m: &str| Error::BadElement(format!("matrix JSON: {m}"));
        let rows = v["rows"].as_u64().ok_or_else(|| bad("missing rows"))? as usize;
        let cols = v["cols"].as_u64().ok_or_else(|| bad("missing cols"))? as usize;
        let entries = v["entries"].as_array().ok_or_else(|| bad("missing entries"))?;
        if entries.len() != rows {
            return Err(bad("row count"));
        }
        let rows_vec = entries
            .iter()
            .map(|row| {
                let row = row.as_array().ok_or_else(|| bad("row not an array"))?;
                if row.len() != cols {
                    return Err(bad("column count"));
                }
                row.iter().map(|x| field.from_json(x)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = Matrix::from_rows(field, rows_vec)?;
        m.rows = rows;
        m.cols = cols;
        Ok(m)
    }

    /// Plain-text dump, one row per line.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|&c| self.field.fmt_elem(c)).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        cells
            .iter()
            .map(|row| row.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }
}

impl Poly {
    /// `g(M) v` without forming `g(M)`.
    pub fn eval_at_vector(&self, m: &Matrix, v: &[Fq]) -> Vector {
        let k = self.field();
        let mut acc = vec![Fq::ZERO; v.len()];
        for &c in self.coeffs().iter().rev() {
            acc = m.apply(&acc);
            for (a, &b) in acc.iter_mut().zip(v) {
                *a = k.add(*a, k.mul(c, b));
            }
        }
        acc
    }
}

/// Reduced echelon basis of the span of `vectors` (canonical form of a subspace).
pub fn span_basis(field: &Field, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(field, vectors.to_vec()).expect("equal lengths");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Standard basis vector `e_i` (1-based, as in the usual notation).
pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Fq::ZERO; n];
    v[i - 1] = Fq::ONE;
    v
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimensions");
        let k = &self.field;
        let (n, m, l) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![Fq::ZERO; n * l];
        if k.f() == 1 {
            let p = k.p() as u64;
            let max_terms = (u64::MAX / ((p - 1) * (p - 1))).max(1) as usize;
            let mut acc = vec![0u64; l];
            for i in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                let mut terms = 0;
                for t in 0..m {
                    let a = self.data[i * m + t].0 as u64;
                    if a == 0 {
                        continue;
                    }
                    let brow = &rhs.data[t * l..(t + 1) * l];
                    for (slot, b) in acc.iter_mut().zip(brow) {
                        *slot += a * b.0 as u64;
                    }
                    terms += 1;
                    if terms == max_terms {
                        acc.iter_mut().for_each(|a| *a %= p);
                        terms = 1;
                    }
                }
                for (j, a) in acc.iter().enumerate() {
                    out[i * l + j] = Fq((a % p) as u32);
                }
            }
        } else {
            for i in 0..n {
                for t in 0..m {
                    let a = self.data[i * m + t];
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..l {
                        let slot = &mut out[i * l + j];
                        *slot = k.add(*slot, k.mul(a, rhs.data[t * l + j]));
                    }
                }
            }
        }
        Matrix { field: k.clone(), rows: n, cols: l, data: out }
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let k = &self.field;
        Matrix {
            field: k.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| k.add(a, b)).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let k = &self.field;
        Matrix {
            field: k.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| k.sub(a, b)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(k: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let rows = (0..n).map(|_| (0..n).map(|_| Fq(rng.random_range(0..k.q()))).collect()).collect();
        Matrix::from_rows(k, rows).unwrap()
    }

    #[test]
    fn identity_charpoly_and_minpoly() {
        let k = Field::new(3, 1).unwrap();
        let i2 = Matrix::identity(&k, 2);
        let t1 = Poly::linear(&k, Fq::ONE);
        assert_eq!(i2.charpoly().unwrap(), t1.mul(&t1));
        assert_eq!(Matrix::identity(&k, 5).minpoly().unwrap(), t1);
    }

    #[test]
    fn not_square_is_rejected() {
        let k = Field::new(5, 1).unwrap();
        let m = Matrix::zero(&k, 2, 3);
        assert_eq!(m.charpoly().unwrap_err(), Error::NotSquare(2, 3));
        assert!(m.minpoly().is_err());
        assert!(m.eigenspace(Fq::ONE).is_err());
    }

    #[test]
    fn charpoly_agrees_with_pointwise_determinant() {
        // independent route: chi(lambda) = det(lambda I - M) at every lambda in F_q
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [25u64, 27] {
            let k = Field::from_order(q).unwrap();
            for n in 1..=12 {
                let m = random_matrix(&k, n, &mut rng);
                let chi = m.charpoly().unwrap();
                assert_eq!(chi.degree(), Some(n));
                assert!(chi.is_monic());
                for lambda in k.elements() {
                    let shifted = &Matrix::identity(&k, n).scale(lambda) - &m;
                    assert_eq!(chi.eval(lambda), shifted.det().unwrap());
                }
            }
        }
    }

    #[test]
    fn cayley_hamilton_and_minpoly_divisibility() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [3u64, 5, 9, 27] {
            let k = Field::from_order(q).unwrap();
            for n in [1, 2, 5, 9, 12] {
                let m = random_matrix(&k, n, &mut rng);
                let chi = m.charpoly().unwrap();
                assert!(chi.eval_matrix(&m).is_zero());
                let mu = m.minpoly().unwrap();
                assert!(mu.eval_matrix(&m).is_zero());
                assert!(mu.divides(&chi));
                // no proper monic divisor of lower degree annihilates: check mu / (t - r) for roots r
                for r in k.elements() {
                    if mu.eval(r).is_zero() {
                        let lower = mu.div_rem(&Poly::linear(&k, r)).0;
                        assert!(!lower.eval_matrix(&m).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_det_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k = Field::new(7, 1).unwrap();
        for _ in 0..20 {
            let m = random_matrix(&k, 6, &mut rng);
            let d = m.det().unwrap();
            match m.inverse() {
                Ok(inv) => {
                    assert!(!d.is_zero());
                    assert!((&m * &inv).is_identity());
                    assert_eq!(m.rank(), 6);
                }
                Err(Error::Singular) => assert!(d.is_zero()),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn eigenspace_dimension_matches_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let k = Field::new(3, 1).unwrap();
        for _ in 0..30 {
            let m = random_matrix(&k, 5, &mut rng);
            for l in k.elements() {
                let es = m.eigenspace(l).unwrap();
                let shifted = &m - &Matrix::identity(&k, 5).scale(l);
                assert_eq!(es.len(), 5 - shifted.rank());
                for v in &es {
                    assert_eq!(m.apply(v), v.iter().map(|&c| k.mul(c, l)).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn identity_eigenspace_is_standard_basis() {
        let k = Field::new(5, 1).unwrap();
        let es = Matrix::identity(&k, 4).eigenspace(Fq::ONE).unwrap();
        assert_eq!(es, (1..=4).map(|i| unit_vector(4, i)).collect::<Vec<_>>());
        assert!(Matrix::identity(&k, 4).eigenspace(k.from_i64(2)).unwrap().is_empty());
    }

    #[test]
    fn restrict_detects_non_invariance() {
        let k = Field::new(5, 1).unwrap();
        let m = Matrix::from_ints(&k, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        let r = m.restrict(&[unit_vector(3, 1)]).unwrap();
        assert_eq!(r, Matrix::from_ints(&k, &[&[1]]));
        assert_eq!(m.restrict(&[unit_vector(3, 2)]).unwrap_err(), Error::NotInvariant);
        assert_eq!(m.restrict(&[unit_vector(3, 1), unit_vector(3, 1)]).unwrap_err(), Error::DependentBasis);
        let r = m.restrict(&[unit_vector(3, 3), unit_vector(3, 1), unit_vector(3, 2)]).unwrap();
        assert_eq!(r, Matrix::from_ints(&k, &[&[2, 0, 0], &[0, 1, 1], &[0, 0, 1]]));
    }

    #[test]
    fn pow_and_negative_pow() {
        let k = Field::new(5, 1).unwrap();
        let m = Matrix::from_ints(&k, &[&[1, 1], &[0, 1]]);
        assert_eq!(m.pow(5).unwrap(), Matrix::identity(&k, 2));
        assert!((&m.pow(-3).unwrap() * &m.pow(3).unwrap()).is_identity());
    }

    #[test]
    fn json_round_trip() {
        let k = Field::new(3, 2).unwrap();
        let m = Matrix::from_rows(&k, vec![vec![Fq(1), Fq(4)], vec![Fq(0), Fq(8)]]).unwrap();
        let v = m.to_json();
        assert_eq!(v["entries"][0][1], serde_json::json!([1, 1]));
        assert_eq!(Matrix::from_json(&k, &v).unwrap(), m);
    }
}

//! Brute-force enumerations used to cross-check the closed formulas in [`crate::forms`].

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{Field, Fq};
use crate::forms::{predicted_isotropic_count, Eps, OrthoSpace};
use crate::matrix::{Matrix, Vector};

/// Largest `q^n` for which isometries are enumerated.
pub const VECTOR_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCounts {
    pub n: usize,
    pub q: u32,
    pub eps: Eps,
    /// `|O|`: matrices with `gᵀJg = J`.
    pub isometries: u64,
    /// `|SO|`.
    pub special: u64,
    /// `|Ω|`.
    pub omega: u64,
}

impl GroupCounts {
    pub fn omega_has_index_two(&self) -> bool {
        self.special == 2 * self.omega
    }
}

fn all_vectors(field: &Field, n: usize) -> Result<Vec<Vector>> {
    let q = field.q() as u64;
    let total = q
        .checked_pow(n as u32)
        .filter(|&t| t <= VECTOR_CAP)
        .ok_or_else(|| Error::TooLarge(format!("{q}^{n} vectors")))?;
    let mut out = Vec::with_capacity(total as usize);
    let mut v = vec![Fq::ZERO; n];
    for _ in 0..total {
        out.push(v.clone());
        for slot in v.iter_mut() {
            if slot.0 + 1 < q as u32 {
                slot.0 += 1;
                break;
            }
            slot.0 = 0;
        }
    }
    Ok(out)
}

/// Every `g` with `gᵀJg = J`, found column by column: column `i` ranges over all vectors
/// and is kept only when its pairings with itself and the earlier columns match `J`.
pub fn enumerate_isometries(space: &OrthoSpace) -> Result<Vec<Matrix>> {
    let k = space.field().clone();
    let n = space.n();
    let vectors = all_vectors(&k, n)?;
    let j = space.gram();
    let mut out = Vec::new();
    let mut cols: Vec<usize> = Vec::with_capacity(n);
    fn extend(space: &OrthoSpace, j: &Matrix, vectors: &[Vector], cols: &mut Vec<usize>, out: &mut Vec<Matrix>) {
        let i = cols.len();
        if i == j.rows() {
            let c: Vec<Vector> = cols.iter().map(|&c| vectors[c].clone()).collect();
            out.push(Matrix::from_columns(space.field(), &c).unwrap());
            return;
        }
        for (idx, v) in vectors.iter().enumerate() {
            if space.bilinear(v, v) != j.get(i, i) {
                continue;
            }
            if cols.iter().enumerate().all(|(l, &c)| space.bilinear(&vectors[c], v) == j.get(l, i)) {
                cols.push(idx);
                extend(space, j, vectors, cols, out);
                cols.pop();
            }
        }
    }
    extend(space, j, &vectors, &mut cols, &mut out);
    Ok(out)
}

/// Counts `O`, `SO` and `Ω` for `space` by enumeration.
pub fn group_counts(space: &OrthoSpace) -> Result<GroupCounts> {
    let all = enumerate_isometries(space)?;
    let mut special = 0;
    let mut omega = 0;
    for g in &all {
        if g.det()? == Fq::ONE {
            special += 1;
            if space.spinor_norm(g)?.is_square {
                omega += 1;
            }
        }
    }
    Ok(GroupCounts {
        n: space.n(),
        q: space.field().q(),
        eps: space.eps(),
        isometries: all.len() as u64,
        special,
        omega,
    })
}

/// Plus or minus type of an even-dimensional space, decided by counting isotropic vectors.
pub fn classify_by_isotropic_count(space: &OrthoSpace) -> Result<Eps> {
    let n = space.n();
    if n % 2 == 1 {
        return Ok(Eps::Circ);
    }
    let count = BigUint::from(space.isotropic_count()?);
    let q = space.field().q() as u64;
    for eps in [Eps::Plus, Eps::Minus] {
        if count == predicted_isotropic_count(n, eps, q) {
            return Ok(eps);
        }
    }
    Err(Error::Construction(format!("isotropic count {count} matches neither type")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{gram_a, omega_order};

    #[test]
    fn three_dimensional_counts() {
        for (q, omega) in [(3u64, 12u64), (5, 60)] {
            let k = Field::from_order(q).unwrap();
            let c = group_counts(&OrthoSpace::new(gram_a(&k, 3)).unwrap()).unwrap();
            assert_eq!(c.omega, omega);
            assert!(c.omega_has_index_two());
            assert_eq!(c.isometries, 2 * c.special);
            assert_eq!(BigUint::from(c.omega), omega_order(3, Eps::Circ, q).unwrap());
        }
    }

    #[test]
    fn four_dimensional_plus() {
        let k = Field::new(3, 1).unwrap();
        let j = Matrix::from_ints(&k, &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        let s = OrthoSpace::new(j).unwrap();
        assert_eq!(s.eps(), Eps::Plus);
        let c = group_counts(&s).unwrap();
        assert_eq!(BigUint::from(c.omega), omega_order(4, Eps::Plus, 3).unwrap());
    }

    #[test]
    fn hyperbolic_plane_classifies_plus() {
        let k = Field::new(3, 1).unwrap();
        let s = OrthoSpace::new(Matrix::from_ints(&k, &[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(classify_by_isotropic_count(&s).unwrap(), Eps::Plus);
        let s = OrthoSpace::new(Matrix::identity(&k, 2)).unwrap();
        assert_eq!(classify_by_isotropic_count(&s).unwrap(), Eps::Minus);
    }
}

//! Coordinate subspaces invariant under `[x,y]` in the second family.

use serde::Serialize;

use super::{Case, GenPair};
use crate::error::{Error, Result};
use crate::matrix::{unit_vector, Vector};

/// All subspaces here are spanned by standard basis vectors; they are stored as
/// 1-based coordinate lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialSubspaces {
    pub n: usize,
    /// `e_{n−8}, …, e_n`.
    pub s9: Vec<usize>,
    /// Direct summands of `𝒜`; empty when `n = 12`.
    pub a: Vec<Vec<usize>>,
    /// Cycles by which `[x,y]` permutes the basis of `𝒜`.
    pub a_cycles: Vec<Vec<usize>>,
    /// Three-dimensional summands of `ℬ`, each permuted by `[x,y]` as the 3-cycle
    /// `(first, third, second)`.
    pub b: Vec<[usize; 3]>,
    pub c: Vec<usize>,
}

impl SpecialSubspaces {
    pub fn basis(&self, coords: &[usize]) -> Vec<Vector> {
        coords.iter().map(|&i| unit_vector(self.n, i)).collect()
    }

    pub fn b_cycles(&self) -> Vec<Vec<usize>> {
        self.b.iter().map(|s| vec![s[0], s[2], s[1]]).collect()
    }

    pub fn decomposed(&self) -> bool {
        !self.a.is_empty()
    }

    /// Dimensions of `𝒜`, `ℬ`, `𝒞`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.a.iter().map(Vec::len).sum(), 3 * self.b.len(), self.c.len())
    }
}

/// `E_ℓ = ⟨e_1, …, e_ℓ⟩`.
pub fn prefix(n: usize, l: usize) -> Vec<Vector> {
    (1..=l).map(|i| unit_vector(n, i)).collect()
}

/// `S_ℓ = ⟨e_{n−ℓ+1}, …, e_n⟩`.
pub fn suffix(n: usize, l: usize) -> Vec<Vector> {
    (n + 1 - l..=n).map(|i| unit_vector(n, i)).collect()
}

fn a_summands(n: usize, r: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let v = |s: &[&[usize]]| s.iter().map(|c| c.to_vec()).collect::<Vec<_>>();
    match n {
        15 => (v(&[&[1, 3, 4]]), v(&[&[3, 4]])),
        16 => (v(&[&[1, 5], &[2, 4]]), v(&[&[1, 5], &[2, 4]])),
        19 => (v(&[&[1, 2, 4, 5], &[3, 7, 8]]), v(&[&[1, 5, 4, 2], &[3, 8, 7]])),
        20 => (v(&[&[1, 2, 6, 8], &[3, 4, 5, 9]]), v(&[&[1, 6, 8, 2], &[3, 4, 9, 5]])),
        23 => (v(&[&[1, 2, 3, 4, 5, 6, 8, 9], &[7, 11, 12]]), v(&[&[1, 6, 5, 3, 4, 9, 8, 2], &[7, 12, 11]])),
        _ => {
            let summands = match r {
                0 => v(&[&[1, 2, 3, 4, 6, 7]]),
                1 => v(&[&[1, 2, 4, 5], &[3, 6, 7, 8, 10, 11]]),
                _ => v(&[&[1, 2, 3, 4, 5, 6, 8, 9], &[7, 10, 11, 12, 14, 15]]),
            };
            let cycles = match n % 6 {
                0 => v(&[&[1, 4, 3, 2, 7, 6]]),
                1 => v(&[&[1, 5, 4, 2], &[3, 8, 7], &[6, 11, 10]]),
                2 => v(&[&[1, 6, 8, 2], &[3, 4, 9, 5], &[7, 12, 11, 10, 15, 14]]),
                3 => v(&[&[2, 7, 6], &[3, 4]]),
                4 => v(&[&[1, 5], &[2, 4], &[3, 8, 7, 6, 11, 10]]),
                _ => v(&[&[1, 6, 5, 3, 4, 9, 8, 2], &[7, 12, 11], &[10, 15, 14]]),
            };
            (summands, cycles)
        }
    }
}

pub fn special_subspaces(pair: &GenPair) -> Result<SpecialSubspaces> {
    if pair.tag.case == Case::A {
        return Err(Error::WrongCase("the subspace decomposition belongs to the second family".into()));
    }
    let n = pair.n;
    let (m, r) = (pair.tag.m, pair.tag.r);
    let s9 = (n - 8..=n).collect();
    if n == 12 {
        return Ok(SpecialSubspaces { n, s9, a: vec![], a_cycles: vec![], b: vec![], c: vec![] });
    }
    let (a, a_cycles) = a_summands(n, r);
    let b = if m >= 4 + r {
        (0..=m - 4 - r).map(|j| [5 + 4 * r + 3 * j, 9 + 4 * r + 3 * j, 10 + 4 * r + 3 * j]).collect()
    } else {
        vec![]
    };
    let mut c = vec![n - 13];
    c.extend(n - 10..=n);
    let out = SpecialSubspaces { n, s9, a, a_cycles, b, c };
    let (da, db, dc) = out.dims();
    if da + db + dc != n {
        return Err(Error::Construction(format!("dim 𝒜 + dim ℬ + dim 𝒞 = {} != {n}", da + db + dc)));
    }
    let mut all: Vec<usize> = out.a.iter().flatten().chain(out.b.iter().flatten()).chain(&out.c).copied().collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != n {
        return Err(Error::Construction("𝒜, ℬ, 𝒞 overlap".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Field;
    use crate::gens::{build_pair, default_a};

    fn subspaces(n: usize) -> SpecialSubspaces {
        let k = Field::new(5, 1).unwrap();
        special_subspaces(&build_pair(n, &k, default_a(n, &k).unwrap(), false).unwrap()).unwrap()
    }

    #[test]
    fn listed_examples() {
        let s = subspaces(15);
        assert_eq!(s.a, vec![vec![1, 3, 4]]);
        assert!(s.b.is_empty());
        assert_eq!(s.c.len(), 12);
        assert_eq!(subspaces(21).b, vec![[5, 9, 10]]);
        let s = subspaces(23);
        assert_eq!(s.a, vec![vec![1, 2, 3, 4, 5, 6, 8, 9], vec![7, 11, 12]]);
        assert!(s.b.is_empty());
        assert!(!subspaces(12).decomposed());
    }

    #[test]
    fn decomposition_covers_every_dimension() {
        for n in [15, 16, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32, 33, 34, 35] {
            let s = subspaces(n);
            let (a, b, c) = s.dims();
            assert_eq!(a + b + c, n);
        }
    }
}

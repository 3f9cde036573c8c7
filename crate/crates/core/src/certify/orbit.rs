//! Orbits of vectors under matrix groups, with Schreier vectors as transversals.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ff::{Field, Fq};
use crate::matrix::{Matrix, Vector};

/// Default bound on the number of points in one orbit.
pub const DEFAULT_ORBIT_CAP: usize = 5_000_000;

/// Vectors of `F_q^n` packed into a `u64` as base-`q` digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointCodec {
    q: u64,
    n: usize,
}

impl PointCodec {
    pub fn new(field: &Field, n: usize) -> Result<PointCodec> {
        let q = field.q() as u64;
        q.checked_pow(n as u32).ok_or_else(|| Error::TooLarge(format!("{q}^{n} points do not fit in 64 bits")))?;
        Ok(PointCodec { q, n })
    }

    pub fn pack(&self, v: &[Fq]) -> u64 {
        v.iter().rev().fold(0, |acc, c| acc * self.q + c.code() as u64)
    }

    pub fn unpack(&self, mut code: u64) -> Vector {
        (0..self.n)
            .map(|_| {
                let c = Fq((code % self.q) as u32);
                code /= self.q;
                c
            })
            .collect()
    }
}

const ROOT: u32 = u32::MAX;

/// Breadth-first closure of one point. `points` is in discovery order; `tree[p]` holds the
/// generator index `k` and the point `r` with `p = g_k r`.
#[derive(Clone, Debug)]
pub struct Orbit {
    codec: PointCodec,
    pub points: Vec<u64>,
    tree: HashMap<u64, (u32, u64)>,
}

fn check_dims(gens: &[Matrix], n: usize) -> Result<()> {
    for g in gens {
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator is {}x{}, points have length {n}",
                g.rows(),
                g.cols()
            )));
        }
    }
    Ok(())
}

impl Orbit {
    /// The orbit of `v` under `gens`, failing once it exceeds `cap` points.
    pub fn new(gens: &[Matrix], v: &[Fq], field: &Field, cap: usize) -> Result<Orbit> {
        check_dims(gens, v.len())?;
        let codec = PointCodec::new(field, v.len())?;
        let root = codec.pack(v);
        let mut orbit = Orbit { codec, points: vec![root], tree: HashMap::from([(root, (ROOT, root))]) };
        orbit.grow(gens, 0, cap)?;
        Ok(orbit)
    }

    /// Closes the orbit again after generators `first_new..` were appended to `gens`.
    pub fn grow(&mut self, gens: &[Matrix], first_new: usize, cap: usize) -> Result<()> {
        check_dims(gens, self.codec.n)?;
        let old = self.points.len();
        for idx in 0..old {
            let v = self.codec.unpack(self.points[idx]);
            for (k, g) in gens.iter().enumerate().skip(first_new) {
                self.visit(g, k, &v, cap)?;
            }
        }
        let mut idx = old;
        while idx < self.points.len() {
            let v = self.codec.unpack(self.points[idx]);
            for (k, g) in gens.iter().enumerate() {
                self.visit(g, k, &v, cap)?;
            }
            idx += 1;
        }
        Ok(())
    }

    fn visit(&mut self, g: &Matrix, k: usize, v: &[Fq], cap: usize) -> Result<()> {
        let img = self.codec.pack(&g.apply(v));
        if !self.tree.contains_key(&img) {
            if self.points.len() >= cap {
                return Err(Error::OrbitCap(cap));
            }
            self.tree.insert(img, (k as u32, self.codec.pack(v)));
            self.points.push(img);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn root(&self) -> u64 {
        self.points[0]
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        self.tree.contains_key(&self.codec.pack(v))
    }

    pub fn contains_code(&self, p: u64) -> bool {
        self.tree.contains_key(&p)
    }

    pub fn codec(&self) -> PointCodec {
        self.codec
    }

    pub fn vectors(&self) -> impl Iterator<Item = Vector> + '_ {
        self.points.iter().map(|&p| self.codec.unpack(p))
    }

    /// Generator indices `k₁ … k_m` with `g_{k₁} ⋯ g_{k_m}` mapping the root to `p`.
    pub fn word(&self, p: u64) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = p;
        loop {
            let &(k, parent) = self.tree.get(&cur)?;
            if k == ROOT {
                return Some(out);
            }
            out.push(k as usize);
            cur = parent;
        }
    }

    /// The transversal element for `p`, rebuilt from its word.
    pub fn transversal(&self, p: u64, gens: &[Matrix]) -> Option<Matrix> {
        let word = self.word(p)?;
        let n = self.codec.n;
        let mut m = Matrix::identity(gens.first().map(Matrix::field)?, n);
        for &k in word.iter().rev() {
            m = &gens[k] * &m;
        }
        Some(m)
    }

    /// `u_p^{-1} h`, walking the Schreier tree with the inverse generators.
    pub(crate) fn strip(&self, mut h: Matrix, mut p: u64, inverses: &[Matrix]) -> Matrix {
        loop {
            let (k, parent) = self.tree[&p];
            if k == ROOT {
                return h;
            }
            h = &inverses[k as usize] * &h;
            p = parent;
        }
    }
}

/// Orbit of `v` under `gens`, with the default cap.
pub fn orbit(gens: &[Matrix], v: &[Fq]) -> Result<Orbit> {
    let field =
        gens.first().map(|g| g.field().clone()).ok_or_else(|| Error::DimensionMismatch("no generators".into()))?;
    Orbit::new(gens, v, &field, DEFAULT_ORBIT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::unit_vector;

    #[test]
    fn codec_round_trip() {
        let k = Field::from_order(9).unwrap();
        let c = PointCodec::new(&k, 5).unwrap();
        let v: Vector = (0..5).map(|i| k.elem((i * 2 + 1) % 9).unwrap()).collect();
        assert_eq!(c.unpack(c.pack(&v)), v);
        assert!(PointCodec::new(&Field::from_order(27).unwrap(), 40).is_err());
    }

    #[test]
    fn identity_orbit_is_a_point() {
        let k = Field::new(5, 1).unwrap();
        let o = orbit(&[Matrix::identity(&k, 3)], &unit_vector(3, 2)).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o.word(o.root()), Some(vec![]));
    }

    #[test]
    fn cap_is_enforced() {
        let k = Field::new(7, 1).unwrap();
        let g = Matrix::from_ints(&k, &[&[1, 1], &[0, 1]]);
        assert_eq!(Orbit::new(&[g], &unit_vector(2, 2), &k, 3).unwrap_err(), Error::OrbitCap(3));
    }

    #[test]
    fn mismatched_generator_is_rejected() {
        let k = Field::new(3, 1).unwrap();
        let r = orbit(&[Matrix::identity(&k, 3)], &unit_vector(2, 1));
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }
}

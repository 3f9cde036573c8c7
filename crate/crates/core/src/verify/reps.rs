//! Small representations of `GL₂` used to rule out the `PSL₂` overgroups: symmetric
//! powers of the natural module, and the 9-dimensional `F_q`-form of `Sym²` over `F_{q²}`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::factor::roots;
use crate::ff::{Field, Fq};
use crate::matrix::Matrix;
use crate::poly::Poly;

fn require_2x2(g: &Matrix) -> Result<()> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a 2x2 matrix, got {}x{}", g.rows(), g.cols())));
    }
    Ok(())
}

/// `g` acting on homogeneous polynomials of degree `d` in `t₁, t₂` by the substitution
/// `t_j ↦ Σ_i g_{ij} t_i`, in the basis `t₁^d, t₁^{d−1}t₂, …, t₂^d`.
pub fn sym_power_rep(field: &Field, g: &Matrix, d: usize) -> Result<Matrix> {
    require_2x2(g)?;
    if d == 0 {
        return Err(Error::DimensionMismatch("degree must be at least 1".into()));
    }
    // a linear form b₁t₁ + b₂t₂ is stored as the dehomogenised polynomial b₁ + b₂t₂
    let image1 = Poly::new(field, vec![g.get(0, 0), g.get(1, 0)]);
    let image2 = Poly::new(field, vec![g.get(0, 1), g.get(1, 1)]);
    let cols: Vec<Vec<Fq>> = (0..=d)
        .map(|k| {
            let p = image1.pow((d - k) as u64).mul(&image2.pow(k as u64));
            (0..=d).map(|i| p.coeff(i)).collect()
        })
        .collect();
    Matrix::from_columns(field, &cols)
}

/// The degree-2 case written out entrywise.
pub fn psi(field: &Field, g: &Matrix) -> Result<Matrix> {
    require_2x2(g)?;
    let (b1, b2, b3, b4) = (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1));
    let m = |u, v| field.mul(u, v);
    let two = field.from_i64(2);
    Matrix::from_rows(
        field,
        vec![
            vec![m(b1, b1), m(b1, b2), m(b2, b2)],
            vec![m(two, m(b1, b3)), field.add(m(b1, b4), m(b2, b3)), m(two, m(b2, b4))],
            vec![m(b3, b3), m(b3, b4), m(b4, b4)],
        ],
    )
}

/// Symmetric form preserved by `psi(g)` when `det g = ±1`.
pub fn psi_form(field: &Field) -> Matrix {
    let h = field.neg(field.inv(field.from_i64(2)).unwrap());
    let mut f = Matrix::zero(field, 3, 3);
    f.set(0, 2, Fq::ONE);
    f.set(2, 0, Fq::ONE);
    f.set(1, 1, h);
    f
}

/// An embedding of `small` into `big`, as a table indexed by element code.
pub fn subfield_embedding(big: &Field, small: &Field) -> Result<Vec<Fq>> {
    if big.p() != small.p() || !big.f().is_multiple_of(small.f()) {
        return Err(Error::WrongExtensionDegree { big: big.q() as u64, small: small.q() as u64 });
    }
    let beta = if small.f() == 1 {
        Fq::ZERO
    } else {
        let m: Vec<Fq> = small.modulus().iter().map(|&c| big.from_i64(c as i64)).collect();
        *roots(big, &Poly::new(big, m), crate::DEFAULT_SEED)?
            .first()
            .ok_or_else(|| Error::Construction("defining polynomial has no root".into()))?
    };
    Ok(small
        .elements()
        .map(|a| {
            let cs = small.coeffs(a);
            cs.iter().rev().fold(Fq::ZERO, |acc, &c| big.add(big.mul(acc, beta), big.from_i64(c as i64)))
        })
        .collect())
}

/// The 9-dimensional space `W = {A ∈ M₃(q²) : Aᵀ = A^σ}` (`σ` the `q`-th power map) with
/// the `F_q`-basis `E₁₁, E₂₂, E₃₃, P₁₂, Q₁₂, P₁₃, Q₁₃, P₂₃, Q₂₃`, where
/// `P_ij = E_ij + E_ji` and `Q_ij = ωE_ij + ω^q E_ji` for a fixed `ω ∉ F_q`.
pub struct HermitianSpace {
    pub big: Field,
    pub small: Field,
    embed: Vec<Fq>,
    unembed: HashMap<Fq, Fq>,
    pub omega: Fq,
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

impl HermitianSpace {
    pub fn new(big: &Field, small: &Field) -> Result<HermitianSpace> {
        if big.p() != small.p() || big.f() != 2 * small.f() {
            return Err(Error::WrongExtensionDegree { big: big.q() as u64, small: small.q() as u64 });
        }
        let embed = subfield_embedding(big, small)?;
        let unembed = small.elements().map(|a| (embed[a.code() as usize], a)).collect();
        let q = small.q() as u64;
        let omega = big.elements().find(|&w| big.pow(w, q) != w).expect("proper extension");
        Ok(HermitianSpace { big: big.clone(), small: small.clone(), embed, unembed, omega })
    }

    fn sigma(&self, a: Fq) -> Fq {
        self.big.pow(a, self.small.q() as u64)
    }

    fn down(&self, a: Fq) -> Result<Fq> {
        self.unembed.get(&a).copied().ok_or_else(|| Error::Construction("entry outside the subfield".into()))
    }

    /// The `i`-th basis matrix of `W`.
    pub fn basis_matrix(&self, i: usize) -> Matrix {
        let k = &self.big;
        let mut m = Matrix::zero(k, 3, 3);
        if i < 3 {
            m.set(i, i, Fq::ONE);
            return m;
        }
        let (r, c) = PAIRS[(i - 3) / 2];
        let w = if (i - 3).is_multiple_of(2) { Fq::ONE } else { self.omega };
        m.set(r, c, w);
        m.set(c, r, self.sigma(w));
        m
    }

    /// `F_q`-coordinates of `A ∈ W`.
    pub fn coordinates(&self, a: &Matrix) -> Result<Vec<Fq>> {
        let k = &self.big;
        let mut out = Vec::with_capacity(9);
        for i in 0..3 {
            out.push(self.down(a.get(i, i))?);
        }
        // a_rc = c₁ + c₂ω with c₁, c₂ ∈ F_q, and a_cr must equal a_rc^σ
        let w = self.omega;
        let denom = k.inv(k.sub(w, self.sigma(w))).unwrap();
        for (r, c) in PAIRS {
            let z = a.get(r, c);
            if a.get(c, r) != self.sigma(z) {
                return Err(Error::Construction("matrix is not in W".into()));
            }
            let c2 = k.mul(k.sub(z, self.sigma(z)), denom);
            let c1 = k.sub(z, k.mul(c2, w));
            out.push(self.down(c1)?);
            out.push(self.down(c2)?);
        }
        Ok(out)
    }

    pub fn from_coordinates(&self, c: &[Fq]) -> Matrix {
        let k = &self.big;
        let mut m = Matrix::zero(k, 3, 3);
        for (i, &ci) in c.iter().enumerate() {
            let e = self.embed[ci.code() as usize];
            let b = self.basis_matrix(i);
            for r in 0..3 {
                for s in 0..3 {
                    m.set(r, s, k.add(m.get(r, s), k.mul(e, b.get(r, s))));
                }
            }
        }
        m
    }

    /// Matrix over `F_q` of `A ↦ hᵀ A h^σ` for a 3×3 `h` over `F_{q²}`.
    pub fn action(&self, h: &Matrix) -> Result<Matrix> {
        let k = &self.big;
        let hs = Matrix::from_rows(k, (0..3).map(|i| h.row(i).iter().map(|&v| self.sigma(v)).collect()).collect())?;
        let ht = h.transpose();
        let cols =
            (0..9).map(|i| self.coordinates(&(&(&ht * &self.basis_matrix(i)) * &hs))).collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(&self.small, &cols)
    }
}

/// `g ↦` the action of `psi(g)` on `W` by `A ↦ psi(g)ᵀ A psi(g)^σ`. Because the transpose
/// sits on the left this reverses products: `rep(gh) = rep(h)·rep(g)`.
pub fn hermitian_rep(big: &Field, small: &Field, g: &Matrix) -> Result<Matrix> {
    let space = HermitianSpace::new(big, small)?;
    space.action(&psi(big, g)?)
}

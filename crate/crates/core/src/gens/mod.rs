//! Explicit `(2,3)`-generator pairs `x, y` of `Ω_n^ε(q)`.
//!
//! Dimensions 9, 11, 13, 17 use the determinant −1 form (family A); every other supported
//! dimension `n = 3m + 9 + r` (`m ≥ 1`, `r ∈ {0,1,2}`) uses the determinant 1 form (family B).
//! In both families `x = x₁x₂`, `y = y₁y₂` where `x₁, y₁` are permutation matrices on the
//! first `n − 9` (or fewer) coordinates and `x₂, y₂` embed a fixed 9×9 block in the last nine.

pub mod figures;
pub mod subspaces;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{Field, Fq};
use crate::forms::{gram_matrix, Eps, Family, OrthoSpace};
use crate::matrix::Matrix;
use crate::word::Commutator;

pub use figures::Figures;
pub use subspaces::{special_subspaces, SpecialSubspaces};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    A,
    B5,
    B6,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A => "A",
            Case::B5 => "B5",
            Case::B6 => "B6",
        })
    }
}

impl Case {
    pub fn family(self) -> Family {
        match self {
            Case::A => Family::A,
            _ => Family::B,
        }
    }
}

/// Case of a dimension, with `n = 3m + 9 + r` in family B.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTag {
    pub case: Case,
    pub m: usize,
    pub r: usize,
}

pub fn classify(n: usize) -> Result<CaseTag> {
    if [9, 11, 13, 17].contains(&n) {
        return Ok(CaseTag { case: Case::A, m: 0, r: 0 });
    }
    if n <= 8 || n == 10 || n == 14 {
        let reason = match n {
            0..=8 => "dimensions below 9 are outside this construction",
            10 => "dimension 10 is not covered by either generator family",
            _ => "dimension 14 = 4·3 + 2 lies outside the proven ranges (needs 4k+2 with k ≥ 4)",
        };
        return Err(Error::Unsupported { n, reason: reason.into() });
    }
    let m = (n - 9) / 3;
    let r = (n - 9) % 3;
    let case = if [12, 16, 20].contains(&n) { Case::B6 } else { Case::B5 };
    Ok(CaseTag { case, m, r })
}

/// Why a parameter fails admissibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "detail")]
pub enum AdmissibilityFailure {
    /// `F_p[a] ≠ F_q`.
    ProperSubfield,
    /// `−a` is not a square.
    MinusANonsquare,
    /// The dimension-specific polynomial vanishes at `a`.
    Exceptional(String),
    /// `F_p[a²] ≠ F_q`.
    SquareInProperSubfield,
    /// `a² ∈ {2, 3}`.
    SquareIsTwoOrThree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub failures: Vec<AdmissibilityFailure>,
}

impl Admissibility {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn poly_at(field: &Field, a: Fq, coeffs_desc: &[i64]) -> Fq {
    coeffs_desc.iter().fold(Fq::ZERO, |acc, &c| field.add(field.mul(acc, a), field.from_i64(c)))
}

pub fn admissible(n: usize, field: &Field, a: Fq) -> Result<Admissibility> {
    let tag = classify(n)?;
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let f = field.f();
    let mut failures = Vec::new();
    match tag.case {
        Case::A => {
            if field.subfield_degree(a) != f {
                failures.push(AdmissibilityFailure::ProperSubfield);
            }
            if !field.is_square(field.neg(a)) {
                failures.push(AdmissibilityFailure::MinusANonsquare);
            }
            let (label, value) = match n {
                9 => ("a^2 - a - 1", poly_at(field, a, &[1, -1, -1])),
                11 => {
                    let v = field.mul(poly_at(field, a, &[1, -1]), poly_at(field, a, &[1, 2, 1, 1]));
                    ("(a - 1)(a^3 + 2a^2 + a + 1)", v)
                }
                17 => ("a^4 + a^2 - a + 1", poly_at(field, a, &[1, 0, 1, -1, 1])),
                _ => ("", Fq::ONE),
            };
            if value.is_zero() {
                failures.push(AdmissibilityFailure::Exceptional(format!("{label} = 0")));
            }
        }
        Case::B5 => {
            if field.subfield_degree(a) != f {
                failures.push(AdmissibilityFailure::ProperSubfield);
            }
        }
        Case::B6 => {
            let a2 = field.mul(a, a);
            if field.subfield_degree(a2) != f {
                failures.push(AdmissibilityFailure::SquareInProperSubfield);
            }
            if a2 == field.from_i64(2) || a2 == field.from_i64(3) {
                failures.push(AdmissibilityFailure::SquareIsTwoOrThree);
            }
        }
    }
    Ok(Admissibility { failures })
}

/// Whether the counting bound on non-generating elements already guarantees an
/// admissible parameter for this `(n, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingBound {
    pub statement: String,
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
    /// The explicit witness used when the bound does not apply (or `q = p`).
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub n: usize,
    pub q: u32,
    pub case: Case,
    pub values: Vec<Fq>,
    pub bound: CountingBound,
}

/// Upper bound on the elements of `F_{p^f}` lying in a proper subfield.
fn proper_subfield_bound(p: i128, f: u32) -> i128 {
    p * (p.pow(f / 2) - 1) / (p - 1)
}

pub fn counting_bound(n: usize, field: &Field) -> Result<CountingBound> {
    let tag = classify(n)?;
    let p = field.p() as i128;
    let f = field.f();
    let q = p.pow(f);
    let nq = proper_subfield_bound(p, f);
    let (statement, lhs, rhs) = match tag.case {
        Case::A => ("(q-1)/2 - p(p^floor(f/2)-1)/(p-1) > 4", (q - 1) / 2 - nq, 4),
        Case::B5 => ("q - 1 - p(p^floor(f/2)-1)/(p-1) > 0", q - 1 - nq, 0),
        Case::B6 => ("q - 2p(p^floor(f/2)-1)/(p-1) > 1", q - 2 * nq, 1),
    };
    let holds = lhs > rhs;
    let witness = match (tag.case, f) {
        (Case::A, 1) => Some("q = p: a = -1".into()),
        (Case::B6, 1) => Some("q = p: a = 1".into()),
        (Case::B5, 1) => Some("q = p: every a generates".into()),
        (Case::A, 2) if p == 3 => Some("q = 9: a with minimal polynomial t^2 + 1".into()),
        _ => None,
    };
    Ok(CountingBound { statement: statement.into(), lhs, rhs, holds, witness })
}

/// Admissible parameters in canonical order (only the first unless `all`).
pub fn search_a(n: usize, field: &Field, all: bool) -> Result<SearchReport> {
    let tag = classify(n)?;
    let mut values = Vec::new();
    for a in field.units() {
        if admissible(n, field, a)?.ok() {
            values.push(a);
            if !all {
                break;
            }
        }
    }
    if values.is_empty() {
        return Err(Error::NoAdmissibleParameter { n, q: field.q() as u64 });
    }
    Ok(SearchReport { n, q: field.q(), case: tag.case, values, bound: counting_bound(n, field)? })
}

/// The deterministic default parameter for `(n, q)`.
pub fn default_a(n: usize, field: &Field) -> Result<Fq> {
    let tag = classify(n)?;
    let candidate = match (tag.case, field.f()) {
        (Case::A, 1) => Some(field.from_i64(-1)),
        // t is the class of the variable; F_9 is built on t^2 + 1
        (Case::A, 2) if field.p() == 3 => Some(field.generator()),
        (Case::B6, 1) => Some(Fq::ONE),
        _ => None,
    };
    match candidate {
        Some(a) if admissible(n, field, a)?.ok() => Ok(a),
        _ => Ok(search_a(n, field, false)?.values[0]),
    }
}

/// A generator pair together with its constituent factors.
#[derive(Clone, Debug)]
pub struct GenPair {
    pub n: usize,
    pub field: Field,
    pub a: Fq,
    pub tag: CaseTag,
    pub forced: bool,
    pub admissibility: Admissibility,
    pub space: OrthoSpace,
    pub x: Matrix,
    pub y: Matrix,
    pub x1: Matrix,
    pub x2: Matrix,
    pub y1: Matrix,
    pub y2: Matrix,
    /// Cycles of `x₁` and `y₁`, 1-based.
    pub x1_cycles: Vec<Vec<usize>>,
    pub y1_cycles: Vec<Vec<usize>>,
}

/// Permutation matrix of a product of disjoint cycles: `e_i ↦ e_{σ(i)}`.
pub fn cycles_matrix(field: &Field, n: usize, cycles: &[Vec<usize>]) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for c in cycles {
        for (k, &i) in c.iter().enumerate() {
            perm[i - 1] = c[(k + 1) % c.len()] - 1;
        }
    }
    Matrix::permutation(field, &perm)
}

fn family_a_cycles(n: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let x1 = match n {
        11 => vec![vec![1, 3], vec![2, 4]],
        13 => vec![vec![1, 2], vec![4, 5]],
        17 => vec![vec![1, 3], vec![2, 4], vec![5, 6], vec![8, 9]],
        _ => vec![],
    };
    let y1 = match n {
        13 => vec![vec![2, 3, 4]],
        17 => vec![vec![3, 4, 5], vec![6, 7, 8]],
        _ => vec![],
    };
    (x1, y1)
}

/// `ν₁ν₂` and `ν₃` for `n = 3m + 9 + r`.
pub fn family_b_cycles(n: usize, m: usize, r: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let even = n.is_multiple_of(2);
    let mut x1: Vec<Vec<usize>> = match (r, even) {
        (0, false) => vec![],
        (0, true) | (1, false) => vec![vec![1, 2]],
        (1, true) => vec![vec![1, 2], vec![3, 6]],
        (2, false) => vec![vec![1, 3], vec![2, 4]],
        _ => vec![vec![1, 3], vec![2, 4], vec![7, 10]],
    };
    x1.extend((0..m).map(|j| vec![3 * j + r + 3, 3 * j + r + 4]));
    let y1 = (0..m).map(|j| vec![3 * j + r + 1, 3 * j + r + 2, 3 * j + r + 3]).collect();
    (x1, y1)
}

fn embed_last9(field: &Field, n: usize, block: &Matrix) -> Matrix {
    Matrix::block_diag(&[&Matrix::identity(field, n - 9), block])
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Construction(what.into()))
    }
}

/// Builds `x, y` and verifies every structural property of the construction.
pub fn build_pair(n: usize, field: &Field, a: Fq, force: bool) -> Result<GenPair> {
    let tag = classify(n)?;
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let admissibility = admissible(n, field, a)?;
    if !admissibility.ok() && !force {
        return Err(Error::NotAdmissible(format!(
            "a = {} for n = {n}, q = {}: {:?}",
            field.fmt_elem(a),
            field.q(),
            admissibility.failures
        )));
    }
    let figs = Figures::load()?;
    let space = gram_matrix(tag.case.family(), n, field)?;
    let (xb, yb, (x1_cycles, y1_cycles)) = match tag.case {
        Case::A => (&figs.xbar, &figs.ybar, family_a_cycles(n)),
        _ => (&figs.xtilde, &figs.ytilde, family_b_cycles(n, tag.m, tag.r)),
    };
    let x2 = embed_last9(field, n, &Figures::matrix(xb, field, a)?);
    let y2 = embed_last9(field, n, &Figures::matrix(yb, field, a)?);
    let x1 = cycles_matrix(field, n, &x1_cycles);
    let y1 = cycles_matrix(field, n, &y1_cycles);
    check(x1_cycles.len() % 2 == 0, "x1 is an odd permutation")?;
    check(&x1 * &x2 == &x2 * &x1, "x1 and x2 do not commute")?;
    check(&y1 * &y2 == &y2 * &y1, "y1 and y2 do not commute")?;
    let x = &x1 * &x2;
    let y = &y1 * &y2;
    check((&x * &x).is_identity(), "x^2 != I")?;
    check(y.pow_u(3).is_identity() && !y.is_identity(), "y does not have order 3")?;
    check(space.preserves(&x) && space.preserves(&y), "generator does not preserve J")?;
    check(x.det()? == Fq::ONE && y.det()? == Fq::ONE, "generator determinant != 1")?;
    if tag.case != Case::A {
        // x̃ = diag(1, h, h^{-T}) with h ∈ SL_4
        let xt = Figures::matrix(xb, field, a)?;
        let h = Matrix::from_rows(field, (1..5).map(|i| xt.row(i)[1..5].to_vec()).collect())?;
        let ht = Matrix::from_rows(field, (5..9).map(|i| xt.row(i)[5..9].to_vec()).collect())?;
        check(h.det()? == Fq::ONE, "h is not in SL_4")?;
        check(ht == h.inverse()?.transpose(), "lower block is not h^{-T}")?;
    }
    if admissibility.ok() {
        check(space.in_omega(&x).ok() && space.in_omega(&y).ok(), "generator outside Ω")?;
    }
    Ok(GenPair {
        n,
        field: field.clone(),
        a,
        tag,
        forced: force,
        admissibility,
        space,
        x,
        y,
        x1,
        x2,
        y1,
        y2,
        x1_cycles,
        y1_cycles,
    })
}

/// Commutator orientation under which `[x,y]^24` takes the displayed block form.
/// Both orientations are tried by the checks; this is the one they select.
pub const TAU_CONVENTION: Commutator = Commutator::InverseFirst;

impl GenPair {
    pub fn eps(&self) -> Eps {
        self.space.eps()
    }

    pub fn commutator(&self, convention: Commutator) -> Result<Matrix> {
        convention.apply(&self.x, &self.y)
    }

    /// `τ = [x,y]^24` (family B only).
    pub fn tau(&self, convention: Commutator) -> Result<Matrix> {
        if self.tag.case == Case::A {
            return Err(Error::WrongCase("τ is defined for the second family only".into()));
        }
        Ok(self.commutator(convention)?.pow_u(24))
    }

    /// Basis `e_{n−8}, …, e_n` of `S₉`.
    pub fn s9_basis(&self) -> Vec<crate::matrix::Vector> {
        (self.n - 8..=self.n).map(|i| crate::matrix::unit_vector(self.n, i)).collect()
    }

    /// Number of transpositions in `x₁`.
    pub fn transposition_count(&self) -> usize {
        self.x1_cycles.len()
    }

    /// The 3×3 block `x₃` in the last three coordinates (family A).
    pub fn x3(&self) -> Matrix {
        let n = self.n;
        Matrix::from_rows(&self.field, (n - 3..n).map(|i| self.x.row(i)[n - 3..].to_vec()).collect()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(classify(9).unwrap().case, Case::A);
        assert_eq!(classify(15).unwrap(), CaseTag { case: Case::B5, m: 2, r: 0 });
        assert_eq!(classify(12).unwrap(), CaseTag { case: Case::B6, m: 1, r: 0 });
        assert_eq!(classify(20).unwrap().case, Case::B6);
        assert_eq!(classify(25).unwrap(), CaseTag { case: Case::B5, m: 5, r: 1 });
        for n in [0, 5, 8, 10, 14] {
            assert!(matches!(classify(n), Err(Error::Unsupported { .. })), "{n}");
        }
    }

    #[test]
    fn admissibility_examples() {
        let k = Field::new(7, 1).unwrap();
        assert!(admissible(9, &k, k.from_i64(-1)).unwrap().ok());
        let k3 = Field::new(3, 1).unwrap();
        assert_eq!(admissible(9, &k3, Fq::ONE).unwrap().failures, vec![AdmissibilityFailure::MinusANonsquare]);
        assert!(admissible(12, &k, Fq::ONE).unwrap().ok());
        assert_eq!(admissible(9, &k, Fq::ZERO).unwrap_err(), Error::ZeroParameter);
        let k13 = Field::new(13, 1).unwrap();
        assert_eq!(
            admissible(12, &k13, k13.from_i64(4)).unwrap().failures,
            vec![AdmissibilityFailure::SquareIsTwoOrThree]
        );
    }

    #[test]
    fn search_over_f9() {
        let k = Field::from_order(9).unwrap();
        let rep = search_a(9, &k, true).unwrap();
        let t = k.generator();
        assert!(rep.values.contains(&t));
        assert!(!rep.bound.holds);
        assert!(rep.bound.witness.is_some());
        assert_eq!(default_a(9, &k).unwrap(), t);
    }

    #[test]
    fn transposition_counts_are_even() {
        for n in (12..60).filter(|&n| n != 14 && ![13, 17].contains(&n)) {
            let t = classify(n).unwrap();
            let (x1, y1) = family_b_cycles(n, t.m, t.r);
            assert_eq!(x1.len() % 2, 0, "n = {n}");
            let max = x1.iter().chain(&y1).flatten().max().copied().unwrap_or(0);
            assert!(max <= n - 8, "n = {n}");
        }
    }

    #[test]
    fn small_pair_builds() {
        let k = Field::new(3, 1).unwrap();
        let p = build_pair(9, &k, k.from_i64(2), false).unwrap();
        assert!(p.space.in_omega(&p.x).ok());
        assert!(build_pair(9, &k, Fq::ONE, false).is_err());
        let forced = build_pair(9, &k, Fq::ONE, true).unwrap();
        assert!(!forced.space.in_omega(&forced.x).ok());
    }
}

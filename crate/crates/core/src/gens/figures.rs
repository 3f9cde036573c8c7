//! The fixed 9×9 generator blocks and the 8×8 block of `τ`, stored as a data file whose
//! SHA-256 is pinned below so an accidental edit is caught at load time.
//!
//! Entries are Laurent monomials in the parameter `a` with rational coefficients, written
//! as printed: `"0"`, `"-1/2"`, `"2/a"`, `"a/2"`, `"-32a^2"`.

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ff::{Field, Fq};
use crate::matrix::Matrix;

pub const FIGURES_JSON: &str = include_str!("../../data/figures.json");
pub const FIGURES_SHA256: &str = "ec980fbb073e07a7b6ca6a6be0cabb8888393ada7ae3cc6701c758e8fdd34966";

#[derive(Debug, Deserialize)]
struct Raw {
    xbar: Vec<Vec<String>>,
    ybar: Vec<Vec<String>>,
    xtilde: Vec<Vec<String>>,
    ytilde: Vec<Vec<String>>,
    theta0: Vec<Vec<String>>,
    theta_correction: Vec<(usize, usize, i64)>,
}

/// `num/den · a^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub num: i64,
    pub den: i64,
    pub exp: i32,
}

impl Monomial {
    pub fn parse(s: &str) -> Result<Monomial> {
        let bad = || Error::Data(format!("bad figure entry '{s}'"));
        let mut rest = s.trim();
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        let digits = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let mut num: i64 = if digits == 0 { 1 } else { rest[..digits].parse().map_err(|_| bad())? };
        rest = &rest[digits..];
        let mut exp = 0;
        if let Some(r) = rest.strip_prefix('a') {
            exp = 1;
            rest = r;
            if let Some(r) = rest.strip_prefix('^') {
                let d = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                exp = r[..d].parse().map_err(|_| bad())?;
                rest = &r[d..];
            }
        } else if digits == 0 {
            return Err(bad());
        }
        let mut den = 1;
        if let Some(r) = rest.strip_prefix('/') {
            if r == "a" {
                exp -= 1;
            } else {
                den = r.parse().map_err(|_| bad())?;
            }
            rest = "";
        }
        if !rest.is_empty() || den == 0 {
            return Err(bad());
        }
        num *= sign;
        Ok(Monomial { num, den, exp })
    }

    pub fn eval(&self, field: &Field, a: Fq) -> Result<Fq> {
        let den = field.inv(field.from_i64(self.den)).ok_or(Error::DivisionByZero)?;
        let pow = field.pow_i(a, self.exp as i64).ok_or(Error::DivisionByZero)?;
        Ok(field.mul(field.mul(field.from_i64(self.num), den), pow))
    }
}

/// Parsed figure data.
#[derive(Debug)]
pub struct Figures {
    pub xbar: Vec<Vec<Monomial>>,
    pub ybar: Vec<Vec<Monomial>>,
    pub xtilde: Vec<Vec<Monomial>>,
    pub ytilde: Vec<Vec<Monomial>>,
    pub theta0: Vec<Vec<Monomial>>,
    /// 1-based `(row, col, coefficient)` added to `theta0` in dimensions 12, 16, 20.
    pub theta_correction: Vec<(usize, usize, i64)>,
}

pub fn checksum(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn grid(rows: &[Vec<String>], size: usize) -> Result<Vec<Vec<Monomial>>> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(Error::Data(format!("expected a {size}x{size} block")));
    }
    rows.iter().map(|r| r.iter().map(|e| Monomial::parse(e)).collect()).collect()
}

impl Figures {
    pub fn load() -> Result<Figures> {
        Figures::from_text(FIGURES_JSON, FIGURES_SHA256)
    }

    pub fn from_text(text: &str, expected_sha256: &str) -> Result<Figures> {
        let got = checksum(text);
        if got != expected_sha256 {
            return Err(Error::Data(format!("figure data checksum {got} != {expected_sha256}")));
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        Ok(Figures {
            xbar: grid(&raw.xbar, 9)?,
            ybar: grid(&raw.ybar, 9)?,
            xtilde: grid(&raw.xtilde, 9)?,
            ytilde: grid(&raw.ytilde, 9)?,
            theta0: grid(&raw.theta0, 8)?,
            theta_correction: raw.theta_correction,
        })
    }

    pub fn matrix(block: &[Vec<Monomial>], field: &Field, a: Fq) -> Result<Matrix> {
        let rows = block
            .iter()
            .map(|r| r.iter().map(|m| m.eval(field, a)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, rows)
    }

    /// The expected 8×8 lower-right block of `τ`, with or without the correction.
    pub fn theta(&self, field: &Field, a: Fq, corrected: bool) -> Result<Matrix> {
        let mut t = Figures::matrix(&self.theta0, field, a)?;
        if corrected {
            for &(i, j, c) in &self.theta_correction {
                let cur = t.get(i - 1, j - 1);
                t.set(i - 1, j - 1, field.add(cur, field.from_i64(c)));
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials() {
        let m = |s| Monomial::parse(s).unwrap();
        assert_eq!(m("0"), Monomial { num: 0, den: 1, exp: 0 });
        assert_eq!(m("-1/2"), Monomial { num: -1, den: 2, exp: 0 });
        assert_eq!(m("2/a"), Monomial { num: 2, den: 1, exp: -1 });
        assert_eq!(m("a/2"), Monomial { num: 1, den: 2, exp: 1 });
        assert_eq!(m("-32a^2"), Monomial { num: -32, den: 1, exp: 2 });
        assert_eq!(m("a"), Monomial { num: 1, den: 1, exp: 1 });
        for bad in ["", "b", "2x", "1/0", "a^", "--1"] {
            assert!(Monomial::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn data_loads_and_checksum_guards() {
        let f = Figures::load().unwrap();
        assert_eq!(f.theta_correction.len(), 6);
        let tampered = FIGURES_JSON.replacen("\"a/2\"", "\"a/3\"", 1);
        assert!(matches!(Figures::from_text(&tampered, FIGURES_SHA256), Err(Error::Data(_))));
    }

    #[test]
    fn evaluation_needs_invertible_a() {
        let k = Field::new(5, 1).unwrap();
        let f = Figures::load().unwrap();
        assert_eq!(Figures::matrix(&f.xbar, &k, Fq::ZERO).unwrap_err(), Error::DivisionByZero);
        let x = Figures::matrix(&f.xbar, &k, k.from_i64(2)).unwrap();
        assert_eq!(x.get(6, 8), Fq::ONE);
        assert_eq!(x.get(8, 6), Fq::ONE);
    }
}

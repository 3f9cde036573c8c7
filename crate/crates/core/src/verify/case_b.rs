//! Identities for the second family: the block form of `τ = [x,y]^24`, the action of
//! `[x,y]` on the coordinate subspaces, and the closed forms on `S₉ = ⟨e_{n−8}, …, e_n⟩`.

use super::{laurent, pair_params, wrong_case, Recorder, VerificationReport};
use crate::error::Result;
use crate::ff::{Field, Fq};
use crate::gens::{cycles_matrix, special_subspaces, Case, Figures, GenPair, TAU_CONVENTION};
use crate::matrix::{span_basis, Matrix, Vector};
use crate::poly::Poly;
use crate::word::Commutator;

/// `y` and `τ` restricted to `S₉` in the basis `e_{n−8}, …, e_n`.
pub struct Restricted {
    pub y: Matrix,
    pub tau: Matrix,
}

impl Restricted {
    pub fn new(pair: &GenPair, convention: Commutator) -> Result<Restricted> {
        let s9 = pair.s9_basis();
        Ok(Restricted { y: pair.y.restrict(&s9)?, tau: pair.tau(convention)?.restrict(&s9)? })
    }

    /// `s = e_{n−8} − e_{n−7}` in `S₉` coordinates.
    pub fn s(&self) -> Vector {
        let k = self.y.field();
        let mut v = vec![Fq::ZERO; 9];
        v[0] = Fq::ONE;
        v[1] = k.neg(Fq::ONE);
        v
    }

    fn words(&self, which: u8) -> Vec<Matrix> {
        let (y, t) = (&self.y, &self.tau);
        let i = Matrix::identity(y.field(), 9);
        let y2 = y * y;
        let t2 = t * t;
        let ty2 = t * &y2;
        let t2y2 = &t2 * &y2;
        let mut out = vec![i, y.clone(), y2.clone(), ty2.clone(), t2y2.clone(), y * &ty2];
        if which == 1 {
            out.extend([&y2 * &ty2, y * &t2y2, &y2 * &t2y2]);
        } else {
            out.extend([y * &t2y2, &ty2 * &ty2, &ty2 * &t2y2]);
        }
        out
    }

    /// Columns: images of `s` under the elements listed for `M₁` (`which = 1`) or `M₂`.
    pub fn m(&self, which: u8) -> Matrix {
        let s = self.s();
        let cols: Vec<Vector> = self.words(which).iter().map(|g| g.apply(&s)).collect();
        Matrix::from_columns(self.y.field(), &cols).expect("nine columns of length nine")
    }
}

fn prod(field: &Field, factors: &[Fq]) -> Fq {
    factors.iter().fold(Fq::ONE, |acc, &f| field.mul(acc, f))
}

/// Closed forms for `det M₁` and `det M₂`.
pub fn predicted_dets(field: &Field, case: Case, a: Fq) -> (Fq, Fq) {
    let c = field.neg(field.pow(field.from_i64(2), 35));
    let l = |t: &[(i64, i64)]| laurent(field, a, t);
    match case {
        Case::B6 => {
            let common = prod(field, &[c, l(&[(1, 6)]), l(&[(1, 2), (-2, 0)])]);
            (field.mul(common, l(&[(4, 4), (-13, 2), (16, 0)])), field.mul(common, l(&[(28, 4), (-83, 2), (-16, 0)])))
        }
        _ => {
            let common = field.mul(c, l(&[(1, 10)]));
            (field.mul(common, l(&[(4, 2), (3, 0)])), field.mul(common, l(&[(28, 2), (-3, 0)])))
        }
    }
}

/// `(word on S₉, closed form)` for the restricted traces.
pub fn predicted_traces(field: &Field, case: Case, a: Fq) -> Vec<(&'static str, Fq)> {
    let l = |t: &[(i64, i64)]| laurent(field, a, t);
    match case {
        Case::B6 => vec![
            ("(yt)^2", l(&[(-2176, 4), (6784, 2), (-224, 0)])),
            ("(y^2t)^2", l(&[(1920, 4), (-5504, 2), (-288, 0)])),
            ("yt", field.from_i64(-16)),
        ],
        _ => vec![
            ("(yt)^2", l(&[(-2176, 4), (128, 2)])),
            ("(y^2t)^2", l(&[(1920, 4), (128, 2)])),
            ("y^2t^2(yt)^2", l(&[(-49152, 6), (16384, 5), (3840, 4), (256, 2)])),
        ],
    }
}

/// In characteristic 3, `charpoly((yτ)³) = (t − 1) f(t)` with `f` as below.
pub fn predicted_cube_factor(field: &Field, case: Case, a: Fq) -> Poly {
    let l = |t: &[(i64, i64)]| laurent(field, a, t);
    let one = Fq::ONE;
    let m1 = field.neg(one);
    // coefficients t^0 .. t^8
    let coeffs = match case {
        Case::B6 => vec![
            one,
            m1,
            l(&[(-1, 12), (1, 6), (-1, 0)]),
            l(&[(-1, 12)]),
            l(&[(1, 6), (-1, 0)]),
            l(&[(-1, 12)]),
            l(&[(-1, 12), (1, 6), (-1, 0)]),
            m1,
            one,
        ],
        _ => vec![
            one,
            one,
            l(&[(-1, 12), (-1, 6), (1, 0)]),
            l(&[(-1, 12), (1, 0)]),
            l(&[(-1, 6), (1, 0)]),
            l(&[(-1, 12), (1, 0)]),
            l(&[(-1, 12), (-1, 6), (1, 0)]),
            one,
            one,
        ],
    };
    Poly::new(field, coeffs)
}

fn fmt_vecs(field: &Field, basis: &[Vector]) -> String {
    let vs: Vec<String> = basis
        .iter()
        .map(|v| format!("({})", v.iter().map(|&c| field.fmt_elem(c)).collect::<Vec<_>>().join(",")))
        .collect();
    format!("<{}>", vs.join(", "))
}

/// Lower-right 8×8 block of `τ` and whether the rest of `τ` is the identity.
fn theta_block(tau: &Matrix) -> (Matrix, bool) {
    let n = tau.rows();
    let th =
        Matrix::from_rows(tau.field(), (n - 8..n).map(|i| tau.row(i)[n - 8..].to_vec()).collect()).expect("8x8 block");
    let rest = (0..n).all(|i| {
        (0..n).all(|j| {
            if i >= n - 8 && j >= n - 8 {
                return true;
            }
            tau.get(i, j) == if i == j { Fq::ONE } else { Fq::ZERO }
        })
    });
    (th, rest)
}

pub fn verify_case_b(pair: &GenPair) -> Result<VerificationReport> {
    let case = pair.tag.case;
    if case == Case::A {
        return Err(wrong_case("the second-family battery needs n >= 12, n != 13, 14, 17"));
    }
    let k = &pair.field;
    let (n, a) = (pair.n, pair.a);
    let a2 = k.mul(a, a);
    let mut rec = Recorder::new(pair_params(pair));
    let figs = Figures::load()?;
    let corrected = case == Case::B6;
    let want_theta = figs.theta(k, a, corrected)?;
    let label = if corrected { "corrected" } else { "printed" };

    // τ and its block form, under both orientations of the commutator
    let tau = pair.tau(TAU_CONVENTION)?;
    for conv in [TAU_CONVENTION, TAU_CONVENTION.other()] {
        let t = pair.tau(conv)?;
        let (th, rest) = theta_block(&t);
        let ok = rest && th == want_theta;
        let name = format!("tau = diag(I, theta) with theta the {label} block [{}]", conv.describe());
        if conv == TAU_CONVENTION {
            rec.eq(name, "tau-block", true, ok);
        } else {
            rec.skip(name, "tau-block", format!("other commutator orientation, recorded only: matches = {ok}"));
        }
    }
    let unipotent = Poly::linear(k, Fq::ONE).pow(n as u64);
    rec.eq("charpoly(tau) = (t-1)^n", "tau-unipotent", unipotent.to_string(), tau.charpoly()?.to_string());
    let (th, _) = theta_block(&tau);
    rec.eq(
        "minpoly(theta) = (t-1)^3",
        "tau-unipotent",
        Poly::linear(k, Fq::ONE).pow(3).to_string(),
        th.minpoly()?.to_string(),
    );
    let r = Restricted::new(pair, TAU_CONVENTION)?;
    let exceptional = case == Case::B6 && a2 == k.from_i64(3);
    rec.eq("dim fix(tau|S9)", "tau-fixed-space", if exceptional { 7 } else { 5 }, r.tau.fixed_dim());

    // permutation action of [x,y] on the coordinate subspaces
    let comm = pair.commutator(TAU_CONVENTION)?;
    if n == 12 {
        rec.skip("[x,y] on A, B", "commutator-action", "n = 12 has no summands outside S9");
    } else {
        let sub = special_subspaces(pair)?;
        for summand in &sub.a {
            let inside: Vec<Vec<usize>> =
                sub.a_cycles.iter().filter(|c| c.iter().all(|i| summand.contains(i))).cloned().collect();
            check_summand(&mut rec, &comm, &sub.basis(summand), summand, &inside, 24);
        }
        for (b, cyc) in sub.b.iter().zip(sub.b_cycles()) {
            check_summand(&mut rec, &comm, &sub.basis(b), b, &[cyc], 3);
        }
        let c_basis = sub.basis(&sub.c);
        rec.eq("[x,y] leaves C invariant", "commutator-action", true, comm.restrict(&c_basis).is_ok());
    }

    // the eigenvector s of [y,τ] on S₉
    let s = r.s();
    for conv in [TAU_CONVENTION, TAU_CONVENTION.other()] {
        let name = format!("V_1([y,tau]|S9) = <s> [{}]", conv.describe());
        if exceptional {
            rec.skip(name, "commutator-eigenvector", "a^2 = 3 in dimensions 12, 16, 20");
            continue;
        }
        let got = conv.apply(&r.y, &r.tau)?.eigenspace(Fq::ONE)?;
        let want = span_basis(k, std::slice::from_ref(&s));
        if conv == TAU_CONVENTION {
            rec.eq(name, "commutator-eigenvector", fmt_vecs(k, &want), fmt_vecs(k, &got));
        } else {
            rec.skip(
                name,
                "commutator-eigenvector",
                format!("other commutator orientation, recorded only: {}", fmt_vecs(k, &got)),
            );
        }
    }

    // determinants of M₁, M₂
    let (d1, d2) = predicted_dets(k, case, a);
    let tag = if case == Case::B6 { "span-determinants-6" } else { "span-determinants" };
    rec.elem(k, "det M1", tag, d1, r.m(1).det()?);
    rec.elem(k, "det M2", tag, d2, r.m(2).det()?);

    // restricted traces
    let y = &r.y;
    let t = &r.tau;
    let yt = y * t;
    let y2t = &(y * y) * t;
    for (word, want) in predicted_traces(k, case, a) {
        let g = match word {
            "(yt)^2" => &yt * &yt,
            "(y^2t)^2" => &y2t * &y2t,
            "yt" => yt.clone(),
            _ => &(&(&(y * y) * t) * t) * &(&yt * &yt),
        };
        rec.elem(k, format!("tr({word}|S9)"), "restricted-traces", want, g.trace());
    }
    if k.p() == 3 {
        let f = predicted_cube_factor(k, case, a);
        let want = Poly::linear(k, Fq::ONE).mul(&f);
        rec.eq(
            "charpoly((yt)^3|S9) = (t-1) f(t)",
            "cube-charpoly",
            want.to_string(),
            yt.pow_u(3).charpoly()?.to_string(),
        );
        rec.elem(k, "f(1) = -a^12", "cube-charpoly", laurent(k, a, &[(-1, 12)]), f.eval(Fq::ONE));
        rec.elem(k, "f(-1) = 1", "cube-charpoly", Fq::ONE, f.eval(k.from_i64(-1)));
    }
    Ok(rec.finish())
}

fn check_summand(
    rec: &mut Recorder,
    comm: &Matrix,
    basis: &[Vector],
    coords: &[usize],
    cycles: &[Vec<usize>],
    order: u64,
) {
    let k = comm.field();
    let name = format!("[x,y] on <e_i : i in {coords:?}>");
    let Some(m) = rec.attempt(&name, "commutator-action", comm.restrict(basis)) else {
        return;
    };
    // cycles relabelled to positions inside the summand
    let local: Vec<Vec<usize>> =
        cycles.iter().map(|c| c.iter().map(|i| coords.iter().position(|j| j == i).unwrap() + 1).collect()).collect();
    let want = cycles_matrix(k, coords.len(), &local);
    rec.eq(format!("{name} permutes by {cycles:?}"), "commutator-action", true, m == want);
    rec.eq(format!("([x,y] on {coords:?})^{order} = I"), "commutator-action", true, m.pow_u(order).is_identity());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens::{build_pair, default_a};

    #[test]
    fn fifteen_seven_three_passes() {
        let k = Field::new(7, 1).unwrap();
        let r = verify_case_b(&build_pair(15, &k, k.from_i64(3), false).unwrap()).unwrap();
        assert!(r.passed(), "{}", r.failure_summary());
    }

    #[test]
    fn twelve_five_one_uses_second_determinants() {
        let k = Field::new(5, 1).unwrap();
        let r = verify_case_b(&build_pair(12, &k, Fq::ONE, false).unwrap()).unwrap();
        assert!(r.passed(), "{}", r.failure_summary());
        assert!(r.checks.iter().any(|c| c.paper_ref == "span-determinants-6"));
    }

    #[test]
    fn exceptional_square_has_larger_fixed_space() {
        let k = Field::new(13, 1).unwrap();
        let r = verify_case_b(&build_pair(12, &k, k.from_i64(4), true).unwrap()).unwrap();
        let c = r.checks.iter().find(|c| c.name == "dim fix(tau|S9)").unwrap();
        assert_eq!(c.actual, "7");
        assert!(r.passed(), "{}", r.failure_summary());
    }

    #[test]
    fn trace_difference_is_two_to_the_twelve_a_fourth() {
        for q in [11u64, 13, 25, 27] {
            let k = Field::from_order(q).unwrap();
            for a in k.units().take(6) {
                let t = predicted_traces(&k, Case::B5, a);
                let diff = k.sub(t[1].1, t[0].1);
                assert_eq!(diff, laurent(&k, a, &[(4096, 4)]));
            }
        }
    }

    #[test]
    fn default_parameters_pass() {
        for q in [3u64, 5, 9] {
            let k = Field::from_order(q).unwrap();
            for n in [12, 15, 16, 18, 21] {
                let p = build_pair(n, &k, default_a(n, &k).unwrap(), false).unwrap();
                let r = verify_case_b(&p).unwrap();
                assert!(r.passed(), "n={n} q={q}\n{}", r.failure_summary());
            }
        }
    }
}

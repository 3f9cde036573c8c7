//! Identities for the first family (`n ∈ {9, 11, 13, 17}`).

use std::collections::VecDeque;

use super::{laurent, pair_params, wrong_case, Recorder, VerificationReport};
use crate::error::Result;
use crate::ff::{Field, Fq};
use crate::gens::{Case, GenPair, TAU_CONVENTION};
use crate::matrix::{span_basis, unit_vector, Matrix, Vector};
use crate::poly::Poly;
use crate::word::WordEnv;

/// `(word, k)`: the fixed space of the word is `⟨e_k⟩`.
pub fn fixed_line_word(n: usize) -> Option<(&'static str, usize)> {
    match n {
        9 => Some(("[x,y]", 1)),
        11 => Some(("(xy^2)^3xy", 3)),
        13 => Some(("(xy^2)^2xy", 2)),
        17 => Some(("(xy^2)^6xy", 6)),
        _ => None,
    }
}

/// `(ς_n, κ_n)` in the two commutator-trace formulas.
pub fn trace_constants(n: usize) -> (i64, i64) {
    match n {
        9 => (1, 3),
        11 => (0, 2),
        _ => (0, 4),
    }
}

/// Expected `minpoly((xy)^{n−2})`, selected by whether `Σ_{j=0}^{2n−5} (−a)^j` vanishes.
pub fn predicted_minpoly(field: &Field, n: usize, a: Fq) -> (bool, Poly) {
    let e = n as i64 - 2;
    let s = (0..=2 * n as i64 - 5).fold(Fq::ZERO, |acc, j| field.add(acc, field.pow_i(field.neg(a), j).unwrap()));
    let one = Poly::linear(field, Fq::ONE);
    let plus = Poly::linear(field, field.neg(field.pow_i(a, e).unwrap()));
    let minus = Poly::linear(field, field.neg(field.pow_i(a, -e).unwrap()));
    if s.is_zero() {
        (true, one.mul(&plus))
    } else {
        (false, one.mul(&plus).mul(&minus))
    }
}

/// Coordinates reachable from `e_1` by repeatedly applying `x`, `y`, `y²` when the image
/// is exactly another standard basis vector.
pub fn basis_orbit(x: &Matrix, y: &Matrix) -> Vec<usize> {
    let n = x.rows();
    let y2 = y * y;
    let mut seen = vec![false; n + 1];
    seen[1] = true;
    let mut queue = VecDeque::from([1]);
    while let Some(j) = queue.pop_front() {
        let e = unit_vector(n, j);
        for g in [x, y, &y2] {
            let img = g.apply(&e);
            let support: Vec<usize> = (0..n).filter(|&i| !img[i].is_zero()).collect();
            if let [i] = support[..] {
                if img[i] == Fq::ONE && !seen[i + 1] {
                    seen[i + 1] = true;
                    queue.push_back(i + 1);
                }
            }
        }
    }
    (1..=n).filter(|&i| seen[i]).collect()
}

fn fmt_span(field: &Field, basis: &[Vector]) -> String {
    let vs: Vec<String> = basis
        .iter()
        .map(|v| format!("({})", v.iter().map(|&c| field.fmt_elem(c)).collect::<Vec<_>>().join(",")))
        .collect();
    format!("<{}>", vs.join(", "))
}

fn line(n: usize, k: usize) -> Vec<Vector> {
    vec![unit_vector(n, k)]
}

pub fn verify_case_a(pair: &GenPair) -> Result<VerificationReport> {
    if pair.tag.case != Case::A {
        return Err(wrong_case("the first-family battery needs n ∈ {9, 11, 13, 17}"));
    }
    let k = &pair.field;
    let (n, a) = (pair.n, pair.a);
    let mut rec = Recorder::new(pair_params(pair));
    let env = WordEnv::new(&pair.x, &pair.y, TAU_CONVENTION);
    let (x, y) = (&pair.x, &pair.y);
    let xy = x * y;
    let ainv = k.inv(a).expect("a is nonzero");

    // characteristic polynomial and trace of xy
    let mut cyc = vec![Fq::ZERO; n - 1];
    cyc[0] = k.neg(Fq::ONE);
    cyc[n - 2] = Fq::ONE;
    let want = Poly::linear(k, k.neg(a)).mul(&Poly::linear(k, k.neg(ainv))).mul(&Poly::new(k, cyc));
    if let Some(got) = rec.attempt("charpoly(xy)", "charpoly-xy", xy.charpoly()) {
        rec.eq("charpoly(xy)", "charpoly-xy", want.to_string(), got.to_string());
    }
    rec.elem(k, "tr(xy) = -(a + 1/a)", "trace-xy", k.neg(k.add(a, ainv)), xy.trace());

    // (xy)^{n-2}
    let h = xy.pow_u(n as u64 - 2);
    let (vanishes, want) = predicted_minpoly(k, n, a);
    if let Some(got) = rec.attempt("minpoly((xy)^(n-2))", "minpoly-power", h.minpoly()) {
        let branch = if vanishes { "sum vanishes" } else { "sum nonzero" };
        rec.eq(format!("minpoly((xy)^(n-2)) [{branch}]"), "minpoly-power", want.to_string(), got.to_string());
    }
    rec.eq("(xy)^(n-2) != I", "bireflection", false, h.is_identity());
    rec.eq("dim fix((xy)^(n-2)) = n-2", "bireflection", n - 2, h.fixed_dim());

    // transitivity on e_1..e_{n-3}
    let reached = basis_orbit(x, y);
    let missing: Vec<usize> = (1..=n - 3).filter(|i| !reached.contains(i)).collect();
    rec.push(
        "e_1 reaches e_k for k <= n-3",
        "transitivity",
        missing.is_empty(),
        format!("e_1..e_{}", n - 3),
        if missing.is_empty() { format!("reached {reached:?}") } else { format!("missing {missing:?}") },
    );

    // fixed line of g_n
    let (word, e) = fixed_line_word(n).expect("first-family dimension");
    let name = format!("V_1({word}) = <e_{e}>");
    if !pair.admissibility.ok() {
        rec.skip(name, "fixed-line", "the fixed line is only claimed for admissible parameters");
    } else if let Some(g) = rec.attempt(&name, "fixed-line", env.eval_str(word)) {
        let got = g.eigenspace(Fq::ONE)?;
        rec.eq(name, "fixed-line", fmt_span(k, &line(n, e)), fmt_span(k, &got));
        // fixed spaces of g^T and g correspond through J^{-1}
        let jinv = pair.space.gram().inverse()?;
        let via_transpose: Vec<Vector> = g.transpose().eigenspace(Fq::ONE)?.iter().map(|v| jinv.apply(v)).collect();
        rec.eq(
            format!("J^-1 V_1({word}^T) = V_1({word})"),
            "fixed-line-complement",
            fmt_span(k, &got),
            fmt_span(k, &span_basis(k, &via_transpose)),
        );
    }

    // commutator traces
    let c = pair.commutator(TAU_CONVENTION)?;
    let (varsigma, kappa) = trace_constants(n);
    let base = laurent(k, a, &[(1, 0), (1, 2), (1, -2)]);
    rec.elem(k, "tr([x,y]) = 1 + a^2 + a^-2 + s_n", "commutator-traces", k.add(base, k.from_i64(varsigma)), c.trace());
    let want2 = k.sub(k.mul(base, base), k.add(k.mul(k.from_i64(4), a), k.from_i64(kappa)));
    rec.elem(k, "tr([x,y]^2) = (1 + a^2 + a^-2)^2 - 4a - k_n", "commutator-traces", want2, (&c * &c).trace());

    // vectors used to finish the irreducibility argument
    let ev = |i| unit_vector(n, i);
    let y2 = y * y;
    let lhs: Vector = y.apply(&ev(n - 3)).iter().zip(ev(n - 3)).map(|(&u, v)| k.add(u, v)).collect();
    let rhs: Vector = ev(n - 2).iter().map(|&v| k.mul(k.from_i64(-2), v)).collect();
    rec.eq("y e_(n-3) + e_(n-3) = -2 e_(n-2)", "spanning-vectors", fmt_span(k, &[rhs]), fmt_span(k, &[lhs]));
    rec.eq(
        "y^2 e_(n-5) = e_(n-1)",
        "spanning-vectors",
        fmt_span(k, &[ev(n - 1)]),
        fmt_span(k, &[y2.apply(&ev(n - 5))]),
    );
    let half = k.neg(k.inv(k.from_i64(2)).unwrap());
    let rhs: Vector = ev(n).iter().map(|&v| k.mul(half, v)).collect();
    rec.eq("y^2 e_(n-2) = -1/2 e_n", "spanning-vectors", fmt_span(k, &[rhs]), fmt_span(k, &[y2.apply(&ev(n - 2))]));
    rec.elem(
        k,
        "e_(n-3)^T J y e_(n-3) = -1",
        "non-monomial",
        k.from_i64(-1),
        pair.space.bilinear(&ev(n - 3), &y.apply(&ev(n - 3))),
    );

    if n == 9 {
        nine_extras(&mut rec, pair, &env, &c)?;
    }
    Ok(rec.finish())
}

/// Additional values used in dimension 9.
fn nine_extras(rec: &mut Recorder, pair: &GenPair, env: &WordEnv, c: &Matrix) -> Result<()> {
    let k = &pair.field;
    let a = pair.a;
    let a2 = k.mul(a, a);
    let ainv2 = k.inv(a2).unwrap();
    let s = k.add(a2, Fq::ONE);
    rec.elem(k, "tr([x,y]) = (a^2+1)^2/a^2", "nine-traces", k.mul(k.mul(s, s), ainv2), c.trace());
    let t = k.add(s, a);
    let want = k.mul(k.from_i64(-8), k.mul(k.mul(t, t), ainv2));
    rec.elem(k, "charpoly([x,y]) at -1 = -8(a^2+a+1)^2/a^2", "nine-traces", want, c.charpoly()?.eval(k.from_i64(-1)));
    let xy2 = env.eval_str("xy^2")?;
    rec.elem(k, "tr(xy^2) = -(a + 1/a)", "nine-traces", k.neg(k.add(a, k.inv(a).unwrap())), xy2.trace());
    if s.is_zero() {
        rec.elem(k, "tr((xy)^3y) = 1 when a^2 = -1", "nine-traces", Fq::ONE, env.eval_str("(xy)^3y")?.trace());
        if k.p() != 5 {
            let c2 = c * c;
            rec.eq(
                "V_1([x,y]^2) = <e_1> when a^2 = -1",
                "nine-traces",
                fmt_span(k, &line(9, 1)),
                fmt_span(k, &c2.eigenspace(Fq::ONE)?),
            );
            let want = k.sub(k.mul(k.from_i64(-4), a), k.from_i64(2));
            rec.elem(k, "tr([x,y]^2) = -4a - 2 when a^2 = -1", "nine-traces", want, c2.trace());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens::build_pair;

    #[test]
    fn trace_of_xy_vanishes_at_9_5_2() {
        let k = Field::new(5, 1).unwrap();
        let p = build_pair(9, &k, k.from_i64(2), true).unwrap();
        assert!((&p.x * &p.y).trace().is_zero());
    }

    #[test]
    fn nine_selects_first_constants() {
        assert_eq!(trace_constants(9), (1, 3));
        assert_eq!(trace_constants(17), (0, 4));
    }

    #[test]
    fn minpoly_formula_branches() {
        let k = Field::new(7, 1).unwrap();
        // a = 1: the sum has 2n-4 terms alternating ±1, so it vanishes
        let (v, p) = predicted_minpoly(&k, 9, Fq::ONE);
        assert!(v);
        assert_eq!(p.degree(), Some(2));
        let (v, _) = predicted_minpoly(&k, 9, k.from_i64(3));
        assert!(!v);
    }

    #[test]
    fn battery_passes_for_default_parameters() {
        for q in [3u64, 5, 7, 9] {
            let k = Field::from_order(q).unwrap();
            for n in [9, 11, 13, 17] {
                let a = crate::gens::default_a(n, &k).unwrap();
                let r = verify_case_a(&build_pair(n, &k, a, false).unwrap()).unwrap();
                assert!(r.passed(), "n={n} q={q}:\n{}", r.failure_summary());
            }
        }
    }

    #[test]
    fn rejects_second_family() {
        let k = Field::new(5, 1).unwrap();
        let p = build_pair(12, &k, Fq::ONE, false).unwrap();
        assert!(verify_case_a(&p).is_err());
    }
}

use super::{pair_params, Recorder, VerificationReport};
use crate::forms::OrthoSpace;
use crate::gens::{Case, GenPair};
use crate::matrix::Matrix;
use crate::Fq;

fn class_name(is_square: bool) -> &'static str {
    if is_square {
        "square"
    } else {
        "nonsquare"
    }
}

/// Orders of the generators, form preservation, determinants, spinor norms, and in the
/// first family the membership criterion for the 3×3 block `x₃`.
pub fn verify_structural(pair: &GenPair) -> VerificationReport {
    let k = &pair.field;
    let mut rec = Recorder::new(pair_params(pair));
    let (x, y) = (&pair.x, &pair.y);

    rec.eq("x^2 = I", "generator-orders", true, (x * x).is_identity());
    rec.eq("y^3 = I", "generator-orders", true, y.pow_u(3).is_identity());
    rec.eq("y != I", "generator-orders", false, y.is_identity());
    for (name, g) in [("x", x), ("y", y)] {
        rec.eq(format!("{name}^T J {name} = J"), "form-preserved", true, pair.space.preserves(g));
        if let Some(d) = rec.attempt(&format!("det {name}"), "determinant", g.det()) {
            rec.elem(k, format!("det {name} = 1"), "determinant", Fq::ONE, d);
        }
        if let Some(c) = rec.attempt(&format!("spinor norm of {name}"), "spinor-norm", pair.space.spinor_norm(g)) {
            rec.eq(format!("spinor norm of {name} trivial"), "spinor-norm", "square", class_name(c.is_square));
        }
    }

    if pair.tag.case == Case::A {
        let n = pair.n;
        let x3 = pair.x3();
        let split = (0..n).all(|i| (0..n).all(|j| (i < n - 3) == (j < n - 3) || x.get(i, j).is_zero()));
        rec.eq("x = diag(x', x3)", "x3-block", true, split);
        let j3 = Matrix::from_rows(k, (n - 3..n).map(|i| pair.space.gram().row(i)[n - 3..].to_vec()).collect())
            .expect("3x3 block");
        let space3 = OrthoSpace::new(j3);
        if let Some(space3) = rec.attempt("x3 form", "x3-block", space3) {
            let minus_a_square = k.is_square(k.neg(pair.a));
            let member = space3.in_omega(&x3);
            let class = space3.spinor_norm(&x3).map(|c| class_name(c.is_square)).unwrap_or("not an isometry");
            rec.push(
                "x3 in Omega_3(q) iff -a is a square",
                "x3-membership",
                member.ok() == minus_a_square,
                format!("member = {minus_a_square}"),
                format!("member = {}, spinor class {class}", member.ok()),
            );
        }
    }
    rec.finish()
}

//! Stabilizer chains built from the (9, F₃, a = 2) pair.

use omega23::certify::{orbit, stabilizer_chain, ChainConfig, RandomElements, StabilizerChain};
use omega23::forms::{omega_order, Eps};
use omega23::gens::{build_pair, GenPair};
use omega23::matrix::unit_vector;
use omega23::{Field, Matrix, DEFAULT_SEED};

fn pair() -> GenPair {
    let k = Field::new(3, 1).unwrap();
    build_pair(9, &k, k.from_i64(2), false).unwrap()
}

fn chain(p: &GenPair, seed: u64) -> StabilizerChain {
    let target = omega_order(9, Eps::Circ, 3).unwrap();
    stabilizer_chain(&[p.x.clone(), p.y.clone()], Some(&target), seed, &ChainConfig::default()).unwrap()
}

#[test]
fn random_elements_sift_to_identity() {
    let p = pair();
    let c = chain(&p, DEFAULT_SEED);
    // an independent stream of group elements
    let mut random = RandomElements::new(&[p.x.clone(), p.y.clone()], 99);
    for _ in 0..1000 {
        assert!(c.contains(&random.next_element()));
    }
}

#[test]
fn elements_outside_omega_do_not_sift() {
    let p = pair();
    let c = chain(&p, DEFAULT_SEED);
    let e1 = unit_vector(9, 1);
    let r = p.space.reflection(&e1).unwrap();
    assert!(!c.contains(&r));
    assert!(!c.contains(&(&r * &p.x)));
    // a scalar matrix is not an isometry of determinant 1 in odd dimension
    let minus = Matrix::identity(&p.field, 9).scale(p.field.from_i64(-1));
    assert!(!c.contains(&minus));
}

#[test]
fn orbit_preserves_quadratic_value() {
    let p = pair();
    let v = unit_vector(9, 1);
    let qv = p.space.quadratic_value(&v).unwrap();
    let o = orbit(&[p.x.clone(), p.y.clone()], &v).unwrap();
    for w in o.vectors() {
        assert_eq!(p.space.quadratic_value(&w).unwrap(), qv);
        for g in [&p.x, &p.y] {
            assert!(o.contains(&g.apply(&w)));
        }
    }
}

#[test]
fn same_seed_same_chain() {
    let p = pair();
    let a = chain(&p, 7);
    let b = chain(&p, 7);
    assert_eq!(a.base(), b.base());
    assert_eq!(a.orbit_sizes(), b.orbit_sizes());
    assert_eq!(a.order(), omega_order(9, Eps::Circ, 3).unwrap());
}

#[test]
fn transversals_map_base_points() {
    let p = pair();
    let c = chain(&p, DEFAULT_SEED);
    for (i, level) in c.levels.iter().enumerate() {
        for w in level.orbit.vectors().take(50) {
            assert_eq!(c.transversal(i, &w).unwrap().apply(&level.base), w);
        }
    }
}

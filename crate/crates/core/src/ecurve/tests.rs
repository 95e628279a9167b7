use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::cube::verify_cube;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn entries(t: &CubeTuple) -> Vec<BigInt> {
    t.entries().cloned().collect()
}

#[test]
fn equal_parts_curve_at_2_1() {
    let m = build_curve_a1a2(2, 1).unwrap();
    assert_eq!(m.curve, CurveModel::from_integers(-20, 324, 0).unwrap());
    assert_eq!(m.p0, CurvePoint::affine(9, 45));
    assert_eq!(m.p1, CurvePoint::affine(18, 72));
    let d = m.curve.double(&m.p1).unwrap();
    assert!(!d.is_infinity());
    assert!(m.curve.double(&d).unwrap().is_infinity());
    assert_eq!(torsion_order(&m.p1, &m.curve, 16), Some(4));
    assert_eq!(torsion_order(&m.p0, &m.curve, 16), None);
    assert_eq!(torsion_order(&CurvePoint::Infinity, &m.curve, 16), Some(1));
    assert!(matches!(build_curve_a1a2(1, 1), Err(CurveError::Degenerate(_))));
    assert!(matches!(build_curve_a1a2(3, -3), Err(CurveError::Degenerate(_))));
}

#[test]
fn curve_e_at_2_3_1() {
    let e = build_curve_e(2, 3, 1).unwrap();
    // frozen: A = 2(8·16 - 46·4 - 9·8), B = 25·64·25
    assert_eq!(e.curve, CurveModel::from_integers(-256, 40000, 0).unwrap());
    assert_eq!(e.q1, CurvePoint::affine(25, 925));
    assert_eq!(e.q0, CurvePoint::affine(200, -2400));
    assert!(has_order_four(&e.q0, &e.curve));
    let s = e.curve.add(&e.q1, &e.q2).unwrap();
    assert!(!s.is_infinity() && e.curve.contains(&s));
    assert_eq!(dependency(&e.q1, &e.q2, &e.curve, 5, 16), None);
}

#[test]
fn singular_e_is_rejected() {
    assert!(matches!(build_curve_e(2, 2, 0), Err(CurveError::Singular(_))));
    assert!(matches!(build_curve_e(4, 5, 3), Err(CurveError::Singular(_))));
    // z = 0 alone leaves A² = 4B
    assert!(matches!(build_curve_e(2, 3, 0), Err(CurveError::Singular(_))));
}

#[test]
fn off_curve_points_are_rejected() {
    let m = build_curve_a1a2(2, 1).unwrap();
    let bad = CurvePoint::affine(1, 1);
    assert_eq!(m.curve.add(&m.p0, &bad), Err(CurveError::OffCurve));
    assert_eq!(m.curve.point(Rational::from_integer(1.into()), Rational::from_integer(1.into())).map(|_| ()), Err(CurveError::OffCurve));
    assert_eq!(curve_arith(&CurveOp::Add, std::slice::from_ref(&m.p0), &m.curve), Err(CurveError::OffCurve));
    assert_eq!(torsion_order(&bad, &m.curve, 8), None);
}

#[test]
fn arith_dispatch() {
    let m = build_curve_a1a2(2, 1).unwrap();
    let c = &m.curve;
    let p = &m.p0;
    assert_eq!(curve_arith(&CurveOp::Add, &[p.clone(), CurvePoint::Infinity], c).unwrap(), *p);
    let three = curve_arith(&CurveOp::Mul(3), std::slice::from_ref(p), c).unwrap();
    assert_eq!(three, c.add(&c.add(p, p).unwrap(), p).unwrap());
    let minus = curve_arith(&CurveOp::Mul(-3), std::slice::from_ref(p), c).unwrap();
    assert_eq!(minus, curve_arith(&CurveOp::Negate, &[three], c).unwrap());
    assert_eq!(curve_arith(&CurveOp::Double, std::slice::from_ref(p), c).unwrap(), c.mul(2, p).unwrap());
    assert!(c.mul(0, p).unwrap().is_infinity());
}

#[test]
fn double_point_pullback() {
    let (abru, cube) = pullback_2p0(2, 1).unwrap();
    assert_eq!(abru.to_vec(), big(&[209, 29, 529, -573]));
    let (_, [p, q, s, t]) = formulas::double_point_pullback(&BigInt::from(2), &BigInt::from(1));
    assert_eq!(vec![p, q, s, t], big(&[151, 389, 267, 447]));
    assert_eq!(entries(&cube), big(&[22801, 128520, 128520, 48488]));
    assert!(matches!(pullback_2p0(1, 1), Err(CurveError::Degenerate(_))));
    assert_eq!(pullback_2p0(3, 2).unwrap().1, family_a1a2(3, 2));
}

#[test]
fn point_pullbacks() {
    // frozen: direct evaluation of the displayed polynomials
    let q1 = pullback_cube(1, 2, 3, 1).unwrap();
    assert_eq!(entries(&q1), big(&[1020100, 6324000, 2704800, -1018875]));
    let q1b = pullback_cube(1, 3, 5, 2).unwrap();
    assert_eq!(
        entries(&q1b),
        big(&[6626448409, 8737897800, 54969345816, 18453024816])
    );
    let q2 = pullback_cube(2, 2, 3, 1).unwrap();
    assert_eq!(entries(&q2), big(&[64, -48, 0, -15]));
    for t in [q1, q1b, q2] {
        assert!(verify_cube(&t).is_ok(), "{t}");
    }
    assert!(pullback_cube(3, 1, 1, 1).is_none());
}

fn random_e(rng: &mut StdRng) -> (CurveE, (i64, i64, i64)) {
    loop {
        let (u, x, z) = (rng.gen_range(1..40), rng.gen_range(1..40), rng.gen_range(1..40));
        if u == x || x == z {
            continue;
        }
        if let Ok(e) = build_curve_e(u, x, z) {
            return (e, (u, x, z));
        }
    }
}

#[test]
fn random_specializations() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..10 {
        let (e, uxz) = random_e(&mut rng);
        assert!(has_order_four(&e.q0, &e.curve), "{uxz:?}");
        let c = pullback_cube(1, uxz.0, uxz.1, uxz.2).unwrap();
        assert!(verify_cube(&c).is_ok(), "{uxz:?}");

        let (c, d) = loop {
            let (c, d): (i64, i64) = (rng.gen_range(-30..30), rng.gen_range(1..30));
            if c * c != d * d && c != 0 {
                break (c, d);
            }
        };
        let m = build_curve_a1a2(c, d).unwrap();
        assert!(has_order_four(&m.p1, &m.curve), "({c}, {d})");
        assert!(pullback_2p0(c, d).is_ok(), "({c}, {d})");
    }
}

#[test]
fn group_law() {
    let mut rng = StdRng::seed_from_u64(11);
    let e = build_curve_e(2, 3, 1).unwrap();
    let m = build_curve_a1a2(2, 1).unwrap();
    let gens = [
        (&e.curve, vec![e.q0.clone(), e.q1.clone(), e.q2.clone()]),
        (&m.curve, vec![m.p0.clone(), m.p1.clone()]),
    ];
    for (curve, g) in gens {
        let pick = |rng: &mut StdRng| {
            g.iter().fold(CurvePoint::Infinity, |acc, p| {
                curve.add(&acc, &curve.mul(rng.gen_range(-3..=3), p).unwrap()).unwrap()
            })
        };
        for _ in 0..50 {
            let (p, q, r) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let pq = curve.add(&p, &q).unwrap();
            assert!(curve.contains(&pq));
            assert_eq!(pq, curve.add(&q, &p).unwrap());
            let left = curve.add(&pq, &r).unwrap();
            let right = curve.add(&p, &curve.add(&q, &r).unwrap()).unwrap();
            assert_eq!(left, right);
            let np = curve.negate(&p).unwrap();
            assert!(curve.add(&p, &np).unwrap().is_infinity());
        }
    }
}

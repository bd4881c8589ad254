use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};

use super::*;
use crate::linalg::{blocks, diamond, j4, rotation, symplectic_inverse, Mat2, Mat4};
use crate::monodromy::period_map_alpha;

fn random_symplectic(seed: u64, size: f64) -> Mat4 {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut h = Mat4::zeros();
    for i in 0..4 {
        for k in i..4 {
            let v: f64 = rng.gen_range(-size..size);
            h[(i, k)] = v;
            h[(k, i)] = v;
        }
    }
    (j4() * h).exp()
}

fn conjugate(m: &Mat4, seed: u64) -> Mat4 {
    let p = random_symplectic(seed, 0.4);
    p * m * symplectic_inverse(&p)
}

fn classify(m: &Mat4) -> NormalForm {
    classify_normal_form(&eigenstructure(m, &Tolerances::default()).unwrap())
}

fn n1(lambda: f64, a: f64) -> Mat2 {
    Mat2::new(lambda, a, 0.0, lambda)
}

/// `[[R, R S], [0, R]]` with `S = [[p, q], [q, r]]`; trivial exactly when `p + r < 0`.
fn n2(theta: f64, p: f64, q: f64, r: f64) -> Mat4 {
    let rot = rotation(theta);
    let s = Mat2::new(p, q, q, r);
    blocks(&rot, &(rot * s), &Mat2::zeros(), &rot)
}

#[test]
fn synthetic_n2_triviality() {
    for (seed, theta) in [(1, 1.1), (2, 2.5), (3, 0.4)] {
        let trivial = classify(&conjugate(&n2(theta, -0.7, 0.2, -0.1), seed));
        match trivial.kind() {
            FormKind::KreinCollision { theta: got, trivial: true } => assert!((got - theta).abs() < 1e-8),
            other => panic!("unexpected {other:?}"),
        }
        let nontrivial = classify(&conjugate(&n2(theta, 0.5, -0.3, 0.2), seed));
        assert!(matches!(nontrivial.kind(), FormKind::KreinCollision { trivial: false, .. }));
        assert!(!trivial.marginal && !nontrivial.marginal);
    }
}

#[test]
fn synthetic_minus_one_jordan() {
    for (seed, a) in [(5, 1.0), (6, -1.0), (7, 0.3), (8, -2.0)] {
        let m = conjugate(&diamond(&n1(-1.0, a), &rotation(4.0)), seed);
        let nf = classify(&m);
        let expected = if a > 0.0 { 1 } else { -1 };
        match nf.kind() {
            FormKind::MinusJordanRotation { a: got, theta } => {
                assert_eq!(got, expected);
                assert!((theta - 4.0).abs() < 1e-8);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

#[test]
fn synthetic_minus_identity_and_hyperbolic() {
    let nf = classify(&conjugate(&diamond(&(-Mat2::identity()), &rotation(1.3)), 9));
    assert!(matches!(nf.kind(), FormKind::MinusIdentityRotation { theta } if (theta - 1.3).abs() < 1e-8));
    let nf = classify(&conjugate(&diamond(&n1(-1.0, 1.0), &Mat2::new(-3.0, 0.0, 0.0, -1.0 / 3.0)), 10));
    assert!(matches!(nf.kind(), FormKind::MinusJordanHyperbolic { a: 1, lambda } if (lambda + 3.0).abs() < 1e-9));
}

#[test]
fn synthetic_plus_one_blocks() {
    let nf = classify(&conjugate(&diamond(&Mat2::identity(), &n1(1.0, 0.6)), 11));
    let mut blocks = nf.blocks.clone();
    blocks.sort_by_key(|b| match b {
        Block::Parabolic { a, .. } => *a,
        _ => 9,
    });
    assert_eq!(blocks, vec![Block::Parabolic { lambda: 1.0, a: 0 }, Block::Parabolic { lambda: 1.0, a: 1 }]);
    let es = eigenstructure(&conjugate(&diamond(&Mat2::identity(), &n1(1.0, 0.6)), 11), &Tolerances::default()).unwrap();
    assert_eq!(es.nu(Complex64::new(1.0, 0.0)), 3);
}

#[test]
fn synthetic_double_jordan() {
    let (lambda, c1, c2): (f64, f64, f64) = (-1.0, 0.3, 0.8);
    let mut m = Mat4::zeros();
    m[(0, 0)] = lambda;
    m[(0, 1)] = 1.0;
    m[(0, 2)] = c1;
    m[(1, 1)] = lambda;
    m[(1, 2)] = c2;
    m[(1, 3)] = -lambda * c2;
    m[(2, 2)] = 1.0 / lambda;
    m[(3, 2)] = -1.0 / (lambda * lambda);
    m[(3, 3)] = 1.0 / lambda;
    assert!(crate::linalg::symplectic_residual(&m) < 1e-14);
    let nf = classify(&conjugate(&m, 12));
    assert_eq!(nf.kind(), FormKind::DoubleJordan { lambda: -1.0 });
}

#[test]
fn semisimple_collisions() {
    let nf = classify(&conjugate(&diamond(&rotation(2.0), &rotation(TAU - 2.0)), 13));
    let angles = nf.rotation_angles();
    assert!((angles[0] - 2.0).abs() < 1e-7 && (angles[1] - (TAU - 2.0)).abs() < 1e-7);
    assert_eq!(stability_verdict(&nf).verdict, Verdict::LinearlyStableNotStrong);
    let nf = classify(&conjugate(&diamond(&rotation(2.0), &rotation(2.0)), 14));
    assert!(nf.rotation_angles().iter().all(|t| (t - 2.0).abs() < 1e-7));
    assert_eq!(stability_verdict(&nf).verdict, Verdict::StronglyLinearlyStable);
}

#[test]
fn krein_signs_opposite_on_conjugates() {
    for seed in 0..20u64 {
        let m = conjugate(&diamond(&rotation(0.3 + 0.25 * seed as f64), &rotation(5.9 - 0.2 * seed as f64)), seed);
        let es = eigenstructure(&m, &Tolerances::default()).unwrap();
        for i in 0..4 {
            for k in 0..4 {
                if (es.eigenvalues[i] - es.eigenvalues[k].conj()).norm() < 1e-9 && es.eigenvalues[i].im.abs() > 1e-6 {
                    assert_eq!(es.krein[i].map(|s| -s), es.krein[k]);
                }
            }
        }
    }
}

#[test]
fn circular_cases() {
    let saddle = analyze(&period_map_alpha(1.0, 0.0).unwrap().period_map).unwrap();
    assert_eq!(saddle.normal_form.kind(), FormKind::ComplexSaddle);
    assert_eq!(saddle.verdict, Verdict::Hyperbolic);

    let collision = analyze(&period_map_alpha(8f64.sqrt(), 0.0).unwrap().period_map).unwrap();
    match collision.normal_form.kind() {
        FormKind::KreinCollision { theta, trivial } => {
            assert!(trivial);
            assert!((theta - (TAU - 2f64.sqrt() * PI)).abs() < 1e-6);
        }
        other => panic!("unexpected {other:?}"),
    }

    let mixed = analyze(&period_map_alpha(2.85, 0.0).unwrap().period_map).unwrap();
    match mixed.normal_form.kind() {
        FormKind::EllipticElliptic { theta1, theta2 } => {
            assert!(in_upper_half(theta1) && !in_upper_half(theta2));
        }
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(mixed.region, Some(Region::KtoS));

    let boundary = analyze(&period_map_alpha(33f64.sqrt() / 2.0, 0.0).unwrap().period_map).unwrap();
    match boundary.normal_form.kind() {
        FormKind::MinusIdentityRotation { theta } => {
            assert!((theta - (3f64.sqrt() * PI).rem_euclid(TAU)).abs() < 1e-6 || (theta - (TAU - (3f64.sqrt() * PI).rem_euclid(TAU))).abs() < 1e-6);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(boundary.verdict, Verdict::LinearlyStableNotStrong);

    let upper = analyze(&period_map_alpha(2.95, 0.0).unwrap().period_map).unwrap();
    match upper.normal_form.kind() {
        FormKind::EllipticElliptic { theta1, theta2 } => {
            assert!(theta1 > PI && theta2 > PI);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(upper.verdict, Verdict::StronglyLinearlyStable);
}

#[test]
fn index_walk_on_circular_forms() {
    let minus_one = Complex64::new(-1.0, 0.0);
    let nf = analyze(&period_map_alpha(2.85, 0.0).unwrap().period_map).unwrap().normal_form;
    assert_eq!(index_via_splitting(0, &nf, minus_one).unwrap(), 0);
    let nf = analyze(&period_map_alpha(2.9, 0.0).unwrap().period_map).unwrap().normal_form;
    assert_eq!(index_via_splitting(0, &nf, minus_one).unwrap(), 2);
}

#[test]
fn classification_survives_tiny_perturbations() {
    for (alpha, e) in [(1.0, 0.0), (2.85, 0.0), (2.9, 0.3), (2.5, 0.5)] {
        let m = period_map_alpha(alpha, e).unwrap().period_map;
        let base = analyze(&m).unwrap();
        if base.normal_form.marginal {
            continue;
        }
        let p = random_symplectic(alpha.to_bits() ^ e.to_bits(), 1e-10);
        let bumped = analyze(&(p * m)).unwrap();
        assert_eq!(bumped.normal_form.label(), base.normal_form.label());
    }
}

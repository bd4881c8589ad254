use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::*;
use crate::monodromy::period_map_alpha;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const MINUS_ONE: Complex64 = Complex64::new(-1.0, 0.0);

fn quick() -> GalerkinOptions {
    GalerkinOptions { n0: 32, n_max: 256, null_rel: 1e-8 }
}

/// Negative count and nullity of the full dense matrix.
fn dense_counts(alpha: f64, e: f64, omega: Complex64, n: usize, periods: usize) -> (usize, usize, Vec<f64>) {
    let a = assemble_galerkin_periods(alpha, e, omega, n, periods).unwrap().matrix();
    let mut eig: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    eig.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    let eps = 1e-8;
    let neg = eig.iter().filter(|v| **v < -eps).count();
    let null = eig.iter().filter(|v| v.abs() <= eps).count();
    (neg, null, eig)
}

#[test]
fn condensed_counts_match_dense_eigenvalues() {
    for (alpha, e, omega, periods) in [
        (0.0, 0.0, MINUS_ONE, 1),
        (2.9, 0.0, MINUS_ONE, 1),
        (3.0, 0.5, ONE, 1),
        (3.0, 0.5, MINUS_ONE, 1),
        (2.2, 0.6, Complex64::from_polar(1.0, 2.0), 1),
        (3.0, 0.3, ONE, 2),
        (1.3, 0.7, ONE, 2),
    ] {
        let (neg, null, _) = dense_counts(alpha, e, omega, 24, periods);
        let reduced = galerkin_spectrum(alpha, e, omega, 24, periods).unwrap();
        assert_eq!(reduced.counts(1e-8), (neg, null), "alpha={alpha} e={e} omega={omega}");
    }
}

#[test]
fn condensed_zero_eigenvalue_is_a_dense_zero() {
    // a kernel vector of the full matrix is a kernel vector of the Schur complement
    let reduced = galerkin_spectrum(3.0, 0.2, ONE, 24, 1).unwrap();
    let (_, _, dense) = dense_counts(3.0, 0.2, ONE, 24, 1);
    let small: Vec<f64> = reduced.eigenvalues.iter().copied().filter(|v| v.abs() < 1e-8).collect();
    assert_eq!(small.len(), 3);
    assert!(dense[..3].iter().all(|v| v.abs() < 1e-10));
    assert!(dense[3].abs() > 1e-3);
}

#[test]
fn index_values_at_the_ends() {
    for e in [0.0, 0.2, 0.5, 0.8] {
        let at_three = morse_index(3.0, e, MINUS_ONE, &quick()).unwrap();
        assert!(at_three.converged);
        assert_eq!(at_three.i_omega, 2, "e={e}");
        let kernel = morse_index(3.0, e, ONE, &quick()).unwrap();
        assert_eq!((kernel.i_omega, kernel.nu_omega), (0, 3), "e={e}");
        let at_zero = morse_index(0.0, e, MINUS_ONE, &quick()).unwrap();
        assert_eq!((at_zero.i_omega, at_zero.nu_omega), (0, 0));
    }
}

#[test]
fn index_one_vanishes() {
    for alpha in [0.0, 0.75, 1.5, 2.25, 2.9] {
        for e in [0.0, 0.4, 0.8] {
            let r = morse_index(alpha, e, ONE, &quick()).unwrap();
            assert!(r.converged);
            assert_eq!(r.i_omega, 0, "alpha={alpha} e={e}");
        }
    }
}

#[test]
fn circular_minus_one_index_jumps_at_the_threshold() {
    let threshold = 33f64.sqrt() / 2.0;
    assert_eq!(morse_index(threshold - 1e-4, 0.0, MINUS_ONE, &quick()).unwrap().i_omega, 0);
    assert_eq!(morse_index(threshold + 1e-4, 0.0, MINUS_ONE, &quick()).unwrap().i_omega, 2);
    let on = morse_index(threshold, 0.0, MINUS_ONE, &quick()).unwrap();
    assert_eq!((on.i_omega, on.nu_omega), (0, 2));
}

#[test]
fn bott_identity() {
    for (alpha, e, expected) in [(0.0, 0.4, 0), (3.0, 0.3, 2), (2.0, 0.5, 0), (2.9, 0.0, 2)] {
        let report = bott_check(alpha, e, &quick()).unwrap();
        assert!(report.converged && report.holds, "{report:?}");
        assert_eq!(report.doubled, expected);
    }
}

#[test]
fn morse_and_splitting_agree() {
    for (alpha, e) in [(1.0, 0.0), (2.85, 0.0), (2.9, 0.0), (2.5, 0.3), (2.95, 0.6), (2.0, 0.8)] {
        let i1 = morse_index(alpha, e, ONE, &quick()).unwrap().i_omega;
        let m = period_map_alpha(alpha, e).unwrap().period_map;
        for omega in [MINUS_ONE, Complex64::from_polar(1.0, 1.0), Complex64::from_polar(1.0, 4.0)] {
            let morse = morse_index(alpha, e, omega, &quick()).unwrap();
            assert_eq!(index_via_splitting(i1, &m, omega).unwrap(), morse.i_omega, "alpha={alpha} e={e} omega={omega}");
        }
    }
}

#[test]
fn beta_alias() {
    assert_eq!(alpha_of_beta(0.0).unwrap(), 3.0);
    assert_eq!(alpha_of_beta(9.0).unwrap(), 0.0);
    assert!(alpha_of_beta(-0.5).is_err());
    let direct = morse_index(2.9, 0.2, MINUS_ONE, &quick()).unwrap();
    let via = morse_index_beta(9.0 - 2.9 * 2.9, 0.2, MINUS_ONE, &quick()).unwrap();
    assert_eq!(direct.i_omega, via.i_omega);
}

#[test]
fn rejects_bad_inputs() {
    assert!(morse_index(3.5, 0.0, ONE, &quick()).unwrap_err().is_input_error());
    assert!(morse_index(1.0, 1.2, ONE, &quick()).unwrap_err().is_input_error());
    assert!(morse_index(1.0, 0.2, Complex64::new(0.5, 0.0), &quick()).unwrap_err().is_input_error());
}

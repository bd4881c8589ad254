use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{complexify, j_pairing, null_space, palindromic_coefficients, svd_sorted, symplectic_residual, CMat4, CVec4, Mat4};

/// Thresholds used by the eigen-analysis. Scales are relative to `max(1, |M|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// `||lambda| - 1|` below which an eigenvalue counts as unimodular.
    pub unit: f64,
    /// Singular values of `M - omega I` below `kernel |M|` count toward the kernel.
    pub kernel: f64,
    /// `|s -/+ 2| <= parabolic |M|` marks a candidate eigenvalue `+1` or `-1`.
    pub parabolic: f64,
    /// `|disc| <= collision |M|^2` marks a double root `s` (Krein collision).
    pub collision: f64,
    /// Width of the band around every case boundary inside which results are marginal.
    pub margin: f64,
    /// Dead zone of the Krein and triviality sign tests.
    pub sign: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { unit: 1e-8, kernel: 1e-7, parabolic: 1e-8, collision: 1e-9, margin: 1e-6, sign: 1e-9 }
    }
}

/// Eigenvalues of a 4x4 symplectic matrix with unit-circle membership and Krein data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenStructure {
    pub matrix: Mat4,
    pub eigenvalues: [Complex64; 4],
    pub on_unit_circle: [bool; 4],
    /// Sign of `Re(i x^H J x)` on the eigenvector of each non-real unimodular eigenvalue.
    pub krein: [Option<i8>; 4],
    /// `tr M` and the second elementary symmetric function of the spectrum.
    pub trace: f64,
    pub second: f64,
    /// Roots `s = lambda + 1/lambda` of `s^2 - tr M s + (second - 2)`.
    pub s_roots: [Complex64; 2],
    pub discriminant: f64,
    pub norm: f64,
    pub residual: f64,
    pub tolerances: Tolerances,
}

/// Eigenvalue pair `lambda, 1/lambda` belonging to a root `s` of the reduced quadratic.
pub fn pair_from_s(s: Complex64) -> [Complex64; 2] {
    let root = (s * s - 4.0).sqrt();
    let l1 = (s + root) * 0.5;
    let l2 = (s - root) * 0.5;
    // keep the larger modulus first, then the upper half plane first
    if (l1.norm() - l2.norm()).abs() > 1e-14 {
        if l1.norm() >= l2.norm() {
            [l1, l2]
        } else {
            [l2, l1]
        }
    } else if l1.im >= l2.im {
        [l1, l2]
    } else {
        [l2, l1]
    }
}

/// Krein sign `sign(Re(i x^H J x))` of a vector, zero inside the dead zone.
pub fn krein_value(x: &CVec4) -> f64 {
    (Complex64::i() * j_pairing(x, x)).re / x.norm_squared()
}

/// Smallest right singular vector of `M - omega I`.
pub fn eigenvector(m: &Mat4, omega: Complex64) -> CVec4 {
    let shifted = complexify(m) - CMat4::identity() * omega;
    let (_, vecs) = svd_sorted(&shifted);
    vecs[3]
}

impl EigenStructure {
    pub fn scale(&self) -> f64 {
        self.norm.max(1.0)
    }

    /// `dim ker(M - omega I)` with the kernel threshold.
    pub fn nu(&self, omega: Complex64) -> usize {
        let shifted = complexify(&self.matrix) - CMat4::identity() * omega;
        null_space(&shifted, self.tolerances.kernel * self.scale()).len()
    }

    /// True when no eigenvalue lies on the unit circle.
    pub fn avoids_unit_circle(&self) -> bool {
        self.on_unit_circle.iter().all(|u| !u)
    }

    /// Smallest `||lambda| - 1|` over the spectrum.
    pub fn distance_to_unit_circle(&self) -> f64 {
        self.eigenvalues.iter().map(|l| (l.norm() - 1.0).abs()).fold(f64::INFINITY, f64::min)
    }
}

/// Eigenvalues, unit-circle flags and Krein signs of a symplectic matrix.
///
/// The spectrum is obtained from the reciprocal structure of the characteristic
/// polynomial, which keeps the pairs `lambda, 1/lambda` exact.
pub fn eigenstructure(m: &Mat4, tolerances: &Tolerances) -> Result<EigenStructure> {
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigenFailure("matrix has non-finite entries".into()));
    }
    let norm = m.norm();
    let residual = symplectic_residual(m);
    if residual > 1e-6 * norm.max(1.0).powi(2) {
        return Err(Error::InvalidInput(format!("matrix is not symplectic, residual {residual:e}")));
    }
    let (trace, second) = palindromic_coefficients(m);
    let discriminant = trace * trace - 4.0 * (second - 2.0);
    let root = Complex64::new(discriminant, 0.0).sqrt();
    let s_roots = [(root + trace) * 0.5, (-root + trace) * 0.5];
    let p1 = pair_from_s(s_roots[0]);
    let p2 = pair_from_s(s_roots[1]);
    let eigenvalues = [p1[0], p1[1], p2[0], p2[1]];
    let on_unit_circle = eigenvalues.map(|l| (l.norm() - 1.0).abs() <= tolerances.unit);
    let mut krein = [None; 4];
    for (k, l) in eigenvalues.iter().enumerate() {
        if on_unit_circle[k] && l.im.abs() > tolerances.unit {
            let value = krein_value(&eigenvector(m, *l));
            if value.abs() > tolerances.sign {
                krein[k] = Some(value.signum() as i8);
            }
        }
    }
    Ok(EigenStructure {
        matrix: *m,
        eigenvalues,
        on_unit_circle,
        krein,
        trace,
        second,
        s_roots,
        discriminant,
        norm,
        residual,
        tolerances: *tolerances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diamond, rotation, Mat2};

    #[test]
    fn identity_has_eigenvalue_one_four_times() {
        let es = eigenstructure(&Mat4::identity(), &Tolerances::default()).unwrap();
        for l in es.eigenvalues {
            assert!((l - 1.0).norm() < 1e-7);
        }
        assert_eq!(es.nu(Complex64::new(1.0, 0.0)), 4);
    }

    #[test]
    fn rotation_krein_signs() {
        let m = diamond(&rotation(0.8), &rotation(2.0));
        let es = eigenstructure(&m, &Tolerances::default()).unwrap();
        for (l, k) in es.eigenvalues.iter().zip(es.krein) {
            // e^{i theta} of R(theta) with theta in (0, pi) is Krein negative
            assert_eq!(k, Some(if l.im > 0.0 { -1 } else { 1 }));
        }
    }

    #[test]
    fn hyperbolic_pair_and_reciprocity() {
        let m = diamond(&Mat2::new(3.0, 0.0, 0.0, 1.0 / 3.0), &rotation(1.0));
        let es = eigenstructure(&m, &Tolerances::default()).unwrap();
        assert!((es.eigenvalues[0] - 3.0).norm() < 1e-12);
        assert!((es.eigenvalues[0] * es.eigenvalues[1] - 1.0).norm() < 1e-12);
        assert_eq!(es.on_unit_circle, [false, false, true, true]);
    }

    #[test]
    fn rejects_non_symplectic() {
        let mut m = Mat4::identity();
        m[(0, 0)] = 2.0;
        assert!(eigenstructure(&m, &Tolerances::default()).is_err());
    }
}

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kepler_cc::{solve_symmetric_y, CentralConfiguration, Vec2};
use crate::linalg::Mat2;

const CLAMP_TOL: f64 = 1e-9;

/// Data of the linearized problem at the massless body.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedParams {
    pub d: Mat2,
    pub lambda3: f64,
    pub lambda4: f64,
    pub alpha: f64,
    pub e: f64,
    /// `(1/mu) sum m_i / |a_i - a4|^3 - 1`, zero at a central configuration.
    pub beta20: f64,
    /// `sum m_i (z_i - z_4)^2 / |a_i - a4|^5` with positions read as complex numbers.
    pub beta220: Complex64,
    /// Angle of the eigenvector of `lambda3`.
    pub eigen_angle: f64,
}

impl ReducedParams {
    /// Parameters of a solved configuration.
    pub fn from_configuration(cc: &CentralConfiguration, e: f64) -> Result<Self> {
        let primaries: Vec<(f64, Vec2)> = cc
            .masses
            .as_array()
            .into_iter()
            .zip(cc.positions[..3].iter().copied())
            .collect();
        let d = build_d_general(&primaries, &cc.a4(), cc.mu)?;
        let (lambda3, lambda4, alpha) = eigen_split(&d)?;
        let (beta20, beta220) = beta_diagnostics(&primaries, &cc.a4(), cc.mu);
        Ok(Self {
            d,
            lambda3,
            lambda4,
            alpha,
            e,
            beta20,
            beta220,
            eigen_angle: eigen_angle(&d),
        })
    }

    /// Parameters in the eigenframe of `D`, determined by `alpha` alone.
    pub fn from_alpha(alpha: f64, e: f64) -> Result<Self> {
        if !(0.0..=3.0).contains(&alpha) {
            return Err(Error::Domain(format!("alpha must lie in [0, 3], got {alpha}")));
        }
        let lambda3 = 0.5 * (3.0 + alpha);
        let lambda4 = 0.5 * (3.0 - alpha);
        Ok(Self {
            d: Mat2::new(lambda3, 0.0, 0.0, lambda4),
            lambda3,
            lambda4,
            alpha,
            e,
            beta20: 0.0,
            beta220: Complex64::new(0.0, 0.0),
            eigen_angle: 0.0,
        })
    }
}

/// `D = (3/mu) sum m_i d_i d_i^T / |d_i|^5` for `d_i = a_i - a4` at a central configuration.
pub fn build_d(cc: &CentralConfiguration) -> Result<Mat2> {
    ReducedParams::from_configuration(cc, 0.0).map(|p| p.d)
}

/// The matrix `D` for any number of primaries, in the form that stays valid off a
/// central configuration:
/// `D = (1 - s/mu) I + (3/mu) sum m_i d_i d_i^T / |d_i|^5` with `s = sum m_i / |d_i|^3`.
pub fn build_d_general(primaries: &[(f64, Vec2)], a4: &Vec2, mu: f64) -> Result<Mat2> {
    if a4.y.abs() < 1e-8 && primaries.iter().all(|(_, a)| a.y == 0.0) {
        return Err(Error::DegenerateConfiguration(
            "massless body lies on the line of the primaries".into(),
        ));
    }
    let mut s = 0.0;
    let mut outer = Matrix2::zeros();
    for (m, a) in primaries {
        let d = a - a4;
        let r2 = d.norm_squared();
        let r3 = r2 * r2.sqrt();
        s += m / r3;
        outer += *m * d * d.transpose() / (r3 * r2);
    }
    Ok(Mat2::identity() * (1.0 - s / mu) + outer * (3.0 / mu))
}

fn beta_diagnostics(primaries: &[(f64, Vec2)], a4: &Vec2, mu: f64) -> (f64, Complex64) {
    let mut s = 0.0;
    let mut b = Complex64::new(0.0, 0.0);
    for (m, a) in primaries {
        let d = a - a4;
        let r = d.norm();
        s += m / r.powi(3);
        b += Complex64::new(d.x, d.y).powi(2) * (*m / r.powi(5));
    }
    (s / mu - 1.0, b)
}

/// Closed-form eigenvalues `lambda3 >= lambda4` of a symmetric 2x2 matrix and their gap,
/// with the gap snapped to `0` or `3` when within 1e-9 of the ends.
pub fn eigen_split(d: &Mat2) -> Result<(f64, f64, f64)> {
    let half_trace = 0.5 * (d[(0, 0)] + d[(1, 1)]);
    let half_diff = 0.5 * (d[(0, 0)] - d[(1, 1)]);
    let off = 0.5 * (d[(0, 1)] + d[(1, 0)]);
    let radius = half_diff.hypot(off);
    let mut alpha = 2.0 * radius;
    if alpha > 3.0 + CLAMP_TOL || !alpha.is_finite() {
        return Err(Error::Inconsistency(format!("eigen gap {alpha} exceeds 3")));
    }
    if alpha < CLAMP_TOL {
        alpha = 0.0;
    } else if alpha > 3.0 - CLAMP_TOL {
        alpha = 3.0;
    }
    Ok((half_trace + radius, half_trace - radius, alpha))
}

/// Angle of the eigenvector belonging to the larger eigenvalue, in `(-pi/2, pi/2]`.
pub fn eigen_angle(d: &Mat2) -> f64 {
    let off = 0.5 * (d[(0, 1)] + d[(1, 0)]);
    0.5 * (2.0 * off).atan2(d[(0, 0)] - d[(1, 1)])
}

/// Symmetric-mass chain `m2 -> (y, z, alpha)` with `m1 = m3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetricChain {
    pub m2: f64,
    pub y: f64,
    pub z: f64,
    pub alpha: f64,
}

pub fn symmetric_chain(m2: f64) -> Result<SymmetricChain> {
    let y = solve_symmetric_y(m2)?;
    let z = 8.0 * (1.0 - m2) / ((1.0 + 7.0 * m2) * (y * y + 1.0).powf(2.5));
    Ok(SymmetricChain { m2, y, z, alpha: 6.0 * (0.5 - z) })
}

/// `alpha = 6 (1/2 - z)` along the symmetric family.
pub fn symmetric_alpha(m2: f64) -> Result<f64> {
    symmetric_chain(m2).map(|c| c.alpha)
}

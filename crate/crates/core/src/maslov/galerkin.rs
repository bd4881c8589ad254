use std::f64::consts::TAU;

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::kepler_cc::{check_eccentricity, DEFAULT_E_MAX};
use crate::reduction::rotated_potential;

pub type CMat2 = Matrix2<Complex64>;

/// Fourier coefficients below this fraction of the mean potential are dropped from the band.
pub const BAND_CUTOFF: f64 = 1e-14;

/// Fourier-Galerkin discretization of `-y'' - y + W(t) y` on `y(T) = omega y(0)`, where
/// `T = 2 pi * periods` and `W(t) = (3 I + alpha S(t)) / (2 (1 + e cos t))`.
///
/// The basis is `e^{i (k + rho) t / periods} v`, `k = -n..=n`, `v` in `C^2`, with
/// `omega = e^{2 pi i rho}`. The matrix is block Toeplitz plus a diagonal kinetic part,
/// so it is stored through the potential's Fourier coefficients and densified on demand.
#[derive(Debug, Clone)]
pub struct GalerkinProblem {
    pub alpha: f64,
    pub e: f64,
    pub omega: Complex64,
    pub rho: f64,
    pub n: usize,
    pub periods: usize,
    /// `W_hat[d]` for `d = 0..=band`; negative offsets are the adjoints.
    pub coefficients: Vec<CMat2>,
}

/// `rho` in `[0, 1)` with `omega = e^{2 pi i rho}`.
pub fn rho_of(omega: Complex64) -> Result<f64> {
    if !omega.is_finite() || (omega.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!("omega = {omega} is not a unit complex number")));
    }
    let rho = (omega.arg() / TAU).rem_euclid(1.0);
    Ok(if rho >= 1.0 - 1e-15 { 0.0 } else { rho })
}

impl GalerkinProblem {
    /// Number of Fourier modes, `2 n + 1`.
    pub fn modes(&self) -> usize {
        2 * self.n + 1
    }

    pub fn dim(&self) -> usize {
        2 * self.modes()
    }

    /// Largest mode offset with a nonzero coupling.
    pub fn band(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Frequency `(k + rho) / periods` of mode index `idx` (`k = idx - n`).
    pub fn frequency(&self, idx: usize) -> f64 {
        (idx as f64 - self.n as f64 + self.rho) / self.periods as f64
    }

    /// Kinetic symbol `freq^2 - 1` of mode `idx`.
    pub fn kinetic(&self, idx: usize) -> f64 {
        let f = self.frequency(idx);
        f * f - 1.0
    }

    /// The 2x2 block coupling mode `row` to mode `col`.
    pub fn block(&self, row: usize, col: usize) -> CMat2 {
        let d = row.abs_diff(col);
        let mut b = match self.coefficients.get(d) {
            None => CMat2::zeros(),
            Some(c) if row >= col => *c,
            Some(c) => c.adjoint(),
        };
        if row == col {
            let k = Complex64::new(self.kinetic(row), 0.0);
            b[(0, 0)] += k;
            b[(1, 1)] += k;
        }
        b
    }

    /// Dense Hermitian matrix of size `2 (2n + 1)`.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let m = self.modes();
        let mut out = DMatrix::zeros(2 * m, 2 * m);
        for r in 0..m {
            let lo = r.saturating_sub(self.band());
            let hi = (r + self.band()).min(m - 1);
            for c in lo..=hi {
                out.fixed_view_mut::<2, 2>(2 * r, 2 * c).copy_from(&self.block(r, c));
            }
        }
        out
    }
}

/// Fourier coefficients of the potential over `[0, 2 pi periods)` from `samples`
/// equispaced points, `W_hat[d] = (1/L) sum_l W(t_l) e^{-2 pi i d l / L}`, truncated
/// where they fall below [`BAND_CUTOFF`] relative to `W_hat[0]`.
pub fn potential_coefficients(alpha: f64, e: f64, periods: usize, samples: usize) -> Vec<CMat2> {
    let span = TAU * periods as f64;
    let mut entries: [Vec<Complex64>; 3] = Default::default();
    for l in 0..samples {
        let w = rotated_potential(alpha, e, span * l as f64 / samples as f64);
        entries[0].push(Complex64::new(w[(0, 0)], 0.0));
        entries[1].push(Complex64::new(w[(0, 1)], 0.0));
        entries[2].push(Complex64::new(w[(1, 1)], 0.0));
    }
    let fft = FftPlanner::new().plan_fft_forward(samples);
    for buf in entries.iter_mut() {
        fft.process(buf);
    }
    let scale = 1.0 / samples as f64;
    let half = samples / 2;
    let coeff = |d: usize| {
        CMat2::new(entries[0][d], entries[1][d], entries[1][d], entries[2][d]) * Complex64::new(scale, 0.0)
    };
    let size = |c: &CMat2| c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let reference = size(&coeff(0));
    let band = (0..=half).rev().find(|&d| size(&coeff(d)) > BAND_CUTOFF * reference).unwrap_or(0);
    (0..=band).map(coeff).collect()
}

/// Assemble the problem on one period.
pub fn assemble_galerkin(alpha: f64, e: f64, omega: Complex64, n: usize) -> Result<GalerkinProblem> {
    assemble_galerkin_periods(alpha, e, omega, n, 1)
}

/// Assemble the problem on `periods` periods of the potential, with `8 n + 1` samples.
pub fn assemble_galerkin_periods(
    alpha: f64,
    e: f64,
    omega: Complex64,
    n: usize,
    periods: usize,
) -> Result<GalerkinProblem> {
    if !(0.0..=3.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha = {alpha} outside [0, 3]")));
    }
    check_eccentricity(e, DEFAULT_E_MAX)?;
    if n == 0 || periods == 0 {
        return Err(Error::InvalidInput("mode cutoff and period count must be positive".into()));
    }
    let rho = rho_of(omega)?;
    let mut coefficients = potential_coefficients(alpha, e, periods, 8 * n + 1);
    coefficients.truncate(2 * n + 1);
    Ok(GalerkinProblem { alpha, e, omega, rho, n, periods, coefficients })
}

//! omega-Morse indices of the second order operator `-y'' - y + W(t) y` attached to the
//! elliptic relative equilibrium, which equal its omega-Maslov indices.
//!
//! Indices are counted on a Fourier-Galerkin discretization with the boundary condition
//! `y(2 pi) = omega y(0)` built into the basis, and doubled in cutoff until stable.

mod galerkin;
mod solve;

pub use galerkin::{
    assemble_galerkin, assemble_galerkin_periods, potential_coefficients, rho_of, CMat2, GalerkinProblem,
    BAND_CUTOFF,
};
pub use solve::{reduced_spectrum, ReducedSpectrum};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat4;
use crate::spectral;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GalerkinOptions {
    /// Initial mode cutoff per period.
    pub n0: usize,
    /// Largest cutoff tried per period.
    pub n_max: usize,
    /// Null threshold relative to the condensed matrix norm.
    pub null_rel: f64,
}

impl Default for GalerkinOptions {
    fn default() -> Self {
        Self { n0: 128, n_max: 1024, null_rel: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexRecord {
    pub omega: Complex64,
    pub i_omega: usize,
    pub nu_omega: usize,
    /// Cutoff at which the counts were accepted.
    pub n_used: usize,
    /// Counts agreed at `n_used` and `2 n_used`.
    pub converged: bool,
    /// Ascending eigenvalues of the condensed matrix at `n_used`.
    pub low_eigenvalues: Vec<f64>,
}

impl IndexRecord {
    /// The record, or an error when the cutoff doubling did not settle.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::SolverFailure {
                what: format!("Galerkin counts did not stabilize for omega = {}", self.omega),
                iterations: self.n_used,
                lo: self.i_omega as f64,
                hi: self.nu_omega as f64,
            })
        }
    }
}

/// Condensed spectrum at a fixed cutoff.
pub fn galerkin_spectrum(alpha: f64, e: f64, omega: Complex64, n: usize, periods: usize) -> Result<ReducedSpectrum> {
    reduced_spectrum(&assemble_galerkin_periods(alpha, e, omega, n, periods)?)
}

/// `(i_omega, nu_omega)` on one period, doubling the cutoff until two consecutive
/// cutoffs agree.
pub fn morse_index(alpha: f64, e: f64, omega: Complex64, options: &GalerkinOptions) -> Result<IndexRecord> {
    morse_index_periods(alpha, e, omega, 1, options)
}

/// As [`morse_index`] on `periods` periods of the potential. Cutoffs scale with the
/// period count so the resolved frequency range stays the same.
pub fn morse_index_periods(
    alpha: f64,
    e: f64,
    omega: Complex64,
    periods: usize,
    options: &GalerkinOptions,
) -> Result<IndexRecord> {
    if options.n0 == 0 || options.n_max < options.n0 {
        return Err(Error::InvalidInput(format!("bad Galerkin cutoffs n0 = {}, n_max = {}", options.n0, options.n_max)));
    }
    let mut n = options.n0 * periods;
    let n_max = options.n_max * periods;
    let mut current = galerkin_spectrum(alpha, e, omega, n, periods)?;
    loop {
        let (i, nu) = current.counts(options.null_rel);
        let record = |converged| IndexRecord {
            omega,
            i_omega: i,
            nu_omega: nu,
            n_used: n,
            converged,
            low_eigenvalues: current.eigenvalues.clone(),
        };
        if 2 * n > n_max {
            return Ok(record(false));
        }
        let next = galerkin_spectrum(alpha, e, omega, 2 * n, periods)?;
        if next.counts(options.null_rel) == (i, nu) {
            return Ok(record(true));
        }
        n *= 2;
        current = next;
    }
}

/// `alpha = sqrt(9 - beta)`, the parameter change to the Lagrangian three-body operator.
pub fn alpha_of_beta(beta: f64) -> Result<f64> {
    if !(0.0..=9.0).contains(&beta) {
        return Err(Error::Domain(format!("beta = {beta} outside [0, 9]")));
    }
    Ok((9.0 - beta).sqrt())
}

/// [`morse_index`] in the Lagrangian parameter `beta = 9 - alpha^2`.
pub fn morse_index_beta(beta: f64, e: f64, omega: Complex64, options: &GalerkinOptions) -> Result<IndexRecord> {
    morse_index(alpha_of_beta(beta)?, e, omega, options)
}

/// `i_omega` from `i_1` and the normal form of the period map by summing splitting
/// numbers counterclockwise from 1 to `omega`.
pub fn index_via_splitting(i1: usize, m: &Mat4, omega: Complex64) -> Result<usize> {
    let verdict = spectral::analyze(m)?;
    let index = spectral::index_via_splitting(i1 as i32, &verdict.normal_form, omega)?;
    usize::try_from(index).map_err(|_| Error::Inconsistency(format!("splitting walk gave negative index {index}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BottReport {
    /// `i_1` of the doubled-period problem.
    pub doubled: usize,
    pub i1: usize,
    pub i_minus1: usize,
    pub converged: bool,
    pub holds: bool,
}

/// Bott iteration check `i_1(xi^2) = i_1(xi) + i_{-1}(xi)`, with the left side computed
/// directly on the doubled period.
pub fn bott_check(alpha: f64, e: f64, options: &GalerkinOptions) -> Result<BottReport> {
    let one = Complex64::new(1.0, 0.0);
    let doubled = morse_index_periods(alpha, e, one, 2, options)?;
    let i1 = morse_index(alpha, e, one, options)?;
    let im1 = morse_index(alpha, e, Complex64::new(-1.0, 0.0), options)?;
    Ok(BottReport {
        doubled: doubled.i_omega,
        i1: i1.i_omega,
        i_minus1: im1.i_omega,
        converged: doubled.converged && i1.converged && im1.converged,
        holds: doubled.i_omega == i1.i_omega + im1.i_omega,
    })
}

#[cfg(test)]
mod tests;

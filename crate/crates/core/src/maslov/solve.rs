use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::galerkin::GalerkinProblem;
use crate::error::{Error, Result};

/// Modes with `|freq|` above this are positive definite: kinetic `>= 1.25` and `W >= 0`.
const LOW_FREQUENCY: f64 = 1.5;

/// Hermitian positive definite band matrix, lower band stored row-wise.
struct BandCholesky {
    n: usize,
    bw: usize,
    /// `l[i * (bw + 1) + d]` is `L[i][i - d]`.
    l: Vec<Complex64>,
}

impl BandCholesky {
    fn factor(n: usize, bw: usize, entry: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        let w = bw + 1;
        let mut l = vec![Complex64::new(0.0, 0.0); n * w];
        for i in 0..n {
            let lo = i.saturating_sub(bw);
            for j in lo..=i {
                let mut sum = entry(i, j);
                for k in lo.max(j.saturating_sub(bw))..j {
                    sum -= l[i * w + (i - k)] * l[j * w + (j - k)].conj();
                }
                if i == j {
                    if !(sum.re > 0.0) {
                        return Err(Error::EigenFailure(format!(
                            "high-mode block not positive definite at row {i} (pivot {})",
                            sum.re
                        )));
                    }
                    l[i * w] = Complex64::new(sum.re.sqrt(), 0.0);
                } else {
                    l[i * w + (i - j)] = sum / l[j * w];
                }
            }
        }
        Ok(Self { n, bw, l })
    }

    fn solve_in_place(&self, x: &mut [Complex64]) {
        let w = self.bw + 1;
        for i in 0..self.n {
            let mut s = x[i];
            for k in i.saturating_sub(self.bw)..i {
                s -= self.l[i * w + (i - k)] * x[k];
            }
            x[i] = s / self.l[i * w];
        }
        for i in (0..self.n).rev() {
            let mut s = x[i];
            for k in (i + 1)..(i + self.bw + 1).min(self.n) {
                s -= self.l[k * w + (k - i)].conj() * x[k];
            }
            x[i] = s / self.l[i * w];
        }
    }
}

/// Spectrum of the Galerkin matrix condensed onto its low-frequency modes.
///
/// By Haynsworth inertia additivity the negative count and nullity of the full matrix
/// equal those of the Schur complement, since the high-mode block is positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSpectrum {
    /// Ascending eigenvalues of the Schur complement.
    pub eigenvalues: Vec<f64>,
    /// Spectral norm of the Schur complement.
    pub norm: f64,
}

impl ReducedSpectrum {
    /// Null threshold `rel * max(1, norm)`.
    pub fn threshold(&self, rel: f64) -> f64 {
        rel * self.norm.max(1.0)
    }

    /// `(negative count, null count)` with respect to `threshold(rel)`.
    pub fn counts(&self, rel: f64) -> (usize, usize) {
        let eps = self.threshold(rel);
        let neg = self.eigenvalues.iter().filter(|v| **v < -eps).count();
        let null = self.eigenvalues.iter().filter(|v| v.abs() <= eps).count();
        (neg, null)
    }
}

/// Schur complement of the high modes and its eigenvalues.
pub fn reduced_spectrum(problem: &GalerkinProblem) -> Result<ReducedSpectrum> {
    let modes = problem.modes();
    let (low, high): (Vec<usize>, Vec<usize>) =
        (0..modes).partition(|&i| problem.frequency(i).abs() <= LOW_FREQUENCY);
    // scalar index -> (mode, component)
    let scalar = |set: &[usize], s: usize| (set[s / 2], s % 2);
    let entry = |r: (usize, usize), c: (usize, usize)| {
        if r.0.abs_diff(c.0) > problem.band() {
            Complex64::new(0.0, 0.0)
        } else {
            problem.block(r.0, c.0)[(r.1, c.1)]
        }
    };

    let nl = 2 * low.len();
    let nh = 2 * high.len();
    let mut s = DMatrix::<Complex64>::from_fn(nl, nl, |r, c| entry(scalar(&low, r), scalar(&low, c)));
    if nh > 0 {
        let bw = 2 * problem.band() + 1;
        let chol = BandCholesky::factor(nh, bw.min(nh - 1), |r, c| entry(scalar(&high, r), scalar(&high, c)))?;
        for c in 0..nl {
            let mut col: Vec<Complex64> = (0..nh).map(|r| entry(scalar(&high, r), scalar(&low, c))).collect();
            chol.solve_in_place(&mut col);
            // S -= A_LH A_HH^{-1} A_HL
            for r in 0..nl {
                let row = scalar(&low, r);
                let acc: Complex64 = (0..nh).map(|h| entry(row, scalar(&high, h)) * col[h]).sum();
                s[(r, c)] -= acc;
            }
        }
    }
    let s = (&s + s.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::try_new(s, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::EigenFailure("reduced Galerkin eigen-solve did not converge".into()))?;
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    let norm = eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(ReducedSpectrum { eigenvalues, norm })
}

//! Fundamental solution of `x' = J B(t) x` over one period and its iterates.

use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{complexify, j4, mat_pow, null_space, svd_sorted, symplectic_residual, CMat4, Mat4};
use crate::reduction::{build_b, LinearSystemCoeff, ReducedParams};

/// Residual above which the path is flagged unreliable.
pub const RELIABLE_RESIDUAL: f64 = 1e-9;
/// Residual above which integration is rejected.
pub const MAX_RESIDUAL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationOptions {
    pub steps: usize,
    pub stride: usize,
    /// Project the period map onto Sp(4) after integration.
    pub project: bool,
}

impl IntegrationOptions {
    /// Default step count for eccentricity `e`: `max(4096, ceil(2000 / (1 - e)))`.
    pub fn for_eccentricity(e: f64) -> Self {
        let steps = 4096usize.max((2000.0 / (1.0 - e)).ceil() as usize);
        Self { steps, stride: 32, project: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymplecticPath {
    pub samples: Vec<(f64, Mat4)>,
    pub period_map: Mat4,
    /// Largest `|X^T J X - J|_F` over the samples and the end point.
    pub sympl_residual: f64,
    pub steps: usize,
    pub order: u32,
    pub iterations: u32,
    pub unreliable: bool,
}

impl SymplecticPath {
    /// Length of the time interval covered.
    pub fn span(&self) -> f64 {
        TAU * self.iterations as f64
    }

    /// Writes `theta` and the 16 entries of each sample, row-major.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# fundamental solution samples, entries row-major")?;
        let mut header = vec!["theta".to_string()];
        for i in 0..4 {
            for j in 0..4 {
                header.push(format!("m{i}{j}"));
            }
        }
        writeln!(out, "{}", header.join(","))?;
        for (t, m) in &self.samples {
            let mut row = vec![format!("{t:.17e}")];
            for i in 0..4 {
                for j in 0..4 {
                    row.push(format!("{:.17e}", m[(i, j)]));
                }
            }
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Increment of one classical RK4 step from `x`.
fn rk4_increment(coeff: &LinearSystemCoeff, t: f64, h: f64, x: &Mat4) -> Mat4 {
    let a0 = coeff.generator(t);
    let am = coeff.generator(t + 0.5 * h);
    let a1 = coeff.generator(t + h);
    let k1 = a0 * x;
    let k2 = am * (x + k1 * (0.5 * h));
    let k3 = am * (x + k2 * (0.5 * h));
    let k4 = a1 * (x + k3 * h);
    (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

/// Adds `dx` to `x` carrying the rounding error of each entry in `carry`.
fn compensated_add(x: &mut Mat4, carry: &mut Mat4, dx: &Mat4) {
    for i in 0..16 {
        let y = dx[i] - carry[i];
        let s = x[i] + y;
        carry[i] = (s - x[i]) - y;
        x[i] = s;
    }
}

/// Classical fourth order Runge-Kutta on `[0, 2 pi]` with a fixed step and
/// compensated accumulation of the state.
pub fn integrate_path(coeff: &LinearSystemCoeff, options: &IntegrationOptions) -> Result<SymplecticPath> {
    if options.steps < 64 {
        return Err(Error::InvalidInput(format!("need at least 64 steps, got {}", options.steps)));
    }
    let stride = options.stride.max(1);
    let h = TAU / options.steps as f64;
    let mut x = Mat4::identity();
    let mut carry = Mat4::zeros();
    let mut samples = vec![(0.0, x)];
    let mut residual: f64 = 0.0;
    for k in 0..options.steps {
        let dx = rk4_increment(coeff, k as f64 * h, h, &x);
        compensated_add(&mut x, &mut carry, &dx);
        let done = k + 1 == options.steps;
        if (k + 1) % stride == 0 || done {
            residual = residual.max(symplectic_residual(&x));
            samples.push((if done { TAU } else { (k + 1) as f64 * h }, x));
        }
    }
    if !residual.is_finite() || residual > MAX_RESIDUAL {
        return Err(Error::IntegrationFailure { residual, steps: options.steps });
    }
    let mut period_map = x;
    if options.project {
        period_map = project_symplectic(&period_map);
        if let Some(last) = samples.last_mut() {
            last.1 = period_map;
        }
    }
    Ok(SymplecticPath {
        samples,
        period_map,
        sympl_residual: residual,
        steps: options.steps,
        order: 4,
        iterations: 1,
        unreliable: residual > RELIABLE_RESIDUAL,
    })
}

/// Period map of the reduced system with default options.
pub fn period_map(params: &ReducedParams) -> Result<SymplecticPath> {
    integrate_path(&build_b(params), &IntegrationOptions::for_eccentricity(params.e))
}

/// Period map for `(alpha, e)` in the eigenframe of `D`.
pub fn period_map_alpha(alpha: f64, e: f64) -> Result<SymplecticPath> {
    period_map(&ReducedParams::from_alpha(alpha, e)?)
}

/// `m`-fold iterate on `[0, 2 pi m]`: `X(t + 2 pi j) = X(t) X(2 pi)^j`.
pub fn iterate_path(path: &SymplecticPath, m: u32) -> Result<SymplecticPath> {
    if m == 0 {
        return Err(Error::InvalidInput("iteration count must be at least 1".into()));
    }
    let base = path.iterations;
    let period = path.span();
    let mut samples = path.samples.clone();
    let mut power = path.period_map;
    for block in 1..m {
        let shift = period * block as f64;
        for (t, x) in path.samples.iter().skip(1) {
            samples.push((t + shift, x * power));
        }
        power *= path.period_map;
    }
    let period_map = mat_pow(&path.period_map, m);
    let residual = samples.iter().map(|(_, x)| symplectic_residual(x)).fold(path.sympl_residual, f64::max);
    Ok(SymplecticPath {
        samples,
        period_map,
        sympl_residual: residual,
        steps: path.steps,
        order: path.order,
        iterations: base * m,
        unreliable: path.unreliable || residual > RELIABLE_RESIDUAL,
    })
}

/// Projects a nearly symplectic matrix onto Sp(4) by the iteration
/// `M <- (M - J M^{-T} J) / 2`, whose fixed points are exactly the symplectic matrices.
pub fn project_symplectic(m: &Mat4) -> Mat4 {
    let j = j4();
    let mut x = *m;
    for _ in 0..20 {
        let Some(inv) = x.try_inverse() else { break };
        let next = (x - j * inv.transpose() * j) * 0.5;
        let change = (next - x).norm();
        x = next;
        if change <= 1e-15 * x.norm() {
            break;
        }
    }
    x
}

/// Eigenvalues of a real Hamiltonian 4x4 matrix from its even characteristic polynomial
/// `l^4 + p l^2 + q`.
fn hamiltonian_eigenvalues(a: &Mat4) -> [Complex64; 4] {
    let p = -0.5 * (a * a).trace();
    let q = a.determinant();
    let disc = Complex64::new(p * p - 4.0 * q, 0.0).sqrt();
    let x1 = (-p + disc) * 0.5;
    let x2 = (-p - disc) * 0.5;
    let (r1, r2) = (x1.sqrt(), x2.sqrt());
    [r1, -r1, r2, -r2]
}

/// `exp(2 pi J B0)` for the circular orbit, through the eigen-decomposition of `J B0`.
/// Falls back to scaling-and-squaring when the eigenvector basis is ill-conditioned.
pub fn monodromy_circular(alpha: f64) -> Result<Mat4> {
    let params = ReducedParams::from_alpha(alpha, 0.0)?;
    let a = build_b(&params).generator(0.0);
    let lambdas = hamiltonian_eigenvalues(&a);
    let ca = complexify(&a);
    let scale = a.norm();
    let mut v = CMat4::zeros();
    for (col, lambda) in lambdas.iter().enumerate() {
        let shifted = ca - CMat4::identity() * *lambda;
        let (_, vecs) = svd_sorted(&shifted);
        v.set_column(col, &vecs[3]);
    }
    let (sv, _) = svd_sorted(&v);
    let well_conditioned = sv[3] > 1e-6 * sv[0]
        && lambdas.iter().enumerate().all(|(i, l)| {
            lambdas.iter().skip(i + 1).all(|k| (l - k).norm() > 1e-6 * scale.max(1.0))
        });
    if well_conditioned {
        if let Some(inv) = v.try_inverse() {
            let mut diag = CMat4::zeros();
            for (i, l) in lambdas.iter().enumerate() {
                diag[(i, i)] = (l * TAU).exp();
            }
            let m = v * diag * inv;
            let imag = m.map(|z| z.im.abs()).max();
            if imag < 1e-9 {
                return Ok(m.map(|z| z.re));
            }
        }
    }
    Ok((a * TAU).exp())
}

/// Kernel dimension of `J B0 - lambda I`, used to tell defective circular generators.
pub fn circular_generator_nullity(alpha: f64, lambda: Complex64, tol: f64) -> Result<usize> {
    let params = ReducedParams::from_alpha(alpha, 0.0)?;
    let a = complexify(&build_b(&params).generator(0.0));
    Ok(null_space(&(a - CMat4::identity() * lambda), tol).len())
}

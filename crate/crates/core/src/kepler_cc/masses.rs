use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Masses of the three primaries, normalized to unit total mass.
/// The fourth body is massless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassTriple {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

impl MassTriple {
    pub const SUM_TOLERANCE: f64 = 1e-12;

    pub fn new(m1: f64, m2: f64, m3: f64) -> Result<Self> {
        let masses = [m1, m2, m3];
        if masses.iter().any(|m| !m.is_finite() || *m <= 0.0) {
            return Err(Error::InvalidInput(format!(
                "masses must be strictly positive, got ({m1}, {m2}, {m3})"
            )));
        }
        let sum = m1 + m2 + m3;
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "masses must sum to 1, got {sum}"
            )));
        }
        Ok(Self { m1, m2, m3 })
    }

    /// Symmetric triple `m1 = m3 = (1 - m2) / 2`.
    pub fn symmetric(m2: f64) -> Result<Self> {
        let side = 0.5 * (1.0 - m2);
        Self::new(side, 1.0 - 2.0 * side, side)
    }

    /// The triple `(m1, 1 - m1 - m3, m3)`.
    pub fn from_outer(m1: f64, m3: f64) -> Result<Self> {
        Self::new(m1, 1.0 - m1 - m3, m3)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.m1, self.m2, self.m3]
    }
}

/// Coefficients of the Euler quintic, highest degree first.
pub fn euler_quintic_coefficients(masses: &MassTriple) -> [f64; 6] {
    let MassTriple { m1, m2, m3 } = *masses;
    [
        m3 + m2,
        3.0 * m3 + 2.0 * m2,
        3.0 * m3 + m2,
        -(3.0 * m1 + m2),
        -(3.0 * m1 + 2.0 * m2),
        -(m1 + m2),
    ]
}

/// Value, derivative and the absolute-value envelope `sum |c_k| x^k` of a polynomial.
fn horner(coeffs: &[f64], x: f64) -> (f64, f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    let mut scale = 0.0;
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c;
        scale = scale * x.abs() + c.abs();
    }
    (p, dp, scale)
}

/// Positive root of the Euler quintic, the ratio `|q1 q2| / |q2 q3|` of the collinear
/// configuration with `m2` in the middle.
///
/// The coefficient sign pattern `+ + + - - -` has a single change, so the positive
/// root is unique. It is bracketed by doubling, bisected to width 1e-6 and polished
/// with Newton.
pub fn solve_euler_quintic(masses: &MassTriple) -> Result<f64> {
    let coeffs = euler_quintic_coefficients(masses);
    let f = |x: f64| horner(&coeffs, x).0;

    let mut lo = 1e-12;
    let mut hi = 1.0;
    let mut grow = 0;
    while f(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        grow += 1;
        if grow > 200 || !hi.is_finite() {
            return Err(Error::SolverFailure {
                what: "no sign change of the Euler quintic".into(),
                iterations: grow,
                lo,
                hi,
            });
        }
    }
    if f(lo) > 0.0 {
        return Err(Error::SolverFailure {
            what: "Euler quintic positive at the lower bracket end".into(),
            iterations: 0,
            lo,
            hi,
        });
    }

    let mut iterations = 0;
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let (p, dp, _) = horner(&coeffs, x);
        if dp <= 0.0 {
            break;
        }
        let next = (x - p / dp).clamp(lo, hi);
        let done = (next - x).abs() <= 1e-16 * x.abs().max(1.0);
        x = next;
        iterations += 1;
        if done {
            break;
        }
    }

    let (p, dp, scale) = horner(&coeffs, x);
    if p.abs() > 1e-12 * scale || dp <= 0.0 {
        return Err(Error::SolverFailure {
            what: format!("Euler quintic residual {p:e} after polish"),
            iterations,
            lo,
            hi,
        });
    }
    Ok(x)
}

/// Relative residual `|p(x)| / sum |c_k| x^k` and derivative of the Euler quintic at `x`.
pub fn quintic_residual(masses: &MassTriple, x: f64) -> (f64, f64) {
    let (p, dp, scale) = horner(&euler_quintic_coefficients(masses), x);
    (p.abs() / scale, dp)
}

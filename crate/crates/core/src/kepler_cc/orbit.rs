use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_E_MAX: f64 = 0.99;

/// `sigma = (mu p)^(1/4)`.
pub fn sigma_of(mu: f64, p: f64) -> f64 {
    (mu * p).powf(0.25)
}

/// Checks `0 <= e < e_max`.
pub fn check_eccentricity(e: f64, e_max: f64) -> Result<()> {
    if !(e.is_finite() && e >= 0.0) {
        return Err(Error::Domain(format!("eccentricity must be non-negative, got {e}")));
    }
    if e >= e_max {
        return Err(Error::Domain(format!(
            "eccentricity {e} is not below the cap {e_max}"
        )));
    }
    Ok(())
}

/// Keplerian ellipse of the relative equilibrium with focus at the mass center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeplerOrbit {
    pub mu: f64,
    pub e: f64,
    /// Semi-latus rectum `a (1 - e^2)`.
    pub p: f64,
    pub sigma: f64,
    pub period: f64,
}

impl KeplerOrbit {
    pub fn new(mu: f64, e: f64, p: f64) -> Result<Self> {
        Self::with_cap(mu, e, p, DEFAULT_E_MAX)
    }

    pub fn with_cap(mu: f64, e: f64, p: f64, e_max: f64) -> Result<Self> {
        check_eccentricity(e, e_max)?;
        if !(mu > 0.0 && p > 0.0 && mu.is_finite() && p.is_finite()) {
            return Err(Error::InvalidInput(format!("need mu > 0 and p > 0, got {mu}, {p}")));
        }
        let semi_major = p / (1.0 - e * e);
        let period = TAU * (semi_major.powi(3) / mu).sqrt();
        Ok(Self { mu, e, p, sigma: sigma_of(mu, p), period })
    }

    /// Orbit with a prescribed period.
    pub fn with_period(mu: f64, e: f64, period: f64) -> Result<Self> {
        check_eccentricity(e, DEFAULT_E_MAX)?;
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::InvalidInput(format!("period must be positive, got {period}")));
        }
        let semi_major = (mu * (period / TAU).powi(2)).cbrt();
        Self::new(mu, e, semi_major * (1.0 - e * e))
    }

    pub fn semi_major_axis(&self) -> f64 {
        self.p / (1.0 - self.e * self.e)
    }

    pub fn radius(&self, theta: f64) -> f64 {
        let r = self.p / (1.0 + self.e * theta.cos());
        assert!(r > 0.0, "radius must stay positive for e < 1");
        r
    }

    /// `dr/dt` at true anomaly `theta`.
    pub fn radial_velocity(&self, theta: f64) -> f64 {
        (self.mu / self.p).sqrt() * self.e * theta.sin()
    }

    /// `dtheta/dt` at true anomaly `theta`.
    pub fn angular_velocity(&self, theta: f64) -> f64 {
        let r = self.radius(theta);
        (self.mu * self.p).sqrt() / (r * r)
    }

    /// Eccentric anomaly in `[0, 2pi)` for a mean anomaly in `[0, 2pi)`.
    pub fn eccentric_anomaly(&self, mean: f64) -> f64 {
        let e = self.e;
        let f = |x: f64| x - e * x.sin() - mean;
        let (mut lo, mut hi) = (0.0, TAU);
        let mut x = (mean + e * mean.sin()).clamp(lo, hi);
        for _ in 0..100 {
            let fx = f(x);
            if fx.abs() <= 1e-15 {
                break;
            }
            if fx > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let mut next = x - fx / (1.0 - e * x.cos());
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - x).abs() <= 1e-16 {
                x = next;
                break;
            }
            x = next;
        }
        x
    }

    /// True anomaly at time `t`, lifted continuously so that `theta(kT) = 2 pi k`.
    pub fn theta_of_time(&self, t: f64) -> f64 {
        let mean = TAU * t / self.period;
        let turns = (mean / TAU).floor();
        let reduced = mean - turns * TAU;
        let ecc = self.eccentric_anomaly(reduced);
        let half = 0.5 * ecc;
        let theta = 2.0
            * ((1.0 + self.e).sqrt() * half.sin()).atan2((1.0 - self.e).sqrt() * half.cos());
        let theta = if theta < 0.0 { theta + TAU } else { theta };
        theta + turns * TAU
    }

    /// Residual of Kepler's equation at the eccentric anomaly used for time `t`.
    pub fn kepler_residual(&self, t: f64) -> f64 {
        let mean = (TAU * t / self.period).rem_euclid(TAU);
        let ecc = self.eccentric_anomaly(mean);
        (ecc - self.e * ecc.sin() - mean).abs()
    }
}

/// Mean anomaly corresponding to true anomaly `theta` in `[0, 2pi)`; used by tests and
/// by callers that sample in anomaly.
pub fn mean_anomaly_of_true(e: f64, theta: f64) -> f64 {
    let half = 0.5 * theta;
    let ecc = 2.0 * ((1.0 - e).sqrt() * half.sin()).atan2((1.0 + e).sqrt() * half.cos());
    let ecc = if ecc < 0.0 { ecc + TAU } else { ecc };
    let m = ecc - e * ecc.sin();
    if m < 0.0 {
        m + 2.0 * PI
    } else {
        m
    }
}

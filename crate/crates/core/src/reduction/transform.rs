use crate::error::Result;
use crate::kepler_cc::{CentralConfiguration, KeplerOrbit, Vec2};
use crate::linalg::{j2, rotation, Mat4};

/// Inertial state `(P, q)` of the massless body on the elliptic relative equilibrium at
/// time `t`: `q = r R(theta) a4` and `P = dq/dt`.
pub fn ere_state(a4: &Vec2, orbit: &KeplerOrbit, t: f64) -> (Vec2, Vec2) {
    let theta = orbit.theta_of_time(t);
    let r = orbit.radius(theta);
    let rot = rotation(theta);
    let q = rot * a4 * r;
    let p = rot * (a4 * orbit.radial_velocity(theta) + j2() * a4 * (r * orbit.angular_velocity(theta)));
    (p, q)
}

/// Composition of the rotating, pulsating and `sigma` rescaling transforms:
/// `z = (sigma / r) R(theta)^T q` and `Z = (r / sigma) R(theta)^T P - (r' / sigma) R(theta)^T q`.
/// Time is reparametrized by the true anomaly, so the pair is returned together with
/// `theta(t)`.
pub fn inertial_to_reduced(p: &Vec2, q: &Vec2, t: f64, orbit: &KeplerOrbit) -> (Vec2, Vec2, f64) {
    let theta = orbit.theta_of_time(t);
    let r = orbit.radius(theta);
    let r_dot = orbit.radial_velocity(theta);
    let back = rotation(theta).transpose();
    let q_hat = back * q;
    let p_hat = back * p;
    let z_tilde = q_hat / r;
    let big_z_tilde = (p_hat - z_tilde * r_dot) * r;
    (big_z_tilde / orbit.sigma, z_tilde * orbit.sigma, theta)
}

/// Linear part of [`inertial_to_reduced`] at time `t`, acting on `(P, q)` and returning
/// `(Z, z)`, momenta first.
pub fn reduction_jacobian(t: f64, orbit: &KeplerOrbit) -> Mat4 {
    let theta = orbit.theta_of_time(t);
    let r = orbit.radius(theta);
    let r_dot = orbit.radial_velocity(theta);
    let back = rotation(theta).transpose();
    let s = orbit.sigma;
    crate::linalg::blocks(&(back * (r / s)), &(back * (-r_dot / s)), &(back * 0.0), &(back * (s / r)))
}

/// A configuration rescaled so that the massless body sits at `(1, 0)`.
///
/// Positions are rotated by `-angle` and divided by `scale = |a4|`; the multiplier
/// becomes `mu scale^3`, keeping the central configuration equations intact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitFrame {
    pub angle: f64,
    pub scale: f64,
    pub mu: f64,
    pub positions: [Vec2; 4],
}

pub fn unit_massless_frame(cc: &CentralConfiguration) -> UnitFrame {
    let a4 = cc.a4();
    let angle = a4.y.atan2(a4.x);
    let scale = a4.norm();
    let back = rotation(-angle);
    UnitFrame {
        angle,
        scale,
        mu: cc.mu * scale.powi(3),
        positions: cc.positions.map(|a| back * a / scale),
    }
}

/// Largest deviation of the reduced relative equilibrium from `(0, sigma, sigma, 0)` over
/// `count` times spread across two orbital periods, in the unit frame of `cc` with
/// semi-latus rectum `p`.
pub fn fixed_point_deviation(cc: &CentralConfiguration, e: f64, p: f64, count: usize) -> Result<f64> {
    let unit = unit_massless_frame(cc);
    let orbit = KeplerOrbit::new(unit.mu, e, p)?;
    let a4 = unit.positions[3];
    let sigma = orbit.sigma;
    let mut worst: f64 = 0.0;
    for k in 0..count {
        let t = 2.0 * orbit.period * k as f64 / count.max(1) as f64 - 0.3 * orbit.period;
        let (big_p, q) = ere_state(&a4, &orbit, t);
        let (big_z, z, _) = inertial_to_reduced(&big_p, &q, t, &orbit);
        let state = [big_z.x, big_z.y, z.x, z.y];
        let target = [0.0, sigma, sigma, 0.0];
        for (a, b) in state.iter().zip(target) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

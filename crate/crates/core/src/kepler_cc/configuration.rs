use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use super::masses::{solve_euler_quintic, MassTriple};
use crate::error::{Error, Result};

pub type Vec2 = Vector2<f64>;

/// The three primaries on the x-axis, before the massless body is placed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollinearConfiguration {
    pub masses: MassTriple,
    pub x: f64,
    pub primaries: [Vec2; 3],
    pub mu: f64,
}

/// Full planar central configuration of the three primaries and the massless body.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralConfiguration {
    pub masses: MassTriple,
    pub x: f64,
    /// Positions `a1, a2, a3, a4`.
    pub positions: [Vec2; 4],
    pub mu: f64,
    /// `I(a) = (1/2) sum m_i |a_i|^2`, equal to 1/2 under the normalization.
    pub moment_of_inertia: f64,
}

/// Places the primaries at `0, x, 1 + x`, moves the mass center to the origin, rescales
/// to `sum m_i |a_i|^2 = 1` and evaluates `mu = U(a)`.
pub fn build_collinear_cc(masses: &MassTriple, x: f64) -> Result<CollinearConfiguration> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::InvalidInput(format!("spacing ratio must be positive, got {x}")));
    }
    let m = masses.as_array();
    let raw = [0.0, x, 1.0 + x];
    let center: f64 = m.iter().zip(raw).map(|(mi, q)| mi * q).sum();
    let shifted = raw.map(|q| q - center);
    let inertia: f64 = m.iter().zip(shifted).map(|(mi, q)| mi * q * q).sum();
    let scale = inertia.sqrt().recip();
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::DegenerateConfiguration(format!(
            "cannot normalize primaries, sum m q^2 = {inertia:e}"
        )));
    }
    let primaries = shifted.map(|q| Vec2::new(q * scale, 0.0));
    let mut mu = 0.0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            mu += m[i] * m[j] / (primaries[i] - primaries[j]).norm();
        }
    }
    if !mu.is_finite() {
        return Err(Error::DegenerateConfiguration("potential overflow".into()));
    }
    Ok(CollinearConfiguration { masses: *masses, x, primaries, mu })
}

/// Acceleration of a test point `p` in the field of the primaries plus `mu p`.
/// Vanishes at the massless body's position.
pub fn massless_residual(cc: &CollinearConfiguration, p: &Vec2) -> Vec2 {
    let m = cc.masses.as_array();
    let mut f = cc.mu * p;
    for (mj, aj) in m.iter().zip(cc.primaries.iter()) {
        let d = aj - p;
        let r = d.norm();
        f += *mj * d / (r * r * r);
    }
    f
}

fn massless_jacobian(cc: &CollinearConfiguration, p: &Vec2) -> Matrix2<f64> {
    let m = cc.masses.as_array();
    let mut jac = Matrix2::identity() * cc.mu;
    for (mj, aj) in m.iter().zip(cc.primaries.iter()) {
        let d = aj - p;
        let r2 = d.norm_squared();
        let r3 = r2 * r2.sqrt();
        let r5 = r3 * r2;
        jac += *mj * (3.0 * d * d.transpose() / r5 - Matrix2::identity() / r3);
    }
    jac
}

/// Off-line position of the massless body, found by damped Newton from a point above the
/// midpoint of the outer primaries at half their distance. When that start collapses onto
/// the line, the equilateral apexes over pairs of primaries are tried in turn.
/// Always returns `a4y > 0`.
pub fn solve_massless_position(cc: &CollinearConfiguration) -> Result<Vec2> {
    let [a1, a2, a3] = cc.primaries.map(|a| a.x);
    let apex = |l: f64, r: f64, height: f64| Vec2::new(0.5 * (l + r), height * (r - l));
    let starts = [
        apex(a1, a3, 0.5),
        apex(a1, a3, 0.75f64.sqrt()),
        apex(a1, a2, 0.75f64.sqrt()),
        apex(a2, a3, 0.75f64.sqrt()),
    ];
    let mut first_error = None;
    for start in starts {
        match newton_massless(cc, start) {
            Ok(p) => return Ok(p),
            Err(err) => {
                first_error.get_or_insert(err);
            }
        }
    }
    Err(first_error.expect("at least one start"))
}

fn newton_massless(cc: &CollinearConfiguration, start: Vec2) -> Result<Vec2> {
    const MAX_ITER: usize = 100;
    let mut p = start;
    let mut f = massless_residual(cc, &p);
    let mut fnorm = f.norm();
    let mut iterations = 0;
    while fnorm > 1e-14 && iterations < MAX_ITER {
        iterations += 1;
        let step = massless_jacobian(cc, &p)
            .lu()
            .solve(&(-f))
            .ok_or_else(|| Error::SolverFailure {
                what: "singular Jacobian for the massless body".into(),
                iterations,
                lo: p.x,
                hi: p.y,
            })?;
        let mut damping = 1.0;
        loop {
            let trial = p + damping * step;
            let ft = massless_residual(cc, &trial);
            if ft.norm() < fnorm || damping < 1e-6 {
                p = trial;
                f = ft;
                break;
            }
            damping *= 0.5;
        }
        let new_norm = f.norm();
        if !new_norm.is_finite() {
            return Err(Error::SolverFailure {
                what: "Newton for the massless body diverged".into(),
                iterations,
                lo: p.x,
                hi: p.y,
            });
        }
        if new_norm >= fnorm && fnorm <= 1e-12 {
            break;
        }
        fnorm = new_norm;
    }
    if fnorm > 1e-10 {
        return Err(Error::SolverFailure {
            what: format!("massless body residual {fnorm:e}"),
            iterations,
            lo: p.x,
            hi: p.y,
        });
    }
    if p.y.abs() < 1e-8 {
        return Err(Error::DegenerateConfiguration(
            "massless body collapsed onto the line of primaries".into(),
        ));
    }
    if p.y < 0.0 {
        p.y = -p.y;
    }
    Ok(p)
}

impl CentralConfiguration {
    /// Quintic root, collinear primaries and massless body in one pass.
    pub fn solve(masses: &MassTriple) -> Result<Self> {
        let x = solve_euler_quintic(masses)?;
        let line = build_collinear_cc(masses, x)?;
        let a4 = solve_massless_position(&line)?;
        Ok(Self::from_parts(&line, a4))
    }

    pub fn from_parts(line: &CollinearConfiguration, a4: Vec2) -> Self {
        let [a1, a2, a3] = line.primaries;
        let m = line.masses.as_array();
        let moment_of_inertia =
            0.5 * m.iter().zip(line.primaries.iter()).map(|(mi, a)| mi * a.norm_squared()).sum::<f64>();
        Self {
            masses: line.masses,
            x: line.x,
            positions: [a1, a2, a3, a4],
            mu: line.mu,
            moment_of_inertia,
        }
    }

    pub fn a4(&self) -> Vec2 {
        self.positions[3]
    }

    /// Masses of all four bodies, the last one zero.
    pub fn all_masses(&self) -> [f64; 4] {
        let [m1, m2, m3] = self.masses.as_array();
        [m1, m2, m3, 0.0]
    }

    /// Norm of `sum_{j != i} m_j (a_j - a_i)/|a_j - a_i|^3 + mu a_i` for each body.
    pub fn residuals(&self) -> [f64; 4] {
        let m = self.all_masses();
        let mut out = [0.0; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            let ai = self.positions[i];
            let mut f = self.mu * ai;
            for j in 0..4 {
                if j != i {
                    let d = self.positions[j] - ai;
                    f += m[j] * d / d.norm().powi(3);
                }
            }
            *slot = f.norm();
        }
        out
    }

    /// `sum_j m_j / |a_j - a4|^3`, which equals `mu` at a true configuration.
    pub fn massless_multiplier(&self) -> f64 {
        let a4 = self.a4();
        self.masses
            .as_array()
            .iter()
            .zip(self.positions.iter())
            .map(|(mj, aj)| mj / (aj - a4).norm().powi(3))
            .sum()
    }

    pub fn center_of_mass(&self) -> Vec2 {
        let m = self.all_masses();
        self.positions.iter().zip(m).map(|(a, mi)| a * mi).sum()
    }
}

fn symmetric_y_equation(m2: f64, y: f64) -> (f64, f64) {
    let s = y * y + 1.0;
    let f = (1.0 - m2) / s.powf(1.5) + m2 / y.powi(3) - (1.0 + 7.0 * m2) / 8.0;
    let df = -3.0 * (1.0 - m2) * y / s.powf(2.5) - 3.0 * m2 / y.powi(4);
    (f, df)
}

/// Height ratio `y` of the massless body over the middle primary for `m1 = m3`.
///
/// The left side of the defining equation is strictly decreasing in `y`, positive at 1
/// and non-positive at `sqrt(3)`, so bisection on that bracket followed by Newton
/// converges to the unique root.
pub fn solve_symmetric_y(m2: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&m2) {
        return Err(Error::Domain(format!("m2 must lie in [0, 1), got {m2}")));
    }
    let sqrt3 = 3f64.sqrt();
    let (mut lo, mut hi) = (1.0, sqrt3);
    if symmetric_y_equation(m2, hi).0 >= 0.0 {
        return Ok(sqrt3);
    }
    if symmetric_y_equation(m2, lo).0 <= 0.0 {
        return Ok(1.0);
    }
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        if symmetric_y_equation(m2, mid).0 > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut y = 0.5 * (lo + hi);
    for _ in 0..20 {
        let (f, df) = symmetric_y_equation(m2, y);
        let next = (y - f / df).clamp(lo, hi);
        if next == y {
            break;
        }
        y = next;
    }
    Ok(y)
}

/// Residual of the symmetric height equation at `y`.
pub fn symmetric_y_residual(m2: f64, y: f64) -> f64 {
    symmetric_y_equation(m2, y).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn symmetric_primaries_closed_form() {
        let m2 = 0.4;
        let masses = MassTriple::symmetric(m2).unwrap();
        let cc = build_collinear_cc(&masses, 1.0).unwrap();
        let half = (1.0 - m2).powf(-0.5);
        assert_relative_eq!(cc.primaries[0].x, -half, epsilon = 1e-14);
        assert_relative_eq!(cc.primaries[1].x, 0.0, epsilon = 1e-14);
        assert_relative_eq!(cc.primaries[2].x, half, epsilon = 1e-14);
    }

    #[test]
    fn mu_is_mutual_potential() {
        let masses = MassTriple::new(0.5, 0.25, 0.25).unwrap();
        let x = solve_euler_quintic(&masses).unwrap();
        let cc = build_collinear_cc(&masses, x).unwrap();
        let a = cc.primaries.map(|v| v.x);
        let u = 0.5 * 0.25 / (a[1] - a[0]).abs()
            + 0.5 * 0.25 / (a[2] - a[0]).abs()
            + 0.25 * 0.25 / (a[2] - a[1]).abs();
        assert_relative_eq!(cc.mu, u, max_relative = 1e-14);
    }

    #[test]
    fn full_configuration_invariants() {
        for (m1, m2, m3) in [(0.5, 0.2, 0.3), (0.1, 0.6, 0.3), (0.45, 0.1, 0.45), (0.03, 0.0075, 0.9625)] {
            let cc = CentralConfiguration::solve(&MassTriple::new(m1, m2, m3).unwrap()).unwrap();
            assert!(cc.center_of_mass().norm() < 1e-12);
            assert_relative_eq!(2.0 * cc.moment_of_inertia, 1.0, epsilon = 1e-12);
            assert!(cc.residuals().iter().all(|r| *r <= 1e-10), "{:?}", cc.residuals());
            assert_relative_eq!(cc.massless_multiplier(), cc.mu, epsilon = 1e-10);
            assert!(cc.a4().y > 0.0);
            assert!(cc.positions[..3].iter().all(|a| a.y == 0.0));
        }
    }

    #[test]
    fn symmetric_massless_position_matches_height_equation() {
        for m2 in [0.05, 0.3, 0.7, 0.95] {
            let cc = CentralConfiguration::solve(&MassTriple::symmetric(m2).unwrap()).unwrap();
            let y = solve_symmetric_y(m2).unwrap();
            let expected = Vec2::new(0.0, y * (1.0 - m2).powf(-0.5));
            assert!((cc.a4() - expected).norm() < 1e-10);
        }
    }

    #[test]
    fn small_middle_mass_gives_equilateral_apex() {
        assert_relative_eq!(solve_symmetric_y(0.0).unwrap(), 3f64.sqrt(), epsilon = 1e-14);
        let cc = CentralConfiguration::solve(&MassTriple::symmetric(1e-9).unwrap()).unwrap();
        let side = (cc.positions[2] - cc.positions[0]).norm();
        assert_relative_eq!((cc.a4() - cc.positions[0]).norm(), side, max_relative = 1e-7);
    }

    #[test]
    fn symmetric_y_bracket() {
        let y = solve_symmetric_y(0.5).unwrap();
        assert!(y > 1.0 && y < 3f64.sqrt());
        assert!(symmetric_y_residual(0.5, y).abs() <= 1e-13);
        assert!((solve_symmetric_y(1.0 - 1e-9).unwrap() - 1.0).abs() < 1e-6);
        assert!(solve_symmetric_y(1.0).is_err());
    }
}

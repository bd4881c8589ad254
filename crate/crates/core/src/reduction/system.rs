use serde::{Deserialize, Serialize};

use super::params::ReducedParams;
use crate::linalg::{blocks, j2, j4, s_matrix, Mat2, Mat4};

/// Coordinates in which the linear system is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Frame {
    /// Pulsating frame of the true anomaly, `B = [[I, -J], [J, I - D/(1 + e cos t)]]`.
    #[default]
    Pulsating,
    /// Frame rotating with `R(-t)` and the eigenframe of `D`, `B = diag(I, I - W(t))`.
    /// The period map is the same as in the pulsating frame because `R(2 pi) = I`.
    Rotating,
}

/// `t -> B(t)` for the linearized Hamiltonian system `x' = J B(t) x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearSystemCoeff {
    pub d: Mat2,
    pub alpha: f64,
    pub e: f64,
    pub frame: Frame,
}

impl LinearSystemCoeff {
    pub fn eval(&self, t: f64) -> Mat4 {
        let denom = 1.0 + self.e * t.cos();
        assert!(denom > 0.0, "1 + e cos t must stay positive");
        match self.frame {
            Frame::Pulsating => {
                let j = j2();
                blocks(&Mat2::identity(), &(-j), &j, &(Mat2::identity() - self.d / denom))
            }
            Frame::Rotating => {
                let w = rotated_potential(self.alpha, self.e, t);
                blocks(&Mat2::identity(), &Mat2::zeros(), &Mat2::zeros(), &(Mat2::identity() - w))
            }
        }
    }

    /// `J B(t)`.
    pub fn generator(&self, t: f64) -> Mat4 {
        j4() * self.eval(t)
    }
}

/// Coefficient of the linear system built from reduced parameters.
pub fn build_b(params: &ReducedParams) -> LinearSystemCoeff {
    build_b_in(params, Frame::Pulsating)
}

pub fn build_b_in(params: &ReducedParams, frame: Frame) -> LinearSystemCoeff {
    LinearSystemCoeff { d: params.d, alpha: params.alpha, e: params.e, frame }
}

/// Potential of the second order operator, `(3 I + alpha S(t)) / (2 (1 + e cos t))`.
pub fn rotated_potential(alpha: f64, e: f64, t: f64) -> Mat2 {
    (Mat2::identity() * 3.0 + s_matrix(t) * alpha) / (2.0 * (1.0 + e * t.cos()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rotation;
    use approx::assert_relative_eq;

    #[test]
    fn circular_coefficient_is_constant() {
        let b = build_b(&ReducedParams::from_alpha(2.0, 0.0).unwrap());
        assert_eq!(b.eval(0.0), b.eval(1.3));
    }

    #[test]
    fn apocenter_block() {
        let p = ReducedParams::from_alpha(1.0, 0.5).unwrap();
        let b = build_b(&p).eval(std::f64::consts::PI);
        let lower = b.fixed_view::<2, 2>(2, 2).into_owned();
        assert!((lower - (Mat2::identity() - 2.0 * p.d)).norm() < 1e-14);
    }

    #[test]
    fn structure_and_periodicity() {
        let p = ReducedParams::from_alpha(1.5, 0.3).unwrap();
        let coeff = build_b(&p);
        let t = std::f64::consts::FRAC_PI_2;
        let b = coeff.eval(t);
        assert_eq!(b, b.transpose());
        assert_eq!(b.fixed_view::<2, 2>(0, 0).into_owned(), Mat2::identity());
        assert_eq!(b.fixed_view::<2, 2>(0, 2).into_owned(), -j2());
        assert_eq!(b.fixed_view::<2, 2>(2, 0).into_owned(), j2());
        // at t = pi/2 the conic factor is 1
        assert_relative_eq!(b[(2, 2)], 1.0 - 2.25, epsilon = 1e-15);
        assert_relative_eq!(b[(3, 3)], 1.0 - 0.75, epsilon = 1e-15);
        assert!((coeff.eval(t + std::f64::consts::TAU) - b).norm() < 1e-14);
    }

    #[test]
    fn potential_values() {
        let w = rotated_potential(0.0, 0.4, 1.0);
        assert!((w - Mat2::identity() * 1.5 / (1.0 + 0.4 * 1f64.cos())).norm() < 1e-15);
        let w = rotated_potential(3.0, 0.0, 0.0);
        assert!((w - Mat2::new(3.0, 0.0, 0.0, 0.0)).norm() < 1e-15);
        // equals R(t) diag(l3, l4) R(t)^T over the conic factor
        let (alpha, e, t) = (2.0, 0.4, 1.0);
        let d = Mat2::new(2.5, 0.0, 0.0, 0.5);
        let expected = rotation(t) * d * rotation(t).transpose() / (1.0 + e * t.cos());
        assert!((rotated_potential(alpha, e, t) - expected).norm() < 1e-14);
    }
}

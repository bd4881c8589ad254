use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::normal_form::{unit_angle, Block, NormalForm};
use crate::error::{Error, Result};

const ANGLE_TOL: f64 = 1e-9;

fn same_angle(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(TAU);
    d <= ANGLE_TOL || TAU - d <= ANGLE_TOL
}

/// Splitting numbers `(S+, S-)` of a single basic normal form at the unit number with
/// angle `phi`. `None` when the form has no tabulated value there.
pub fn block_splitting(block: &Block, phi: f64) -> Option<(i32, i32)> {
    let hit = |theta: f64| same_angle(phi, theta);
    Some(match *block {
        Block::Rotation { theta } => {
            if hit(theta) {
                (0, 1)
            } else if hit(TAU - theta) {
                (1, 0)
            } else {
                (0, 0)
            }
        }
        Block::Hyperbolic { .. } | Block::ComplexSaddle { .. } => (0, 0),
        Block::Parabolic { lambda, a } => {
            let at = if lambda > 0.0 { 0.0 } else { PI };
            if !hit(at) {
                (0, 0)
            } else if (lambda > 0.0 && a >= 0) || (lambda < 0.0 && a <= 0) {
                (1, 1)
            } else {
                (0, 0)
            }
        }
        Block::KreinCollision { theta, trivial } => {
            if (hit(theta) || hit(TAU - theta)) && !trivial {
                (1, 1)
            } else {
                (0, 0)
            }
        }
        Block::DoubleJordan { lambda } => {
            let at = if lambda > 0.0 { 0.0 } else { PI };
            if hit(at) {
                return None;
            }
            (0, 0)
        }
    })
}

/// Splitting numbers of a symplectic sum, by additivity over its blocks.
pub fn splitting_numbers(nf: &NormalForm, omega: Complex64) -> Result<(i32, i32)> {
    let phi = unit_angle(omega);
    nf.blocks.iter().try_fold((0, 0), |(p, m), b| {
        block_splitting(b, phi)
            .map(|(bp, bm)| (p + bp, m + bm))
            .ok_or_else(|| Error::Inconsistency(format!("no splitting numbers tabulated for {b:?}")))
    })
}

/// Angles in `[0, 2 pi)` of the unimodular eigenvalues of a normal form.
pub fn unit_eigen_angles(nf: &NormalForm) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for b in &nf.blocks {
        let angles = match *b {
            Block::Rotation { theta } | Block::KreinCollision { theta, .. } => vec![theta, TAU - theta],
            Block::Parabolic { lambda, .. } | Block::DoubleJordan { lambda } => {
                vec![if lambda > 0.0 { 0.0 } else { PI }]
            }
            _ => vec![],
        };
        for a in angles {
            if !out.iter().any(|x| same_angle(*x, a)) {
                out.push(a);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// `i_omega = i_1 + S+(1) + sum (S+ - S-) over unimodular eigenvalues strictly between 1
/// and omega counterclockwise - S-(omega)`.
pub fn index_via_splitting(i1: i32, nf: &NormalForm, omega: Complex64) -> Result<i32> {
    if nf.marginal {
        return Err(Error::Marginal(format!("normal form {nf} is within tolerance of a boundary")));
    }
    let phi0 = unit_angle(omega);
    if same_angle(phi0, 0.0) {
        return Ok(i1);
    }
    let one = Complex64::new(1.0, 0.0);
    let mut index = i1 + splitting_numbers(nf, one)?.0;
    for a in unit_eigen_angles(nf) {
        if a > ANGLE_TOL && a < phi0 - ANGLE_TOL {
            let (p, m) = splitting_numbers(nf, Complex64::from_polar(1.0, a))?;
            index += p - m;
        }
    }
    index -= splitting_numbers(nf, omega)?.1;
    Ok(index)
}

use std::f64::consts::{PI, TAU};
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::{eigenvector, krein_value, pair_from_s, EigenStructure};
use crate::linalg::{complexify, j4, null_space, svd_sorted, truncated_pinv_apply, CMat4, CVec4};

/// Basic normal forms of symplectic matrices of dimension 2 or 4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "block", rename_all = "snake_case")]
pub enum Block {
    /// `R(theta)` with `theta` in `(0, pi)` or `(pi, 2 pi)`.
    Rotation { theta: f64 },
    /// `D(lambda)` with `|lambda| > 1`.
    Hyperbolic { lambda: f64 },
    /// `N1(lambda, a)` with `lambda = +-1` and `a` in `{-1, 0, 1}`; `a = 0` is `lambda I2`.
    Parabolic { lambda: f64, a: i8 },
    /// `N2(e^{i theta}, b)` with `theta` in `(0, pi)`.
    KreinCollision { theta: f64, trivial: bool },
    /// Quadruple `lambda, conj(lambda), 1/lambda, 1/conj(lambda)` off the circle and the axis.
    ComplexSaddle { lambda: Complex64 },
    /// `M2(lambda, c)` with `c2 != 0`, a single four-dimensional Jordan structure.
    DoubleJordan { lambda: f64 },
}

impl Block {
    pub fn dimension(&self) -> usize {
        match self {
            Block::KreinCollision { .. } | Block::ComplexSaddle { .. } | Block::DoubleJordan { .. } => 4,
            _ => 2,
        }
    }

    fn label(&self) -> String {
        match self {
            Block::Rotation { .. } => "R".into(),
            Block::Hyperbolic { .. } => "D".into(),
            Block::Parabolic { lambda, a: 0 } => {
                if *lambda > 0.0 {
                    "I2".into()
                } else {
                    "-I2".into()
                }
            }
            Block::Parabolic { lambda, a } => format!("N1({},{})", *lambda as i32, a),
            Block::KreinCollision { trivial: true, .. } => "N2-trivial".into(),
            Block::KreinCollision { trivial: false, .. } => "N2-nontrivial".into(),
            Block::ComplexSaddle { .. } => "CS".into(),
            Block::DoubleJordan { lambda } => format!("M2({})", *lambda as i32),
        }
    }
}

/// A symplectic sum of basic normal forms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub blocks: Vec<Block>,
    /// Set when the matrix lies within tolerance of a case boundary.
    pub marginal: bool,
}

/// Coarse shape of a four-dimensional normal form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FormKind {
    /// `R(theta1) <> R(theta2)` with `theta1 <= theta2`.
    EllipticElliptic { theta1: f64, theta2: f64 },
    /// `D(lambda) <> R(theta)`.
    EllipticHyperbolic { lambda: f64, theta: f64 },
    ComplexSaddle,
    /// Two real pairs off the unit circle.
    HyperbolicHyperbolic,
    KreinCollision { theta: f64, trivial: bool },
    /// `-I2 <> R(theta)`.
    MinusIdentityRotation { theta: f64 },
    /// `N1(-1, a) <> R(theta)` with `a = +-1`.
    MinusJordanRotation { a: i8, theta: f64 },
    /// `N1(-1, a) <> D(lambda)`.
    MinusJordanHyperbolic { a: i8, lambda: f64 },
    /// `N1(-1, a) <> N1(-1, b)`, including the semisimple `-I4`.
    MinusJordanPair { a: i8, b: i8 },
    DoubleJordan { lambda: f64 },
    /// Any form with eigenvalue `+1`.
    Parabolic,
}

impl NormalForm {
    pub fn kind(&self) -> FormKind {
        use Block::*;
        let mut blocks = self.blocks.clone();
        blocks.sort_by_key(|b| match b {
            Parabolic { .. } => 0,
            Hyperbolic { .. } => 1,
            Rotation { .. } => 2,
            _ => 3,
        });
        if blocks.iter().any(|b| matches!(b, Parabolic { lambda, .. } if *lambda > 0.0)) {
            return FormKind::Parabolic;
        }
        match blocks.as_slice() {
            [Rotation { theta: t1 }, Rotation { theta: t2 }] => {
                FormKind::EllipticElliptic { theta1: t1.min(*t2), theta2: t1.max(*t2) }
            }
            [Hyperbolic { lambda }, Rotation { theta }] => FormKind::EllipticHyperbolic { lambda: *lambda, theta: *theta },
            [ComplexSaddle { .. }] => FormKind::ComplexSaddle,
            [Hyperbolic { .. }, Hyperbolic { .. }] => FormKind::HyperbolicHyperbolic,
            [KreinCollision { theta, trivial }] => FormKind::KreinCollision { theta: *theta, trivial: *trivial },
            [Parabolic { a: 0, .. }, Rotation { theta }] => FormKind::MinusIdentityRotation { theta: *theta },
            [Parabolic { a, .. }, Rotation { theta }] => FormKind::MinusJordanRotation { a: *a, theta: *theta },
            [Parabolic { a, .. }, Hyperbolic { lambda }] => FormKind::MinusJordanHyperbolic { a: *a, lambda: *lambda },
            [Parabolic { a, .. }, Parabolic { a: b, .. }] => FormKind::MinusJordanPair { a: *a, b: *b },
            [DoubleJordan { lambda }] => FormKind::DoubleJordan { lambda: *lambda },
            _ => FormKind::Parabolic,
        }
    }

    /// Compact ASCII label such as `R+R`, `N1(-1,-1)+R` or `CS`.
    pub fn label(&self) -> String {
        self.blocks.iter().map(Block::label).collect::<Vec<_>>().join("+")
    }

    /// Rotation angles of the `R` blocks, sorted.
    pub fn rotation_angles(&self) -> Vec<f64> {
        let mut angles: Vec<f64> = self
            .blocks
            .iter()
            .filter_map(|b| match b {
                Block::Rotation { theta } => Some(*theta),
                _ => None,
            })
            .collect();
        angles.sort_by(f64::total_cmp);
        angles
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.marginal {
            write!(f, "MARGINAL:{}", self.label())
        } else {
            f.write_str(&self.label())
        }
    }
}

fn upper_unit(s: f64) -> Complex64 {
    let c = (0.5 * s).clamp(-1.0, 1.0);
    Complex64::new(c, (1.0 - c * c).sqrt())
}

/// Orientation of an elliptic pair: a Krein-negative upper eigenvalue `e^{i phi}` gives
/// `R(phi)`, a Krein-positive one gives `R(2 pi - phi)`.
fn rotation_block(es: &EigenStructure, s: f64, marginal: &mut bool) -> Block {
    let omega = upper_unit(s);
    let value = krein_value(&eigenvector(&es.matrix, omega));
    if value.abs() <= es.tolerances.sign {
        *marginal = true;
    }
    let phi = omega.arg();
    Block::Rotation { theta: if value < 0.0 { phi } else { TAU - phi } }
}

fn hyperbolic_block(s: f64) -> Block {
    let [big, _] = pair_from_s(Complex64::new(s, 0.0));
    Block::Hyperbolic { lambda: big.re }
}

/// Block for one real root `s` away from `+-2`.
fn generic_real_block(es: &EigenStructure, s: f64, marginal: &mut bool) -> Block {
    let scale = es.scale();
    if (s.abs() - 2.0).abs() <= es.tolerances.margin * scale {
        *marginal = true;
    }
    if s.abs() < 2.0 {
        rotation_block(es, s, marginal)
    } else {
        hyperbolic_block(s)
    }
}

/// Signs of the eigenvalues of the Hermitian form `pairing` on `basis`, and whether any
/// of them falls inside the dead zone.
fn hermitian_inertia(basis: &[CVec4], pairing: impl Fn(&CVec4, &CVec4) -> Complex64, dead: f64) -> (Vec<i8>, bool) {
    let n = basis.len();
    let mut g = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            g[(i, k)] = pairing(&basis[i], &basis[k]);
        }
    }
    let g = (&g + g.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(g);
    let mut marginal = false;
    let mut signs: Vec<i8> = eig
        .eigenvalues
        .iter()
        .map(|v| {
            if v.abs() <= dead {
                marginal = true;
            }
            if *v < 0.0 {
                -1
            } else {
                1
            }
        })
        .collect();
    signs.sort();
    (signs, marginal)
}

/// Orthonormal basis of the span of `vectors` projected off `against`.
fn complement(vectors: &[CVec4], against: &[CVec4], count: usize) -> Vec<CVec4> {
    let mut projected = CMat4::zeros();
    for (col, v) in vectors.iter().enumerate().take(4) {
        let mut p = *v;
        for k in against {
            let c = (k.adjoint() * p)[(0, 0)];
            p -= k * c;
        }
        projected.set_column(col, &p);
    }
    // left singular vectors of the projected set span its range
    let svd = projected.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|a, b| svd.singular_values[*b].total_cmp(&svd.singular_values[*a]));
    order.into_iter().take(count).map(|i| u.column(i).into_owned()).collect()
}

/// Blocks for the generalized eigenspace of `lambda0 = +-1` of dimension `d`.
/// Returns `None` when the kernel data contradict the algebraic multiplicity.
fn parabolic_blocks(es: &EigenStructure, lambda0: f64, d: usize, marginal: &mut bool) -> Option<Vec<Block>> {
    let tol = es.tolerances;
    let scale = es.scale();
    let shifted = complexify(&es.matrix) - CMat4::identity() * Complex64::new(lambda0, 0.0);
    let kernel = null_space(&shifted, tol.kernel * scale);
    let nu = kernel.len();
    if nu == 0 || nu > d {
        return None;
    }
    if nu == d {
        return Some(vec![Block::Parabolic { lambda: lambda0, a: 0 }; d / 2]);
    }
    if d == 4 && nu == 1 {
        return Some(vec![Block::DoubleJordan { lambda: lambda0 }]);
    }
    let jordan = d - nu;
    let semisimple = (2 * nu - d) / 2;
    let (_, gen_vecs) = svd_sorted(&(shifted * shifted));
    let generalized: Vec<CVec4> = gen_vecs[4 - d..].to_vec();
    let w = complement(&generalized, &kernel, jordan);
    let j = complexify(&j4());
    let (signs, dead) = hermitian_inertia(
        &w,
        |x, y| -((shifted * x).adjoint() * j * y)[(0, 0)],
        tol.sign * scale,
    );
    if dead {
        *marginal = true;
    }
    let mut blocks = vec![Block::Parabolic { lambda: lambda0, a: 0 }; semisimple];
    blocks.extend(signs.into_iter().map(|a| Block::Parabolic { lambda: lambda0, a }));
    Some(blocks)
}

/// Double root `s` inside `(-2, 2)`: semisimple collision or `N2`.
fn collision_blocks(es: &EigenStructure, s: f64, marginal: &mut bool) -> Vec<Block> {
    let tol = es.tolerances;
    let scale = es.scale();
    let omega = upper_unit(s);
    let phi = omega.arg();
    let shifted = complexify(&es.matrix) - CMat4::identity() * omega;
    let kernel = null_space(&shifted, tol.kernel * scale);
    let j = complexify(&j4());
    match kernel.len() {
        2 => {
            let (signs, dead) = hermitian_inertia(
                &kernel,
                |x, y| Complex64::i() * (x.adjoint() * j * y)[(0, 0)],
                tol.sign,
            );
            if dead {
                *marginal = true;
            }
            signs
                .into_iter()
                .map(|k| Block::Rotation { theta: if k < 0 { phi } else { TAU - phi } })
                .collect()
        }
        1 => {
            let v = kernel[0];
            let w = truncated_pinv_apply(&shifted, &v, tol.kernel * scale);
            let t = (omega * (v.adjoint() * j * w)[(0, 0)]).re;
            if t.abs() <= tol.sign * w.norm().max(1.0) {
                *marginal = true;
            }
            vec![Block::KreinCollision { theta: phi, trivial: t > 0.0 }]
        }
        _ => {
            *marginal = true;
            vec![rotation_block(es, s, marginal), Block::Rotation { theta: TAU - phi }]
        }
    }
}

/// Decision tree from the eigen-structure to a symplectic normal form.
///
/// Candidate eigenvalues `+-1` are gated on `|s -/+ 2|` and resolved by kernel
/// dimensions; a double root `s` is resolved by the kernel of `M - omega I`; everything
/// else is generic. Inputs within `margin` of a boundary come back marked marginal.
pub fn classify_normal_form(es: &EigenStructure) -> NormalForm {
    let tol = es.tolerances;
    let scale = es.scale();
    let disc = es.discriminant;
    let collision_gate = tol.collision * scale * scale;
    let mut marginal = disc.abs() <= tol.margin * scale * scale && disc.abs() > collision_gate;

    if disc < -collision_gate {
        let lambda = es
            .eigenvalues
            .iter()
            .copied()
            .find(|l| l.norm() > 1.0 && l.im > 0.0)
            .unwrap_or(es.eigenvalues[0]);
        return NormalForm { blocks: vec![Block::ComplexSaddle { lambda }], marginal };
    }

    let root = disc.max(0.0).sqrt();
    let s = [0.5 * (es.trace + root), 0.5 * (es.trace - root)];
    let parabolic_gate = tol.parabolic * scale;
    let near = |x: f64| {
        if (x - 2.0).abs() <= parabolic_gate {
            Some(1.0)
        } else if (x + 2.0).abs() <= parabolic_gate {
            Some(-1.0)
        } else {
            None
        }
    };
    let tags = s.map(near);
    if tags.iter().any(Option::is_some) {
        let mut blocks = Vec::new();
        for lambda0 in [1.0, -1.0] {
            let count = tags.iter().filter(|t| **t == Some(lambda0)).count();
            if count == 0 {
                continue;
            }
            match parabolic_blocks(es, lambda0, 2 * count, &mut marginal) {
                Some(b) => blocks.extend(b),
                None => {
                    marginal = true;
                    for (si, t) in s.iter().zip(tags) {
                        if t == Some(lambda0) {
                            blocks.push(generic_real_block(es, *si, &mut marginal));
                        }
                    }
                }
            }
        }
        for (si, t) in s.iter().zip(tags) {
            if t.is_none() {
                blocks.push(generic_real_block(es, *si, &mut marginal));
            }
        }
        return NormalForm { blocks, marginal };
    }

    if disc.abs() <= collision_gate {
        let s0 = 0.5 * es.trace;
        let blocks = if s0.abs() < 2.0 {
            collision_blocks(es, s0, &mut marginal)
        } else {
            vec![hyperbolic_block(s0), hyperbolic_block(s0)]
        };
        return NormalForm { blocks, marginal };
    }

    let blocks = s.iter().map(|si| generic_real_block(es, *si, &mut marginal)).collect();
    NormalForm { blocks, marginal }
}

/// Angle in `[0, 2 pi)` of a unit complex number.
pub fn unit_angle(omega: Complex64) -> f64 {
    let a = omega.arg();
    if a < 0.0 {
        a + TAU
    } else if a >= TAU {
        a - TAU
    } else {
        a
    }
}

/// True when `theta` lies in `(0, pi)`.
pub fn in_upper_half(theta: f64) -> bool {
    theta > 0.0 && theta < PI
}

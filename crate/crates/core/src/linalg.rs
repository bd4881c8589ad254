//! Small dense helpers for the 2x2 and 4x4 matrices of the planar problem.
//!
//! Phase-space vectors are ordered momenta first, `(Z1, Z2, z1, z2)`, and the
//! standard symplectic form is `J = [[0, -I], [I, 0]]`.

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

pub type Mat2 = Matrix2<f64>;
pub type Mat4 = Matrix4<f64>;
pub type CMat4 = Matrix4<Complex64>;
pub type CVec4 = Vector4<Complex64>;

/// Planar rotation generator `[[0, -1], [1, 0]]`.
pub fn j2() -> Mat2 {
    Mat2::new(0.0, -1.0, 1.0, 0.0)
}

/// Standard symplectic matrix of R^4.
pub fn j4() -> Mat4 {
    let mut j = Mat4::zeros();
    j[(0, 2)] = -1.0;
    j[(1, 3)] = -1.0;
    j[(2, 0)] = 1.0;
    j[(3, 1)] = 1.0;
    j
}

pub fn rotation(theta: f64) -> Mat2 {
    let (s, c) = theta.sin_cos();
    Mat2::new(c, -s, s, c)
}

/// The reflection-rotation `S(t) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]`.
pub fn s_matrix(t: f64) -> Mat2 {
    let (s, c) = (2.0 * t).sin_cos();
    Mat2::new(c, s, s, -c)
}

/// Assemble a 4x4 matrix from 2x2 blocks `[[a, b], [c, d]]`.
pub fn blocks(a: &Mat2, b: &Mat2, c: &Mat2, d: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

/// Symplectic sum of two 2x2 symplectic matrices acting on `(Z1, z1)` and `(Z2, z2)`.
pub fn diamond(m1: &Mat2, m2: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    m[(0, 0)] = m1[(0, 0)];
    m[(0, 2)] = m1[(0, 1)];
    m[(2, 0)] = m1[(1, 0)];
    m[(2, 2)] = m1[(1, 1)];
    m[(1, 1)] = m2[(0, 0)];
    m[(1, 3)] = m2[(0, 1)];
    m[(3, 1)] = m2[(1, 0)];
    m[(3, 3)] = m2[(1, 1)];
    m
}

/// Frobenius norm of `M^T J M - J`, with each entry accumulated in compensated
/// arithmetic so the evaluation itself adds no `eps |M|^2` floor.
pub fn symplectic_residual(m: &Mat4) -> f64 {
    let j = j4();
    let mut sum = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let terms = [
                (m[(2, a)], m[(0, b)]),
                (m[(3, a)], m[(1, b)]),
                (-m[(0, a)], m[(2, b)]),
                (-m[(1, a)], m[(3, b)]),
                (-j[(a, b)], 1.0),
            ];
            let r = dot2(&terms);
            sum += r * r;
        }
    }
    sum.sqrt()
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

/// Dot product of pairs in twice the working precision.
pub fn dot2(pairs: &[(f64, f64)]) -> f64 {
    let (mut s, mut c) = (0.0, 0.0);
    for &(x, y) in pairs {
        let p = x * y;
        let err = x.mul_add(y, -p);
        let (t, q) = two_sum(s, p);
        s = t;
        c += q + err;
    }
    s + c
}

/// Inverse of a symplectic matrix, `-J M^T J`.
pub fn symplectic_inverse(m: &Mat4) -> Mat4 {
    let j = j4();
    -j * m.transpose() * j
}

pub fn complexify(m: &Mat4) -> CMat4 {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Singular values (descending) and matching right singular vectors of a complex 4x4 matrix.
pub fn svd_sorted(a: &CMat4) -> (Vec<f64>, Vec<CVec4>) {
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut pairs: Vec<(f64, CVec4)> = (0..4)
        .map(|i| {
            let row = v_t.row(i);
            let v = CVec4::new(row[0].conj(), row[1].conj(), row[2].conj(), row[3].conj());
            (svd.singular_values[i], v)
        })
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    pairs.into_iter().unzip()
}

/// Orthonormal basis of the numerical kernel of `a`: right singular vectors whose
/// singular value does not exceed `tol`.
pub fn null_space(a: &CMat4, tol: f64) -> Vec<CVec4> {
    let (sv, vecs) = svd_sorted(a);
    sv.into_iter()
        .zip(vecs)
        .filter(|(s, _)| *s <= tol)
        .map(|(_, v)| v)
        .collect()
}

/// `a^+ v` with the pseudo-inverse truncated at singular values `<= tol`.
pub fn truncated_pinv_apply(a: &CMat4, v: &CVec4, tol: f64) -> CVec4 {
    let svd = a.svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut out = CVec4::zeros();
    for i in 0..4 {
        let s = svd.singular_values[i];
        if s > tol {
            let coeff = (u.column(i).adjoint() * v)[(0, 0)] / s;
            out += v_t.row(i).adjoint() * coeff;
        }
    }
    out
}

/// Hermitian pairing `x^H J y`.
pub fn j_pairing(x: &CVec4, y: &CVec4) -> Complex64 {
    let j = complexify(&j4());
    (x.adjoint() * j * y)[(0, 0)]
}

/// Characteristic data of a 4x4 symplectic matrix: `tr M` and the second
/// elementary symmetric function of its eigenvalues.
pub fn palindromic_coefficients(m: &Mat4) -> (f64, f64) {
    let t1 = m.trace();
    let t2 = (m * m).trace();
    (t1, 0.5 * (t1 * t1 - t2))
}

pub fn mat_pow(m: &Mat4, k: u32) -> Mat4 {
    let mut result = Mat4::identity();
    let mut base = *m;
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result *= base;
        }
        base = base * base;
        k >>= 1;
    }
    result
}

use crate::scalar::Scalar;

use super::{Matrix4, Orientation, Quaternion, Side};

/// Residual gate for the float backend, relative to the largest entry of the
/// inspected matrix. The exact backend compares exactly.
pub const DETECTION_TOLERANCE: f64 = 1e-9;

/// A recognized quaternionic multiplication `x ↦ a·x`, `x ↦ x·a`, or both.
#[derive(Debug, Clone, PartialEq)]
pub struct Detection<S> {
    pub orientation: Orientation,
    pub quaternion: Quaternion<S>,
}

/// Matrix of `x ↦ a·x` (left) or `x ↦ x·a` (right) in the basis `(1, i, j, k)`.
pub fn mul_operator<S: Scalar>(a: &Quaternion<S>, side: Side) -> Matrix4<S> {
    let columns = std::array::from_fn(|c| a.mul_on(side, &Quaternion::unit(c)).into_array());
    Matrix4::from_columns(columns)
}

/// Recognizes `m` as a quaternionic multiplication.
///
/// The matrix qualifies iff it is almost skew-symmetric (`m + mᵀ = 2a₀·1`) and
/// almost orthogonal (`mᵀm = (a,a)·1`), where `a` is read off the first
/// column. The remaining entries `α = m₁₂, β = m₁₃, γ = m₂₃` then take one of
/// two sign patterns: `(−a₃, a₂, −a₁)` for left multiplication and
/// `(a₃, −a₂, a₁)` for right multiplication. A real `a` matches both.
pub fn detect_quaternionic_multiplication<S: Scalar>(m: &Matrix4<S>) -> Option<Detection<S>> {
    let scale = m.max_abs();
    let tol = DETECTION_TOLERANCE * scale;
    let tol_sq = DETECTION_TOLERANCE * scale * scale;

    let a = Quaternion::from_array(m.column(0));
    let two_a0 = a.w.clone() + a.w.clone();

    // almost skew-symmetric
    let sym = &(m + &m.transpose()) - &Matrix4::scalar(two_a0);
    if !all_near_zero(&sym, tol) {
        return None;
    }

    // almost orthogonal
    let gram = &(&m.transpose() * m) - &Matrix4::scalar(a.norm_sq());
    if !all_near_zero(&gram, tol_sq) {
        return None;
    }

    let (alpha, beta, gamma) = (&m[(1, 2)], &m[(1, 3)], &m[(2, 3)]);
    let close = |u: &S, v: S| (u.clone() - v).near_zero(tol);
    let left = close(alpha, -a.z.clone()) && close(beta, a.y.clone()) && close(gamma, -a.x.clone());
    let right = close(alpha, a.z.clone()) && close(beta, -a.y.clone()) && close(gamma, a.x.clone());

    Orientation::from_flags(left, right).map(|orientation| Detection {
        orientation,
        quaternion: a,
    })
}

fn all_near_zero<S: Scalar>(m: &Matrix4<S>, tol: f64) -> bool {
    m.rows().iter().flatten().all(|e| e.near_zero(tol))
}

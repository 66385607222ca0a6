use crate::error::{Error, Result};
use crate::linalg::{nullspace, FLOAT_RANK_TOLERANCE};
use crate::quaternions::{Quaternion, Side};
use crate::scalar::{is_zero_vec, Scalar};

use super::circle::{Center, Circle};
use super::classify::LinearQuaternionMap;

/// Circle of the bundle `Γ(x) = A(x)x` (left) or `xA(x)` (right) tangent to
/// `x` at `0`.
///
/// Left: center `−½ (Im A(x))⁻¹ x`. Right: center `−½ x (Im A(x))⁻¹`.
/// A vanishing `Im A(x)` gives a straight line.
pub fn center_from_a<S: Scalar>(a: &LinearQuaternionMap<S>, x: &[S], side: Side) -> Result<Circle<S>> {
    if x.len() != 4 {
        return Err(Error::UnsupportedDimension {
            expected: 4,
            got: x.len(),
        });
    }
    if is_zero_vec(x) {
        return Err(Error::Domain("tangent direction must be nonzero".into()));
    }
    let m = a.eval(x).im();
    if m.is_zero() {
        return Circle::line(x.to_vec());
    }
    let xq = Quaternion::from_slice(x);
    let minus_half = S::from_ratio(-1, 2);
    let inv = m.inv()?;
    let center = match side {
        Side::Left => inv.hamilton(&xq),
        Side::Right => xq.hamilton(&inv),
    }
    .scale(&minus_half);
    Circle::new(x.to_vec(), Center::Finite(center.to_vec()))
}

/// Basis of `{x : Im A(x) = 0}`, the union of the straight lines of the bundle.
///
/// The side does not change the kernel; it is accepted for symmetry with the
/// other bundle operations.
pub fn lines_subspace<S: Scalar>(a: &LinearQuaternionMap<S>, _side: Side) -> Vec<Vec<S>> {
    let rows: Vec<Vec<S>> = (1..4).map(|r| a.matrix().row(r).to_vec()).collect();
    let tol = if S::EXACT { 0.0 } else { FLOAT_RANK_TOLERANCE };
    nullspace(&rows, 4, tol)
}

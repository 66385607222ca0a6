//! The two 12-dimensional spaces of canonical quaternionic maps and their
//! intersection, computed by exact linear algebra on the coefficient space of
//! vector quadratic maps on `ℝ⁴` (dimension 40).

use crate::cone::VectorQuadraticMap;
use crate::linalg::{nullspace, rank};
use crate::quaternions::{Quaternion, Side};
use crate::scalar::{basis, Scalar};

use super::classify::{quaternionic_gamma, LinearQuaternionMap};

/// `Γ(x) = (x_l u)·x` (left) or `x·(x_l u)` (right) for `l = 0..3` and
/// `u ∈ {i, j, k}`.
pub fn component_spanning_set<S: Scalar>(side: Side) -> Vec<VectorQuadraticMap<S>> {
    let mut out = Vec::with_capacity(12);
    for l in 0..4 {
        for u in 1..4 {
            let a = LinearQuaternionMap::coordinate_times(l, &Quaternion::<S>::unit(u));
            out.push(quaternionic_gamma(&a, side));
        }
    }
    out
}

/// `Γ(x) = b(x,x) − (b,x)x` for `b = e0..e3`.
pub fn common_point_spanning_set<S: Scalar>() -> Vec<VectorQuadraticMap<S>> {
    (0..4)
        .map(|k| {
            let b = basis::<S>(4, k);
            VectorQuadraticMap::radial(&b).sub(&VectorQuadraticMap::gauge(&b))
        })
        .collect()
}

/// Dimension counts for the two components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGeometry {
    pub ambient: usize,
    pub left: usize,
    pub right: usize,
    pub intersection: usize,
    /// Whether the intersection equals the common-point family.
    pub intersection_is_common_point_family: bool,
}

/// Basis of the intersection of the left and right spans, from the nullspace
/// of `[L | −R]`.
pub fn component_intersection<S: Scalar>() -> Vec<VectorQuadraticMap<S>> {
    let left: Vec<Vec<S>> = component_spanning_set::<S>(Side::Left)
        .iter()
        .map(VectorQuadraticMap::coefficient_vector)
        .collect();
    let right: Vec<Vec<S>> = component_spanning_set::<S>(Side::Right)
        .iter()
        .map(VectorQuadraticMap::coefficient_vector)
        .collect();
    let ambient = left[0].len();
    // rows = coordinates, columns = generators
    let system: Vec<Vec<S>> = (0..ambient)
        .map(|r| {
            left.iter()
                .map(|v| v[r].clone())
                .chain(right.iter().map(|v| -v[r].clone()))
                .collect()
        })
        .collect();
    let kernel = nullspace(&system, left.len() + right.len(), 0.0);
    let mut combos: Vec<Vec<S>> = kernel
        .iter()
        .map(|coeffs| {
            (0..ambient)
                .map(|r| {
                    left.iter()
                        .zip(coeffs)
                        .fold(S::zero(), |s, (v, c)| s + v[r].clone() * c.clone())
                })
                .collect()
        })
        .collect();
    // the kernel also contains relations inside each span; keep an independent set
    let mut independent: Vec<Vec<S>> = Vec::new();
    for v in combos.drain(..) {
        let mut trial = independent.clone();
        trial.push(v.clone());
        if rank(&trial, 0.0) > independent.len() {
            independent = trial;
        }
    }
    independent
        .iter()
        .map(|v| VectorQuadraticMap::from_coefficient_vector(4, v).expect("40 coefficients"))
        .collect()
}

/// Exact dimensions of the left and right components and their intersection.
pub fn component_geometry<S: Scalar>() -> ComponentGeometry {
    let vectors = |maps: Vec<VectorQuadraticMap<S>>| -> Vec<Vec<S>> {
        maps.iter().map(VectorQuadraticMap::coefficient_vector).collect()
    };
    let left = vectors(component_spanning_set(Side::Left));
    let right = vectors(component_spanning_set(Side::Right));
    let meet = vectors(component_intersection());
    let family = vectors(common_point_spanning_set());
    let both: Vec<Vec<S>> = meet.iter().chain(&family).cloned().collect();
    let family_rank = rank(&family, 0.0);
    ComponentGeometry {
        ambient: left[0].len(),
        left: rank(&left, 0.0),
        right: rank(&right, 0.0),
        intersection: meet.len(),
        intersection_is_common_point_family: meet.len() == family_rank && rank(&both, 0.0) == family_rank,
    }
}

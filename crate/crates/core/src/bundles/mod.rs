//! Circles through the origin, and bundles of them given by a quadratic map
//! `Γ` or, in dimension 4, by a quaternionic descriptor `Im A`.

mod centers;
mod circle;
mod classify;
mod components;
mod descriptor;

pub use centers::{center_from_a, lines_subspace};
pub use circle::{acceleration, circle_from_acceleration, Center, Circle};
pub use classify::{
    common_point, decompose_quaternionic, determine_family, quaternionic_gamma, CommonPoint,
    LinearQuaternionMap,
};
pub use components::{
    common_point_spanning_set, component_geometry, component_intersection, component_spanning_set,
    ComponentGeometry,
};
pub use descriptor::{
    barycentric_combine, common_point_map, fit_bundle, is_common_point_form, BundleDescriptor,
    FitOutcome, FIT_TOLERANCE,
};

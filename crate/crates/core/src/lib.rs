//! Exact and numeric algebra of rectifiable bundles of circles through the
//! origin.
//!
//! A complete bundle of circles through `0 ∈ ℝⁿ` is encoded by the quadratic
//! term `Γ` of a line-rounding diffeomorphism, up to the gauge
//! `Γ ∼ Γ + λ(x)x`. This crate checks the cone conditions on `Γ` exactly,
//! classifies bundles (common-point type or left/right quaternionic type in
//! `ℝ⁴`), synthesizes maps that round lines, predicts circle centers, and
//! verifies all of it numerically by fitting circles to images of lines.

pub mod error;
pub mod linalg;
pub mod scalar;

pub mod bundles;
pub mod cone;
pub mod json;
pub mod quaternions;
pub mod sampling;
pub mod transforms;

pub use bundles::{
    acceleration, barycentric_combine, center_from_a, circle_from_acceleration, common_point,
    decompose_quaternionic, determine_family, fit_bundle, lines_subspace, BundleDescriptor, Center,
    Circle, CommonPoint, FitOutcome, LinearQuaternionMap,
};
pub use cone::{
    canonicalize, check_conditions, cone_divide, generating_plane, parallel_decompose,
    sample_cone_point, ConeDivision, Conditions, GeneratingPlane, ParallelDecomposition, Poly,
    PolyMap, VectorQuadraticMap,
};
pub use error::{Error, RemainderReport, Result};
pub use quaternions::{
    detect_quaternionic_multiplication, mul_operator, qconj, qinv, qmul, Matrix4, Orientation,
    Quaternion, Side,
};
pub use scalar::{Field, GaussianScalar, Rational, Scalar};
pub use transforms::{
    fit_circle, invert, qft_apply, qft_from_a, synthesize_rectifier, t_a, t_a_quadratic,
    verify_rounds_lines, AffineMap, FitReport, FractionalTransform, RectifierMap, Transform,
};

//! Maps that round lines through the origin, and a numeric check that they
//! do: sample lines, map them, fit circles.

mod circle_fit;
mod maps;
mod rectifier;
mod verify;

pub use circle_fit::{fit_circle, CurveFit, FittedCurve, LINE_CURVATURE};
pub use maps::{
    invert, qft_apply, qft_from_a, quaternionic_projective, t_a, t_a_quadratic, AffineMap,
    FractionalTransform,
};
pub use rectifier::{synthesize_rectifier, RectifierMap};
pub use verify::{
    chebyshev_parameters, verify_rounds_lines, FitReport, FnTransform, Identity, LineReport, Transform,
};

//! Exact polynomial algebra relative to the asymptotic cone `(x, x) = 0`.
//!
//! Division by the cone form, the rectifiability conditions on a quadratic
//! map, gauge canonicalization, the parallel decomposition
//! `Γ(x) = b(x,x) + λ(x)x`, and (in dimension 4) cone points from the Segre
//! parameterization together with the two generating families of planes.

mod division;
mod poly;
mod quadratic;
mod segre;

pub use division::{
    canonicalize, check_conditions, cone_divide, cone_divide_poly, parallel_decompose, ConeDivision,
    Conditions, ParallelDecomposition,
};
pub use poly::{Monomial, Poly, PolyMap};
pub use quadratic::VectorQuadraticMap;
pub use segre::{generating_plane, sample_cone_point, GeneratingPlane};

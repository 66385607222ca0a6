//! Seeded inputs shared by the benchmarks.

use rectify_core::bundles::quaternionic_gamma;
use rectify_core::cone::{Poly, PolyMap};
use rectify_core::sampling::Sampler;
use rectify_core::{LinearQuaternionMap, Rational, Side, VectorQuadraticMap};

/// `A(x)x` or `xA(x)` for a random `A` with entries in `[−1, 1]`.
pub fn quaternionic_map(seed: u64, side: Side) -> VectorQuadraticMap<Rational> {
    let a: LinearQuaternionMap<Rational> = Sampler::new(seed).linear_quaternion_map();
    quaternionic_gamma(&a, side)
}

/// `((Γ,x), (Γ,Γ))`, the two quantities divided during a condition check.
pub fn pairings(gamma: &VectorQuadraticMap<Rational>) -> PolyMap<Rational> {
    let n = gamma.dim();
    let parts: Vec<Poly<Rational>> = vec![gamma.pair_with_x(), gamma.self_pairing()];
    PolyMap::new(n, parts)
}

/// Half of the map's certified radius, capped at `0.2`.
pub fn safe_radius(certified: f64) -> f64 {
    (0.5 * certified).min(0.2)
}

//! Seeded random inputs for tests, benchmarks and the command-line driver.
//!
//! Rationals have numerator and denominator bounded by [`BOUND`], which keeps
//! exact arithmetic small while avoiding accidental coincidences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bundles::LinearQuaternionMap;
use crate::cone::sample_cone_point;
use crate::quaternions::{Matrix4, Quaternion};
use crate::scalar::{GaussianScalar, Scalar};

pub const BOUND: i64 = 100;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// `p/q` with `|p| ≤ 100`, `1 ≤ q ≤ 100`.
    pub fn rational<S: Scalar>(&mut self) -> S {
        let p = self.integer(-BOUND, BOUND);
        let q = self.integer(1, BOUND);
        S::from_ratio(p, q)
    }

    /// `p/q ∈ [−1, 1]`.
    pub fn unit_rational<S: Scalar>(&mut self) -> S {
        let q = self.integer(1, BOUND);
        let p = self.integer(-q, q);
        S::from_ratio(p, q)
    }

    pub fn nonzero_rational<S: Scalar>(&mut self) -> S {
        loop {
            let r: S = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn vector<S: Scalar>(&mut self, n: usize) -> Vec<S> {
        (0..n).map(|_| self.rational()).collect()
    }

    pub fn nonzero_vector<S: Scalar>(&mut self, n: usize) -> Vec<S> {
        loop {
            let v = self.vector(n);
            if !crate::scalar::is_zero_vec(&v) {
                return v;
            }
        }
    }

    pub fn quaternion<S: Scalar>(&mut self) -> Quaternion<S> {
        Quaternion::from_slice(&self.vector(4))
    }

    pub fn nonzero_quaternion<S: Scalar>(&mut self) -> Quaternion<S> {
        Quaternion::from_slice(&self.nonzero_vector(4))
    }

    /// `q²/|q|²`, a random exact unit quaternion.
    pub fn unit_quaternion<S: Scalar>(&mut self) -> Quaternion<S> {
        let q: Quaternion<S> = self.nonzero_quaternion();
        let n = q.norm_sq();
        q.hamilton(&q).scale(&(S::one() / n))
    }

    pub fn gaussian<S: Scalar>(&mut self) -> GaussianScalar<S> {
        GaussianScalar::new(self.rational(), self.rational())
    }

    fn nonzero_gaussian_pair<S: Scalar>(&mut self) -> [GaussianScalar<S>; 2] {
        loop {
            let p = [self.gaussian(), self.gaussian()];
            if !crate::scalar::is_zero_vec(&p) {
                return p;
            }
        }
    }

    /// A point of the complex cone `(x,x) = 0` in `ℂ⁴` from random Segre
    /// parameters.
    pub fn cone_point<S: Scalar>(&mut self) -> Vec<GaussianScalar<S>> {
        let u = self.nonzero_gaussian_pair();
        let v = self.nonzero_gaussian_pair();
        sample_cone_point(&u, &v).expect("nonzero parameters")
    }

    /// A linear map `ℝ⁴ → ℍ` with entries in `[−1, 1]`.
    pub fn linear_quaternion_map<S: Scalar>(&mut self) -> LinearQuaternionMap<S> {
        LinearQuaternionMap::new(Matrix4::from_fn(|_, _| self.unit_rational()))
    }

    /// A linear map into `Im ℍ` with entries in `[−1, 1]`.
    pub fn imaginary_map<S: Scalar>(&mut self) -> LinearQuaternionMap<S> {
        self.linear_quaternion_map().im()
    }

    /// A uniformly distributed unit vector.
    pub fn direction(&mut self, n: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..n).map(|_| self.uniform(-1.0, 1.0)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-3 && norm <= 1.0 {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }

    pub fn directions(&mut self, n: usize, count: usize) -> Vec<Vec<f64>> {
        (0..count).map(|_| self.direction(n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{dot, Field, Rational};

    #[test]
    fn same_seed_same_values() {
        let a: Vec<Rational> = Sampler::new(5).vector(6);
        let b: Vec<Rational> = Sampler::new(5).vector(6);
        assert_eq!(a, b);
    }

    #[test]
    fn samples_respect_their_contracts() {
        let mut s = Sampler::new(11);
        for _ in 0..50 {
            let x = s.cone_point::<Rational>();
            assert!(dot(&x, &x).is_zero());
            let u = s.unit_quaternion::<Rational>();
            assert_eq!(u.norm_sq(), Rational::one());
            assert!(s.imaginary_map::<Rational>().is_pure_imaginary());
            let d = s.direction(4);
            assert!((d.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}

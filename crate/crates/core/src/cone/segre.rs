//! Points and generating planes of the complex asymptotic cone in `ℂ⁴`.
//!
//! With `a = x0 + i x1`, `b = x0 − i x1`, `c = x2 + i x3`, `d = x2 − i x3` the
//! cone `(x,x) = 0` becomes `ab + cd = 0`, which is parameterized by the Segre
//! map `a = u0 v0`, `b = u1 v1`, `c = u0 v1`, `d = −u1 v0`.

use crate::error::{Error, Result};
use crate::linalg::{in_span, rank, FLOAT_RANK_TOLERANCE};
use crate::quaternions::{Quaternion, Side};
use crate::scalar::{dot, is_zero_vec, Field, GaussianScalar, Scalar};

type G<S> = GaussianScalar<S>;

fn rank_tol<F: Field>() -> f64 {
    if F::EXACT {
        0.0
    } else {
        FLOAT_RANK_TOLERANCE
    }
}

/// Cone point with Segre parameters `u = [u0 : u1]`, `v = [v0 : v1]`.
pub fn sample_cone_point<S: Scalar>(u: &[G<S>; 2], v: &[G<S>; 2]) -> Result<Vec<G<S>>> {
    if is_zero_vec(u) || is_zero_vec(v) {
        return Err(Error::Domain("Segre parameters must be nonzero".into()));
    }
    let a = u[0].clone() * v[0].clone();
    let b = u[1].clone() * v[1].clone();
    let c = u[0].clone() * v[1].clone();
    let d = -(u[1].clone() * v[0].clone());
    let half = G::<S>::real(S::from_ratio(1, 2));
    let minus_half_i = G::<S>::new(S::zero(), S::from_ratio(-1, 2));
    Ok(vec![
        (a.clone() + b.clone()) * half.clone(),
        (a - b) * minus_half_i.clone(),
        (c.clone() + d.clone()) * half,
        (c - d) * minus_half_i,
    ])
}

/// A complex 2-plane contained in the cone, tagged with the quaternionic
/// family whose complexified multiplications preserve it.
#[derive(Clone, PartialEq, Debug)]
pub struct GeneratingPlane<S> {
    pub basis: [Vec<G<S>>; 2],
    pub family: Side,
}

impl<S: Scalar> GeneratingPlane<S> {
    pub fn contains(&self, v: &[G<S>]) -> bool {
        in_span(&self.basis, v, rank_tol::<G<S>>())
    }

    /// Span equality.
    pub fn same_plane(&self, other: &GeneratingPlane<S>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// `s·basis[0] + t·basis[1]`.
    pub fn combination(&self, s: &G<S>, t: &G<S>) -> Vec<G<S>> {
        self.basis[0]
            .iter()
            .zip(&self.basis[1])
            .map(|(p, q)| s.clone() * p.clone() + t.clone() * q.clone())
            .collect()
    }
}

/// The plane of `family` through the null vector `x`: the span of
/// `x, Ix, Jx, Kx` for the complexified multiplications by `i, j, k`.
pub fn generating_plane<S: Scalar>(x: &[G<S>], family: Side) -> Result<GeneratingPlane<S>> {
    if x.len() != 4 {
        return Err(Error::UnsupportedDimension {
            expected: 4,
            got: x.len(),
        });
    }
    let tol = rank_tol::<G<S>>();
    let scale = crate::scalar::max_abs(x);
    if is_zero_vec(x) || (!S::EXACT && scale == 0.0) {
        return Err(Error::Domain("generating plane of the zero vector".into()));
    }
    if !dot(x, x).near_zero(tol * scale * scale) {
        return Err(Error::Domain("vector is not on the asymptotic cone".into()));
    }
    let q = Quaternion::from_slice(x);
    let images = [Quaternion::<G<S>>::i(), Quaternion::j(), Quaternion::k()]
        .map(|unit| unit.mul_on(family, &q).to_vec());

    let mut basis = vec![x.to_vec()];
    for v in images {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank(&trial, tol) > basis.len() {
            basis = trial;
        }
    }
    assert_eq!(
        basis.len(),
        2,
        "span of x, Ix, Jx, Kx must be a plane for a null vector"
    );
    let second = basis.pop().expect("two vectors");
    let first = basis.pop().expect("two vectors");
    Ok(GeneratingPlane {
        basis: [first, second],
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type C = G<Rational>;

    fn c(re: (i64, i64), im: (i64, i64)) -> C {
        C::new(Rational::from_ratio(re.0, re.1), Rational::from_ratio(im.0, im.1))
    }

    fn one() -> C {
        C::one()
    }

    #[test]
    fn segre_examples() {
        let x = sample_cone_point(&[one(), C::zero()], &[one(), C::zero()]).unwrap();
        assert_eq!(x, vec![c((1, 2), (0, 1)), c((0, 1), (-1, 2)), C::zero(), C::zero()]);
        let y = sample_cone_point(&[C::zero(), one()], &[C::zero(), one()]).unwrap();
        assert_eq!(y, vec![c((1, 2), (0, 1)), c((0, 1), (1, 2)), C::zero(), C::zero()]);
        assert!(dot(&x, &x).is_zero() && dot(&y, &y).is_zero());
        assert!(sample_cone_point(&[C::zero(), C::zero()], &[one(), one()]).is_err());
    }

    #[test]
    fn left_and_right_planes_meet_in_a_line() {
        let x = sample_cone_point(&[one(), C::zero()], &[one(), C::zero()]).unwrap();
        let left = generating_plane(&x, Side::Left).unwrap();
        let q = Quaternion::from_slice(&x);
        let kx = Quaternion::<C>::k().hamilton(&q).to_vec();
        let expected = GeneratingPlane {
            basis: [x.clone(), kx],
            family: Side::Left,
        };
        assert!(left.same_plane(&expected));

        let right = generating_plane(&x, Side::Right).unwrap();
        assert!(!left.same_plane(&right));
        let all: Vec<_> = left.basis.iter().chain(&right.basis).cloned().collect();
        assert_eq!(rank(&all, 0.0), 3);

        let doubled: Vec<C> = x.iter().map(|v| v.clone() * C::from_i64(2)).collect();
        assert!(generating_plane(&doubled, Side::Left).unwrap().same_plane(&left));
    }

    #[test]
    fn rejects_non_null_and_wrong_dimension() {
        let x = vec![one(), C::zero(), C::zero(), C::zero()];
        assert!(matches!(generating_plane(&x, Side::Left), Err(Error::Domain(_))));
        assert!(matches!(
            generating_plane(&x[..3], Side::Left),
            Err(Error::UnsupportedDimension { .. })
        ));
    }
}

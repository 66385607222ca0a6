use crate::error::{Error, Result};
use crate::linalg::{rank, solve_least_squares, FLOAT_RANK_TOLERANCE};
use crate::quaternions::{Matrix4, Orientation, Quaternion, Side};
use crate::scalar::Scalar;

use super::centers::center_from_a;
use super::circle::{Center, Circle};
use super::classify::{quaternionic_gamma, LinearQuaternionMap};
use crate::cone::VectorQuadraticMap;

/// Relative residual gate for fitting on the float backend.
pub const FIT_TOLERANCE: f64 = 1e-9;

/// A rectifiable bundle in `ℝ⁴` given by its side and `x ↦ Im A(x)`.
///
/// For `Both` the stored map is the left representation `Im(b x̄)`; the right
/// representation of the same bundle is `Im(x̄ b)`.
#[derive(Clone, PartialEq, Debug)]
pub struct BundleDescriptor<S> {
    orientation: Orientation,
    im_a: LinearQuaternionMap<S>,
}

fn near_equal<S: Scalar>(a: &Matrix4<S>, b: &Matrix4<S>) -> bool {
    let tol = if S::EXACT {
        0.0
    } else {
        FIT_TOLERANCE * a.max_abs().max(b.max_abs())
    };
    (a - b).rows().iter().flatten().all(|e| e.near_zero(tol))
}

/// `b` with `Im A(x) = Im(b x̄)`, read from `Im A(e0) = Im b` and the
/// `i`-coordinate of `Im A(e1) = −Im(b i)`, which is `−b0`.
fn common_point_quaternion<S: Scalar>(left: &LinearQuaternionMap<S>) -> Quaternion<S> {
    let m = left.matrix();
    Quaternion::new(-m[(1, 1)].clone(), m[(1, 0)].clone(), m[(2, 0)].clone(), m[(3, 0)].clone())
}

/// `x ↦ Im(b x̄)` (left) or `x ↦ Im(x̄ b)` (right).
pub fn common_point_map<S: Scalar>(b: &Quaternion<S>, side: Side) -> LinearQuaternionMap<S> {
    let images = std::array::from_fn(|l| {
        let e = Quaternion::<S>::unit(l).conj();
        match side {
            Side::Left => b.hamilton(&e),
            Side::Right => e.hamilton(b),
        }
        .im()
    });
    LinearQuaternionMap::from_images(images)
}

/// Whether `Im A` is the left representation of a common-point bundle.
pub fn is_common_point_form<S: Scalar>(left: &LinearQuaternionMap<S>) -> bool {
    let b = common_point_quaternion(left);
    near_equal(common_point_map(&b, Side::Left).matrix(), left.matrix())
}

impl<S: Scalar> BundleDescriptor<S> {
    pub fn new(orientation: Orientation, im_a: LinearQuaternionMap<S>) -> Result<Self> {
        let tol = if S::EXACT { 0.0 } else { FIT_TOLERANCE * im_a.max_abs() };
        if !im_a.re_row().iter().all(|v| v.near_zero(tol)) {
            return Err(Error::Domain("imA must take pure imaginary values".into()));
        }
        if orientation == Orientation::Both && !is_common_point_form(&im_a) {
            return Err(Error::Domain(
                "a both-sided descriptor must have the form Im(b·x̄)".into(),
            ));
        }
        Ok(Self {
            orientation,
            im_a: im_a.im(),
        })
    }

    /// Descriptor of the bundle of circles through `b/(b,b)`.
    pub fn common_point(b: &Quaternion<S>) -> Self {
        Self {
            orientation: Orientation::Both,
            im_a: common_point_map(b, Side::Left),
        }
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// The stored map (left representation for `Both`).
    pub fn im_a(&self) -> &LinearQuaternionMap<S> {
        &self.im_a
    }

    /// Side whose representation is stored.
    pub fn primary_side(&self) -> Side {
        match self.orientation {
            Orientation::Right => Side::Right,
            _ => Side::Left,
        }
    }

    /// `Im A` as seen from `side`.
    pub fn im_a_on(&self, side: Side) -> Result<LinearQuaternionMap<S>> {
        match (self.orientation, side) {
            (Orientation::Both, Side::Right) => {
                Ok(common_point_map(&common_point_quaternion(&self.im_a), Side::Right))
            }
            (o, s) if o.admits(s) => Ok(self.im_a.clone()),
            (o, s) => Err(Error::OrientationMismatch(o.name(), s.name())),
        }
    }

    /// `b` for common-point bundles.
    pub fn common_point_quaternion(&self) -> Option<Quaternion<S>> {
        (self.orientation == Orientation::Both).then(|| common_point_quaternion(&self.im_a))
    }

    /// Canonical `Γ`, with `(Γ(x), x) ≡ 0`.
    pub fn gamma(&self) -> VectorQuadraticMap<S> {
        quaternionic_gamma(&self.im_a, self.primary_side())
    }

    pub fn circle(&self, x: &[S]) -> Result<Circle<S>> {
        center_from_a(&self.im_a, x, self.primary_side())
    }
}

/// Result of [`fit_bundle`].
#[derive(Clone, PartialEq, Debug)]
pub enum FitOutcome<S> {
    Consistent(BundleDescriptor<S>),
    Inconsistent { left_residual: f64, right_residual: f64 },
}

struct SideFit<S> {
    map: LinearQuaternionMap<S>,
    residual: f64,
    consistent: bool,
}

/// The value of `Im A(x)` forced by one circle: `−½ x c⁻¹` (left) or
/// `−½ c⁻¹ x` (right); zero for a line.
fn forced_value<S: Scalar>(circle: &Circle<S>, side: Side) -> Result<Quaternion<S>> {
    let Center::Finite(c) = circle.center() else {
        return Ok(Quaternion::zero());
    };
    let x = Quaternion::from_slice(circle.tangent());
    let c_inv = Quaternion::from_slice(c).inv()?;
    let product = match side {
        Side::Left => x.hamilton(&c_inv),
        Side::Right => c_inv.hamilton(&x),
    };
    Ok(product.scale(&S::from_ratio(-1, 2)))
}

fn fit_side<S: Scalar>(samples: &[Circle<S>], side: Side) -> Result<SideFit<S>> {
    let tol = if S::EXACT { 0.0 } else { FLOAT_RANK_TOLERANCE };
    let targets = samples
        .iter()
        .map(|c| forced_value(c, side))
        .collect::<Result<Vec<_>>>()?;
    let a: Vec<Vec<S>> = samples.iter().map(|c| c.tangent().to_vec()).collect();
    let b: Vec<Vec<S>> = targets
        .iter()
        .map(|q| vec![q.x.clone(), q.y.clone(), q.z.clone()])
        .collect();
    let solution = solve_least_squares(&a, &b, tol)?;
    let matrix = Matrix4::from_fn(|r, c| if r == 0 { S::zero() } else { solution[c][r - 1].clone() });
    let map = LinearQuaternionMap::new(matrix);

    let mut residual = S::zero();
    let mut scale = 0.0_f64;
    for (circle, target) in samples.iter().zip(&targets) {
        let diff = map.eval(circle.tangent()) - target.clone();
        for v in diff.into_array() {
            let v = v.abs();
            if v > residual {
                residual = v;
            }
        }
        scale = scale.max(target.max_abs());
    }
    let consistent = if S::EXACT {
        residual.is_zero()
    } else {
        residual.to_f64() <= FIT_TOLERANCE * scale
    };
    Ok(SideFit {
        map,
        residual: residual.to_f64(),
        consistent,
    })
}

/// Recovers a bundle descriptor from sampled circles.
///
/// Each circle fixes the value of `Im A` at its tangent, so the map is a
/// least-squares solve under each side hypothesis, accepted when the residual
/// vanishes (exact) or is below [`FIT_TOLERANCE`] relative (float). Four
/// circles fit either side; telling the sides apart needs a fifth circle in
/// general position. The left hypothesis is tried first, and `Both` is
/// reported when the fitted map is a common-point bundle.
pub fn fit_bundle<S: Scalar>(samples: &[Circle<S>]) -> Result<FitOutcome<S>> {
    if let Some(c) = samples.iter().find(|c| c.dim() != 4) {
        return Err(Error::UnsupportedDimension {
            expected: 4,
            got: c.dim(),
        });
    }
    let tol = if S::EXACT { 0.0 } else { FLOAT_RANK_TOLERANCE };
    let tangents: Vec<Vec<S>> = samples.iter().map(|c| c.tangent().to_vec()).collect();
    let r = rank(&tangents, tol);
    if samples.len() < 4 || r < 4 {
        return Err(Error::NeedsMoreSamples(format!(
            "{} samples with tangent rank {r}; need tangents spanning 4 dimensions",
            samples.len()
        )));
    }
    let left = fit_side(samples, Side::Left)?;
    let right = fit_side(samples, Side::Right)?;
    let outcome = if left.consistent {
        let orientation = if right.consistent && is_common_point_form(&left.map) {
            Orientation::Both
        } else {
            Orientation::Left
        };
        FitOutcome::Consistent(BundleDescriptor {
            orientation,
            im_a: left.map,
        })
    } else if right.consistent {
        FitOutcome::Consistent(BundleDescriptor {
            orientation: Orientation::Right,
            im_a: right.map,
        })
    } else {
        FitOutcome::Inconsistent {
            left_residual: left.residual,
            right_residual: right.residual,
        }
    };
    Ok(outcome)
}

/// `t·B1 + (1−t)·B2` on `Im A`, for bundles of the same orientation.
/// Common-point bundles combine with either side.
pub fn barycentric_combine<S: Scalar>(
    first: &BundleDescriptor<S>,
    second: &BundleDescriptor<S>,
    t: &S,
) -> Result<BundleDescriptor<S>> {
    use Orientation::*;
    let orientation = match (first.orientation, second.orientation) {
        (Both, o) | (o, Both) => o,
        (a, b) if a == b => a,
        (a, b) => return Err(Error::OrientationMismatch(a.name(), b.name())),
    };
    let side = match orientation {
        Right => Side::Right,
        _ => Side::Left,
    };
    let s = S::one() - t.clone();
    let im_a = first.im_a_on(side)?.scale(t).add(&second.im_a_on(side)?.scale(&s));
    Ok(BundleDescriptor { orientation, im_a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::check_conditions;
    use crate::scalar::{int_vec, Field, Rational};

    type R = Rational;
    type Q = Quaternion<R>;

    fn x0_times(q: Q) -> LinearQuaternionMap<R> {
        LinearQuaternionMap::coordinate_times(0, &q)
    }

    fn sample_directions() -> Vec<Vec<R>> {
        vec![
            int_vec(&[1, 0, 0, 0]),
            int_vec(&[1, 1, 0, 0]),
            int_vec(&[1, 0, 1, 0]),
            int_vec(&[1, 0, 0, 1]),
            int_vec(&[2, -1, 3, 1]),
            int_vec(&[0, 1, 1, -2]),
        ]
    }

    fn circles(d: &BundleDescriptor<R>, n: usize) -> Vec<Circle<R>> {
        sample_directions()[..n].iter().map(|x| d.circle(x).unwrap()).collect()
    }

    #[test]
    fn fit_x0_i_from_four_circles() {
        let d = BundleDescriptor::new(Orientation::Left, x0_times(Q::i())).unwrap();
        match fit_bundle(&circles(&d, 4)).unwrap() {
            FitOutcome::Consistent(f) => assert_eq!(f, d),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fit_right_bundle_needs_five_circles() {
        let im = LinearQuaternionMap::from_images([Q::j(), Q::k(), Q::zero(), Q::i()]);
        let d = BundleDescriptor::new(Orientation::Right, im).unwrap();
        match fit_bundle(&circles(&d, 6)).unwrap() {
            FitOutcome::Consistent(f) => assert_eq!(f, d),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fit_common_point_bundle_is_both() {
        let d = BundleDescriptor::common_point(&Q::one());
        match fit_bundle(&circles(&d, 5)).unwrap() {
            FitOutcome::Consistent(f) => {
                assert_eq!(f.orientation(), Orientation::Both);
                assert_eq!(f.im_a(), &common_point_map(&Q::one(), Side::Left));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn perturbed_float_sample_is_inconsistent() {
        let d = BundleDescriptor::new(Orientation::Left, x0_times(Q::i())).unwrap();
        let mut samples: Vec<Circle<f64>> = circles(&d, 6).iter().map(Circle::to_f64).collect();
        let c = &samples[1];
        let mut center = c.center_vec().unwrap().to_vec();
        center[2] += 1e-3;
        samples[1] = Circle::new(c.tangent().to_vec(), Center::Finite(center)).unwrap();
        assert!(matches!(
            fit_bundle(&samples).unwrap(),
            FitOutcome::Inconsistent { .. }
        ));
    }

    #[test]
    fn too_few_samples() {
        let d = BundleDescriptor::new(Orientation::Left, x0_times(Q::i())).unwrap();
        assert!(matches!(fit_bundle(&circles(&d, 3)), Err(Error::NeedsMoreSamples(_))));
    }

    #[test]
    fn combine_examples() {
        let b1 = BundleDescriptor::new(Orientation::Left, x0_times(Q::i())).unwrap();
        let b2 = BundleDescriptor::new(Orientation::Left, x0_times(Q::k())).unwrap();
        let half = R::from_ratio(1, 2);
        let c = barycentric_combine(&b1, &b2, &half).unwrap();
        let expected = x0_times((Q::i() + Q::k()).scale(&half));
        assert_eq!(c.im_a(), &expected);
        assert!(check_conditions(&c.gamma()).is_ok());
        assert_eq!(barycentric_combine(&b1, &b2, &R::one()).unwrap(), b1);
        assert_eq!(barycentric_combine(&b1, &b2, &R::zero()).unwrap(), b2);

        let r = BundleDescriptor::new(Orientation::Right, x0_times(Q::j())).unwrap();
        assert_eq!(
            barycentric_combine(&b1, &r, &half),
            Err(Error::OrientationMismatch("left", "right"))
        );
    }

    #[test]
    fn both_descriptor_sides_describe_same_circles() {
        let b = Q::new(R::from_i64(1), R::from_i64(2), R::from_i64(-1), R::zero());
        let d = BundleDescriptor::common_point(&b);
        let right = d.im_a_on(Side::Right).unwrap();
        for x in sample_directions() {
            let from_left = d.circle(&x).unwrap();
            let from_right = center_from_a(&right, &x, Side::Right).unwrap();
            assert_eq!(from_left, from_right);
        }
        assert_eq!(d.common_point_quaternion(), Some(b));
        assert!(BundleDescriptor::new(Orientation::Both, x0_times(Q::i())).is_err());
        assert!(BundleDescriptor::new(Orientation::Left, x0_times(Q::one())).is_err());
    }
}

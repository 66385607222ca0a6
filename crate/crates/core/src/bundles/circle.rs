use crate::cone::VectorQuadraticMap;
use crate::error::{Error, Result};
use crate::scalar::{dot, is_zero_vec, scale, sub, to_f64_vec, Scalar};

/// Relative orthogonality gate for float inputs.
const FLOAT_ORTHOGONALITY_TOLERANCE: f64 = 1e-9;

/// Center of a circle through the origin; `Infinity` encodes a straight line.
#[derive(Clone, PartialEq, Debug)]
pub enum Center<S> {
    Finite(Vec<S>),
    Infinity,
}

/// A circle (or straight line) through the origin, stored by its tangent
/// direction at `0` and its center.
///
/// The tangent is a nonzero direction; it is not normalized, since unit
/// vectors are generally irrational. On the exact backend a finite center
/// must be orthogonal to the tangent (the center is `w/(w,w)` for an
/// acceleration `w ⊥ x`).
#[derive(Clone, PartialEq, Debug)]
pub struct Circle<S> {
    tangent: Vec<S>,
    center: Center<S>,
}

impl<S: Scalar> Circle<S> {
    pub fn new(tangent: Vec<S>, center: Center<S>) -> Result<Self> {
        if is_zero_vec(&tangent) {
            return Err(Error::Domain("circle tangent must be nonzero".into()));
        }
        if let Center::Finite(c) = &center {
            if c.len() != tangent.len() {
                return Err(Error::DimensionMismatch {
                    expected: tangent.len(),
                    got: c.len(),
                });
            }
            if is_zero_vec(c) {
                return Err(Error::Domain("circle through 0 cannot be centered at 0".into()));
            }
            if S::EXACT && !dot(c, &tangent).is_zero() {
                return Err(Error::Domain(
                    "center of a circle through 0 must be orthogonal to its tangent".into(),
                ));
            }
        }
        Ok(Self { tangent, center })
    }

    pub fn line(tangent: Vec<S>) -> Result<Self> {
        Self::new(tangent, Center::Infinity)
    }

    pub fn tangent(&self) -> &[S] {
        &self.tangent
    }

    pub fn center(&self) -> &Center<S> {
        &self.center
    }

    pub fn dim(&self) -> usize {
        self.tangent.len()
    }

    pub fn is_line(&self) -> bool {
        matches!(self.center, Center::Infinity)
    }

    pub fn center_vec(&self) -> Option<&[S]> {
        match &self.center {
            Center::Finite(c) => Some(c),
            Center::Infinity => None,
        }
    }

    /// Squared radius `(c, c)`; `None` for a line.
    pub fn radius_sq(&self) -> Option<S> {
        self.center_vec().map(|c| dot(c, c))
    }

    pub fn radius(&self) -> Option<f64> {
        self.radius_sq().map(|r| r.to_f64().sqrt())
    }

    pub fn unit_tangent(&self) -> Vec<f64> {
        let t = to_f64_vec(&self.tangent);
        let norm = t.iter().map(|v| v * v).sum::<f64>().sqrt();
        t.into_iter().map(|v| v / norm).collect()
    }

    /// Euclidean distance from `p` to the circle (or line).
    pub fn distance_to(&self, p: &[f64]) -> f64 {
        let t = self.unit_tangent();
        let along = p.iter().zip(&t).map(|(a, b)| a * b).sum::<f64>();
        match &self.center {
            Center::Infinity => {
                let perp_sq: f64 = p.iter().zip(&t).map(|(a, b)| (a - along * b).powi(2)).sum();
                perp_sq.max(0.0).sqrt()
            }
            Center::Finite(c) => {
                let c = to_f64_vec(c);
                let r = c.iter().map(|v| v * v).sum::<f64>().sqrt();
                let n: Vec<f64> = c.iter().map(|v| v / r).collect();
                let normal = p.iter().zip(&n).map(|(a, b)| a * b).sum::<f64>();
                // p = along·t + normal·n + out
                let out_sq: f64 = p
                    .iter()
                    .zip(t.iter().zip(&n))
                    .map(|(pi, (ti, ni))| (pi - along * ti - normal * ni).powi(2))
                    .sum();
                let in_plane = (along * along + (normal - r).powi(2)).sqrt() - r;
                (in_plane * in_plane + out_sq.max(0.0)).sqrt()
            }
        }
    }

    pub fn to_f64(&self) -> Circle<f64> {
        Circle {
            tangent: to_f64_vec(&self.tangent),
            center: match &self.center {
                Center::Finite(c) => Center::Finite(to_f64_vec(c)),
                Center::Infinity => Center::Infinity,
            },
        }
    }
}

/// Acceleration at `0`, with respect to the natural parameter, of the circle
/// tangent to `x` in the bundle of `Γ`:
/// `w = 2(Γ(x) − (Γ(x),x)x/(x,x)) / (x,x)`.
///
/// Only the part of `Γ(x)` orthogonal to `x` contributes, so `w` is the same
/// for `Γ` and `Γ + λ(x)x`.
pub fn acceleration<S: Scalar>(gamma: &VectorQuadraticMap<S>, x: &[S]) -> Result<Vec<S>> {
    if x.len() != gamma.dim() {
        return Err(Error::DimensionMismatch {
            expected: gamma.dim(),
            got: x.len(),
        });
    }
    if is_zero_vec(x) {
        return Err(Error::Domain("acceleration at the zero direction".into()));
    }
    let g = gamma.eval(x);
    let xx = dot(x, x);
    let along = dot(&g, x) / xx.clone();
    let perp = sub(&g, &scale(x, &along));
    Ok(scale(&perp, &(S::from_i64(2) / xx)))
}

/// The circle through `0` with velocity along `x` and acceleration `w ⊥ x`.
pub fn circle_from_acceleration<S: Scalar>(x: &[S], w: &[S]) -> Result<Circle<S>> {
    if x.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: w.len(),
        });
    }
    let xw = dot(x, w);
    let tol = FLOAT_ORTHOGONALITY_TOLERANCE * crate::scalar::max_abs(x) * crate::scalar::max_abs(w);
    if !xw.near_zero(tol) {
        return Err(Error::Domain("acceleration must be orthogonal to the velocity".into()));
    }
    if is_zero_vec(w) {
        return Circle::line(x.to_vec());
    }
    let ww = dot(w, w);
    let center = scale(w, &(S::one() / ww));
    if S::EXACT {
        Circle::new(x.to_vec(), Center::Finite(center))
    } else {
        Ok(Circle {
            tangent: x.to_vec(),
            center: Center::Finite(center),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::VectorQuadraticMap;
    use crate::quaternions::{mul_operator, Quaternion, Side};
    use crate::scalar::{basis, int_vec, ratio_vec, Field, Rational};

    type R = Rational;

    /// `Γ(x) = x0 · (i·x)` as an exact quadratic map.
    fn x0_times_ix() -> VectorQuadraticMap<R> {
        let m = mul_operator(&Quaternion::<R>::i(), Side::Left);
        let matrices = (0..4)
            .map(|k| {
                let mut mk = vec![vec![R::zero(); 4]; 4];
                for j in 0..4 {
                    // component k of x0·(Mx) = Σ_j m[k][j] x0 x_j
                    let c = m[(k, j)].clone() / R::from_i64(2);
                    mk[0][j] = mk[0][j].clone() + c.clone();
                    mk[j][0] = mk[j][0].clone() + c;
                }
                mk
            })
            .collect();
        VectorQuadraticMap::new(matrices).unwrap()
    }

    #[test]
    fn acceleration_examples() {
        let radial = VectorQuadraticMap::radial(&basis::<R>(4, 0));
        assert_eq!(acceleration(&radial, &basis(4, 1)).unwrap(), int_vec(&[2, 0, 0, 0]));

        let gauge = VectorQuadraticMap::gauge(&basis::<R>(4, 0));
        let x = int_vec::<R>(&[3, -1, 2, 5]);
        assert!(is_zero_vec(&acceleration(&gauge, &x).unwrap()));

        let g = x0_times_ix();
        assert_eq!(acceleration(&g, &basis(4, 0)).unwrap(), int_vec(&[0, 2, 0, 0]));
        assert!(acceleration(&g, &vec![R::zero(); 4]).is_err());
    }

    #[test]
    fn circle_from_acceleration_examples() {
        let c = circle_from_acceleration(&basis::<R>(4, 1), &int_vec(&[2, 0, 0, 0])).unwrap();
        assert_eq!(c.center_vec().unwrap(), ratio_vec::<R>(&[(1, 2), (0, 1), (0, 1), (0, 1)]));
        assert_eq!(c.radius_sq(), Some(R::from_ratio(1, 4)));

        assert!(circle_from_acceleration(&basis::<R>(4, 1), &vec![R::zero(); 4])
            .unwrap()
            .is_line());

        let c = circle_from_acceleration(&basis::<R>(4, 0), &int_vec(&[0, 2, 0, 0])).unwrap();
        assert_eq!(c.center_vec().unwrap(), ratio_vec::<R>(&[(0, 1), (1, 2), (0, 1), (0, 1)]));

        assert!(circle_from_acceleration(&basis::<R>(4, 0), &int_vec(&[1, 1, 0, 0])).is_err());
    }

    #[test]
    fn distance_to_points() {
        let c = Circle::<f64>::new(vec![0.0, 1.0], Center::Finite(vec![0.5, 0.0])).unwrap();
        assert!(c.distance_to(&[1.0, 0.0]) < 1e-15);
        assert!((c.distance_to(&[0.5, 0.0]) - 0.5).abs() < 1e-15);
        let l = Circle::<f64>::line(vec![1.0, 1.0]).unwrap();
        assert!((l.distance_to(&[1.0, -1.0]) - 2f64.sqrt()).abs() < 1e-15);
    }
}

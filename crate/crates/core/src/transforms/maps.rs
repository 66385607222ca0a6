use crate::bundles::LinearQuaternionMap;
use crate::cone::VectorQuadraticMap;
use crate::error::{Error, Result};
use crate::quaternions::{mul_operator, Matrix4, Quaternion, Side};
use crate::scalar::{add, dot, is_zero_vec, scale, to_f64_vec, Scalar};

/// Inversion in the unit sphere, `x ↦ x/(x,x)`.
pub fn invert<S: Scalar>(x: &[S]) -> Result<Vec<S>> {
    if is_zero_vec(x) {
        return Err(Error::Domain("inversion at the origin".into()));
    }
    let xx = dot(x, x);
    Ok(scale(x, &(S::one() / xx)))
}

/// `T^a(x) = ((a,a)x + (x,x)a) / ((a,a) + 2(a,x) + (x,x))`: inversion,
/// translation by `a`, inversion. Fixes `0` and maps circles through `0` to
/// circles through `0`.
pub fn t_a<S: Scalar>(a: &[S], x: &[S]) -> Result<Vec<S>> {
    if a.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: x.len(),
        });
    }
    if is_zero_vec(a) {
        return Err(Error::Domain("T^a needs a nonzero translation".into()));
    }
    let aa = dot(a, a);
    let xx = dot(x, x);
    let ax = dot(a, x);
    let den = aa.clone() + S::from_i64(2) * ax + xx.clone();
    if den.is_zero() {
        return Err(Error::Pole);
    }
    let num = add(&scale(x, &aa), &scale(a, &xx));
    Ok(scale(&num, &(S::one() / den)))
}

/// Quadratic term of `T^a`: `((x,x)a − 2(a,x)x)/(a,a)`.
pub fn t_a_quadratic<S: Scalar>(a: &[S]) -> Result<VectorQuadraticMap<S>> {
    if is_zero_vec(a) {
        return Err(Error::Domain("T^a needs a nonzero translation".into()));
    }
    let inv_aa = S::one() / dot(a, a);
    let two_a = scale(a, &S::from_i64(2));
    Ok(VectorQuadraticMap::radial(a)
        .sub(&VectorQuadraticMap::gauge(&two_a))
        .scale(&inv_aa))
}

/// `x ↦ Lx + c` on `ℝⁿ`.
#[derive(Clone, PartialEq, Debug)]
pub struct AffineMap<S> {
    linear: Vec<Vec<S>>,
    constant: Vec<S>,
}

impl<S: Scalar> AffineMap<S> {
    pub fn new(linear: Vec<Vec<S>>, constant: Vec<S>) -> Result<Self> {
        let n = constant.len();
        if linear.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: linear.len(),
            });
        }
        if let Some(row) = linear.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
        Ok(Self { linear, constant })
    }

    pub fn from_matrix(m: &Matrix4<S>, constant: Quaternion<S>) -> Self {
        Self {
            linear: m.rows().iter().map(|r| r.to_vec()).collect(),
            constant: constant.to_vec(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            linear: (0..n)
                .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
                .collect(),
            constant: vec![S::zero(); n],
        }
    }

    pub fn constant_map(c: Vec<S>) -> Self {
        let n = c.len();
        Self {
            linear: vec![vec![S::zero(); n]; n],
            constant: c,
        }
    }

    pub fn dim(&self) -> usize {
        self.constant.len()
    }

    pub fn linear(&self) -> &[Vec<S>] {
        &self.linear
    }

    pub fn constant(&self) -> &[S] {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.constant) && self.linear.iter().all(|r| is_zero_vec(r))
    }

    pub fn eval(&self, x: &[S]) -> Vec<S> {
        self.linear
            .iter()
            .zip(&self.constant)
            .map(|(row, c)| dot(row, x) + c.clone())
            .collect()
    }

    pub fn to_f64(&self) -> AffineMap<f64> {
        AffineMap {
            linear: self.linear.iter().map(|r| to_f64_vec(r)).collect(),
            constant: to_f64_vec(&self.constant),
        }
    }
}

/// `x ↦ B(x)⁻¹A(x)` (left) or `A(x)B(x)⁻¹` (right) for affine `A`, `B`
/// with quaternion values.
#[derive(Clone, PartialEq, Debug)]
pub struct FractionalTransform<S> {
    side: Side,
    numerator: AffineMap<S>,
    denominator: AffineMap<S>,
}

impl<S: Scalar> FractionalTransform<S> {
    pub fn new(side: Side, numerator: AffineMap<S>, denominator: AffineMap<S>) -> Result<Self> {
        for m in [&numerator, &denominator] {
            if m.dim() != 4 {
                return Err(Error::UnsupportedDimension {
                    expected: 4,
                    got: m.dim(),
                });
            }
        }
        if denominator.is_zero() {
            return Err(Error::Domain("denominator is identically zero".into()));
        }
        Ok(Self {
            side,
            numerator,
            denominator,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn numerator(&self) -> &AffineMap<S> {
        &self.numerator
    }

    pub fn denominator(&self) -> &AffineMap<S> {
        &self.denominator
    }

    pub fn apply(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: x.len(),
            });
        }
        let num = Quaternion::from_slice(&self.numerator.eval(x));
        let den = Quaternion::from_slice(&self.denominator.eval(x));
        if den.is_zero() {
            return Err(Error::Pole);
        }
        let inv = den.inv()?;
        let out = match self.side {
            Side::Left => inv.hamilton(&num),
            Side::Right => num.hamilton(&inv),
        };
        Ok(out.to_vec())
    }

    pub fn to_f64(&self) -> FractionalTransform<f64> {
        FractionalTransform {
            side: self.side,
            numerator: self.numerator.to_f64(),
            denominator: self.denominator.to_f64(),
        }
    }
}

pub fn qft_apply<S: Scalar>(t: &FractionalTransform<S>, x: &[S]) -> Result<Vec<S>> {
    t.apply(x)
}

/// `x ↦ (1 − A(x))⁻¹x` (left) or `x(1 − A(x))⁻¹` (right).
pub fn qft_from_a<S: Scalar>(a: &LinearQuaternionMap<S>, side: Side) -> FractionalTransform<S> {
    let minus_a = a.matrix().scale(&-S::one());
    FractionalTransform {
        side,
        numerator: AffineMap::identity(4),
        denominator: AffineMap::from_matrix(&minus_a, Quaternion::one()),
    }
}

/// `x ↦ (xa + b)⁻¹(xc + d)`.
pub fn quaternionic_projective<S: Scalar>(
    a: &Quaternion<S>,
    b: &Quaternion<S>,
    c: &Quaternion<S>,
    d: &Quaternion<S>,
) -> Result<FractionalTransform<S>> {
    FractionalTransform::new(
        Side::Left,
        AffineMap::from_matrix(&mul_operator(c, Side::Right), d.clone()),
        AffineMap::from_matrix(&mul_operator(a, Side::Right), b.clone()),
    )
}

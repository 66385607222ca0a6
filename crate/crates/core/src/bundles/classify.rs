use crate::cone::{check_conditions, cone_divide, parallel_decompose, Poly, PolyMap, VectorQuadraticMap};
use crate::error::{Error, Result};
use crate::quaternions::{Matrix4, Orientation, Quaternion, Side};
use crate::scalar::{dot, is_zero_vec, scale, Field, Scalar};

/// A linear map `ℝ⁴ → ℍ`, `x ↦ A(x)`, stored as the 4×4 matrix whose row `k`
/// gives the `k`-th quaternion coordinate.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearQuaternionMap<S> {
    matrix: Matrix4<S>,
}

impl<S: Scalar> LinearQuaternionMap<S> {
    pub fn new(matrix: Matrix4<S>) -> Self {
        Self { matrix }
    }

    pub fn zero() -> Self {
        Self::new(Matrix4::zero())
    }

    /// `x ↦ Σ_l x_l · coeffs[l]`.
    pub fn from_images(images: [Quaternion<S>; 4]) -> Self {
        Self::new(Matrix4::from_columns(images.map(Quaternion::into_array)))
    }

    /// `x ↦ x_var · q`.
    pub fn coordinate_times(var: usize, q: &Quaternion<S>) -> Self {
        let mut images: [Quaternion<S>; 4] = std::array::from_fn(|_| Quaternion::zero());
        images[var] = q.clone();
        Self::from_images(images)
    }

    pub fn matrix(&self) -> &Matrix4<S> {
        &self.matrix
    }

    pub fn eval(&self, x: &[S]) -> Quaternion<S> {
        Quaternion::from_array(self.matrix.mul_vec(x))
    }

    pub fn eval_q(&self, x: &Quaternion<S>) -> Quaternion<S> {
        self.matrix.apply(x)
    }

    /// `x ↦ Im A(x)`: the same matrix with the real row cleared.
    pub fn im(&self) -> Self {
        let mut m = self.matrix.clone();
        for c in 0..4 {
            m[(0, c)] = S::zero();
        }
        Self::new(m)
    }

    /// The functional `x ↦ Re A(x)`.
    pub fn re_row(&self) -> [S; 4] {
        self.matrix.row(0)
    }

    pub fn is_pure_imaginary(&self) -> bool {
        self.matrix.row(0).iter().all(Field::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.matrix + &other.matrix)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.matrix.scale(s))
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.max_abs()
    }

    pub fn to_f64(&self) -> LinearQuaternionMap<f64> {
        LinearQuaternionMap::new(self.matrix.to_f64())
    }

    /// `A(x)` with the coordinates of `x` as polynomial variables.
    fn symbolic(&self) -> Quaternion<Poly<S>> {
        Quaternion::from_array(std::array::from_fn(|k| Poly::linear(&self.matrix.row(k))))
    }
}

fn symbolic_x<S: Scalar>() -> Quaternion<Poly<S>> {
    Quaternion::from_array(std::array::from_fn(|k| Poly::var(4, k)))
}

fn require_dim4<S: Scalar>(gamma: &VectorQuadraticMap<S>) -> Result<()> {
    if gamma.dim() != 4 {
        return Err(Error::UnsupportedDimension {
            expected: 4,
            got: gamma.dim(),
        });
    }
    Ok(())
}

/// `Γ(x) = A(x)·x` (left) or `x·A(x)` (right).
pub fn quaternionic_gamma<S: Scalar>(a: &LinearQuaternionMap<S>, side: Side) -> VectorQuadraticMap<S> {
    let product = a.symbolic().mul_on(side, &symbolic_x());
    VectorQuadraticMap::from_polymap(&PolyMap::new(4, product.into_array().into()))
        .expect("product of two linear quaternions is quadratic")
}

/// `Γ(x)·x̄` (left) or `x̄·Γ(x)` (right), which is divisible by `(x,x)`
/// exactly when `Γ` has the form `A(x)x` (resp. `xA(x)`).
fn conjugate_product<S: Scalar>(gamma: &VectorQuadraticMap<S>, side: Side) -> PolyMap<S> {
    let g: [Poly<S>; 4] = gamma
        .to_polymap()
        .into_components()
        .try_into()
        .expect("dimension checked");
    let g = Quaternion::from_array(g);
    let xbar = symbolic_x::<S>().conj();
    let product = match side {
        Side::Left => g.hamilton(&xbar),
        Side::Right => xbar.hamilton(&g),
    };
    PolyMap::new(4, product.into_array().into())
}

/// Which quaternionic family the bundle of `Γ` belongs to.
///
/// `Ok(None)` is only possible for maps outside both components; for maps
/// passing the rectifiability conditions at least one side always divides.
pub fn determine_family<S: Scalar>(gamma: &VectorQuadraticMap<S>) -> Result<Option<Orientation>> {
    require_dim4(gamma)?;
    check_conditions(gamma)?;
    let left = cone_divide(&conjugate_product(gamma, Side::Left))?.is_exact();
    let right = cone_divide(&conjugate_product(gamma, Side::Right))?.is_exact();
    Ok(Orientation::from_flags(left, right))
}

/// Writes `Γ(x) = A(x)x` (left) or `x A(x)` (right).
///
/// `A` is the quotient of `Γ(x)x̄` (resp. `x̄Γ(x)`) by `(x,x)`. Its imaginary
/// part is unique; the real part is `(Γ(x),x)/(x,x)`.
pub fn decompose_quaternionic<S: Scalar>(
    gamma: &VectorQuadraticMap<S>,
    side: Side,
) -> Result<LinearQuaternionMap<S>> {
    require_dim4(gamma)?;
    let division = cone_divide(&conjugate_product(gamma, side))?;
    if !division.is_exact() {
        return Err(Error::DecompositionFailure {
            side: side.name(),
            remainder: division.remainder.to_report(),
        });
    }
    let rows: [[S; 4]; 4] = std::array::from_fn(|k| {
        division
            .quotient
            .component(k)
            .linear_coefficients()
            .try_into()
            .expect("four variables")
    });
    let a = LinearQuaternionMap::new(Matrix4::from_rows(rows));
    let residual = gamma.sub(&quaternionic_gamma(&a, side));
    if !residual.is_zero() {
        return Err(Error::DecompositionFailure {
            side: side.name(),
            remainder: residual.to_polymap().to_report(),
        });
    }
    Ok(a)
}

/// Second common point of all circles of a bundle.
#[derive(Clone, PartialEq, Debug)]
pub enum CommonPoint<S> {
    Point(Vec<S>),
    /// Every circle is a straight line.
    AtInfinity,
    None,
}

/// `b/(b,b)` when `Γ(x) = b(x,x) + λ(x)x`; at infinity when `b = 0`.
pub fn common_point<S: Scalar>(gamma: &VectorQuadraticMap<S>) -> Result<CommonPoint<S>> {
    check_conditions(gamma)?;
    match parallel_decompose(gamma) {
        Ok(d) if is_zero_vec(&d.b) => Ok(CommonPoint::AtInfinity),
        Ok(d) => {
            let bb = dot(&d.b, &d.b);
            Ok(CommonPoint::Point(scale(&d.b, &(S::one() / bb))))
        }
        Err(Error::NotParallel { .. }) => Ok(CommonPoint::None),
        Err(e) => Err(e),
    }
}

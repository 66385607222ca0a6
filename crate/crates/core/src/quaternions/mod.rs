//! Quaternion arithmetic over any scalar backend, multiplication operators as
//! 4×4 matrices, and recognition of quaternionic multiplications.
//!
//! Coordinates are always ordered `(1, i, j, k) ↔ (x0, x1, x2, x3)`.

mod detect;
mod matrix;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use detect::{detect_quaternionic_multiplication, mul_operator, Detection, DETECTION_TOLERANCE};
pub use matrix::Matrix4;

use crate::error::{Error, Result};
use crate::scalar::{Field, GaussianScalar, Scalar};

/// Minimal ring structure needed by the Hamilton product.
///
/// Implemented for every scalar backend and also for polynomials, which lets
/// the same product compute `Γ(x)·x̄` symbolically.
pub trait Ring:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Side of a quaternionic multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    pub fn parse(text: &str) -> Option<Side> {
        match text {
            "left" => Some(Side::Left),
            "right" => Some(Side::Right),
            _ => None,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which quaternionic structure(s) an object is compatible with.
///
/// `Both` arises for real quaternions (which commute with everything) and for
/// common-point bundles, which lie in both components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Right,
    Both,
}

impl Orientation {
    pub fn name(self) -> &'static str {
        match self {
            Orientation::Left => "left",
            Orientation::Right => "right",
            Orientation::Both => "both",
        }
    }

    pub fn parse(text: &str) -> Option<Orientation> {
        match text {
            "left" => Some(Orientation::Left),
            "right" => Some(Orientation::Right),
            "both" => Some(Orientation::Both),
            _ => None,
        }
    }

    pub fn admits(self, side: Side) -> bool {
        matches!(
            (self, side),
            (Orientation::Both, _) | (Orientation::Left, Side::Left) | (Orientation::Right, Side::Right)
        )
    }

    pub fn from_flags(left: bool, right: bool) -> Option<Orientation> {
        match (left, right) {
            (true, true) => Some(Orientation::Both),
            (true, false) => Some(Orientation::Left),
            (false, true) => Some(Orientation::Right),
            (false, false) => None,
        }
    }
}

impl From<Side> for Orientation {
    fn from(side: Side) -> Self {
        match side {
            Side::Left => Orientation::Left,
            Side::Right => Orientation::Right,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `w + x·i + y·j + z·k`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Quaternion<T> {
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn from_array([w, x, y, z]: [T; 4]) -> Self {
        Self { w, x, y, z }
    }

    pub fn into_array(self) -> [T; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> Quaternion<U> {
        Quaternion::new(f(self.w), f(self.x), f(self.y), f(self.z))
    }
}

impl<T: Clone> Quaternion<T> {
    pub fn to_array(&self) -> [T; 4] {
        [self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn to_vec(&self) -> Vec<T> {
        self.to_array().to_vec()
    }

    /// Reads the first four coordinates of `v`.
    pub fn from_slice(v: &[T]) -> Self {
        assert!(v.len() >= 4, "quaternion needs 4 coordinates, got {}", v.len());
        Self::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
    }
}

impl<T: Ring> Quaternion<T> {
    /// Quaternionic conjugation: negates the `i, j, k` parts.
    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    /// Sum of squared coordinates, `(a, a)`.
    pub fn norm_sq(&self) -> T {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }

    /// Euclidean inner product of the coordinate vectors.
    pub fn inner(&self, other: &Self) -> T {
        self.w.clone() * other.w.clone()
            + self.x.clone() * other.x.clone()
            + self.y.clone() * other.y.clone()
            + self.z.clone() * other.z.clone()
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(
            self.w.clone() * s.clone(),
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s.clone(),
        )
    }

    /// Hamilton product `self · rhs`.
    pub fn hamilton(&self, rhs: &Self) -> Self {
        let (a0, a1, a2, a3) = (&self.w, &self.x, &self.y, &self.z);
        let (b0, b1, b2, b3) = (&rhs.w, &rhs.x, &rhs.y, &rhs.z);
        let m = |p: &T, q: &T| p.clone() * q.clone();
        Self::new(
            m(a0, b0) - m(a1, b1) - m(a2, b2) - m(a3, b3),
            m(a0, b1) + m(a1, b0) + m(a2, b3) - m(a3, b2),
            m(a0, b2) - m(a1, b3) + m(a2, b0) + m(a3, b1),
            m(a0, b3) + m(a1, b2) - m(a2, b1) + m(a3, b0),
        )
    }

    /// Product on the requested side: `self·x` for left, `x·self` for right.
    pub fn mul_on(&self, side: Side, x: &Self) -> Self {
        match side {
            Side::Left => self.hamilton(x),
            Side::Right => x.hamilton(self),
        }
    }
}

impl<F: Field> Quaternion<F> {
    pub fn zero() -> Self {
        Self::new(F::zero(), F::zero(), F::zero(), F::zero())
    }

    pub fn one() -> Self {
        Self::real(F::one())
    }

    pub fn real(w: F) -> Self {
        Self::new(w, F::zero(), F::zero(), F::zero())
    }

    pub fn i() -> Self {
        Self::new(F::zero(), F::one(), F::zero(), F::zero())
    }

    pub fn j() -> Self {
        Self::new(F::zero(), F::zero(), F::one(), F::zero())
    }

    pub fn k() -> Self {
        Self::new(F::zero(), F::zero(), F::zero(), F::one())
    }

    /// The basis quaternion for coordinate `index` (0 ↦ 1, 1 ↦ i, ...).
    pub fn unit(index: usize) -> Self {
        match index {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::j(),
            3 => Self::k(),
            _ => panic!("quaternion basis index {index} out of range"),
        }
    }

    pub fn re(&self) -> F {
        self.w.clone()
    }

    /// Pure-imaginary part (real coordinate set to zero).
    pub fn im(&self) -> Self {
        Self::new(F::zero(), self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// `conj(a) / (a, a)`.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::Domain("inverse of the zero quaternion".into()));
        }
        let r = F::one() / n;
        Ok(self.conj().scale(&r))
    }

    pub fn max_abs(&self) -> f64 {
        [&self.w, &self.x, &self.y, &self.z]
            .into_iter()
            .map(Field::magnitude)
            .fold(0.0, f64::max)
    }
}

impl<S: Scalar> Quaternion<S> {
    pub fn to_f64(&self) -> Quaternion<f64> {
        self.clone().map(|c| c.to_f64())
    }

    /// Embeds into the complexified quaternions `ℍ ⊗ ℂ`.
    pub fn complexify(&self) -> Quaternion<GaussianScalar<S>> {
        self.clone().map(GaussianScalar::real)
    }
}

impl<T: Ring> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Ring> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: Ring> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<T: Ring> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.hamilton(&rhs)
    }
}

impl<T: fmt::Debug> fmt::Debug for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}, {:?}, {:?}]", self.w, self.x, self.y, self.z)
    }
}

pub fn qmul<T: Ring>(a: &Quaternion<T>, b: &Quaternion<T>) -> Quaternion<T> {
    a.hamilton(b)
}

pub fn qconj<T: Ring>(a: &Quaternion<T>) -> Quaternion<T> {
    a.conj()
}

pub fn qinv<F: Field>(a: &Quaternion<F>) -> Result<Quaternion<F>> {
    a.inv()
}

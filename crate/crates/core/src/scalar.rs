//! Scalar backends.
//!
//! Every algebraic routine in this crate is generic over [`Field`]. Two real
//! backends implement [`Scalar`]: [`Rational`] (arbitrary precision, exact) and
//! `f64`. [`GaussianScalar`] adjoins `i` to either backend and is used for
//! computations on the complexified space (points of the asymptotic cone).

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed as _;

use crate::error::Error;

/// Exact rational number with arbitrary precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// A commutative field with an explicit exactness flag.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` when arithmetic never rounds.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    /// Size estimate used for pivot selection and tolerance gates.
    fn magnitude(&self) -> f64;

    /// Exact zero test on exact backends, `magnitude() <= tol` otherwise.
    fn near_zero(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }
}

/// A real scalar backend.
pub trait Scalar: Field + PartialOrd + Display {
    /// Short backend name used in reports.
    const BACKEND: &'static str;

    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn from_f64(v: f64) -> Result<Self, Error>;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Parses the textual form used by the interchange format.
    fn parse(text: &str) -> Result<Self, Error>;

    /// Textual form used by remainder reports.
    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self)
            .map(f64::abs)
            .unwrap_or(f64::INFINITY)
    }
}

impl Scalar for Rational {
    const BACKEND: &'static str = "exact";

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_f64(v: f64) -> Result<Self, Error> {
        Rational::from_float(v).ok_or_else(|| Error::Domain(format!("{v} is not finite")))
    }
    fn abs(&self) -> Self {
        num_traits::Signed::abs(self)
    }
    fn to_text(&self) -> String {
        format_rational(self)
    }

    /// Accepts `p/q` with `q > 0`, or a bare integer `p`.
    fn parse(text: &str) -> Result<Self, Error> {
        let bad = || Error::Parse {
            field: String::new(),
            message: format!("`{text}` is not an exact scalar of the form p/q"),
        };
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let num: BigInt = parse_integer(num).ok_or_else(bad)?;
        let den: BigInt = parse_integer(den).ok_or_else(bad)?;
        if !den.is_positive() {
            return Err(bad());
        }
        Ok(Rational::new(num, den))
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical `p/q` text for an exact scalar (the denominator is always written).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Field for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn magnitude(&self) -> f64 {
        f64::abs(*self)
    }
}

impl Scalar for f64 {
    const BACKEND: &'static str = "float";

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64(v: f64) -> Result<Self, Error> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain(format!("{v} is not finite")))
        }
    }
    fn parse(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n: f64 = n.parse().map_err(|_| bad_float(text))?;
            let d: f64 = d.parse().map_err(|_| bad_float(text))?;
            return Self::from_f64(n / d);
        }
        text.parse::<f64>()
            .map_err(|_| bad_float(text))
            .and_then(Self::from_f64)
    }
}

fn bad_float(text: &str) -> Error {
    Error::Parse {
        field: String::new(),
        message: format!("`{text}` is not a decimal literal"),
    }
}

/// Element of `S(i)`: the complexification of a real scalar backend.
#[derive(Clone, PartialEq, Default)]
pub struct GaussianScalar<S> {
    pub re: S,
    pub im: S,
}

impl<S: Scalar> GaussianScalar<S> {
    pub fn new(re: S, im: S) -> Self {
        Self { re, im }
    }

    pub fn real(re: S) -> Self {
        Self { re, im: S::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self {
            re: S::zero(),
            im: S::one(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re² + im²`.
    pub fn norm_sq(&self) -> S {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            re: self.re.clone() * s.clone(),
            im: self.im.clone() * s.clone(),
        }
    }
}

impl<S: Debug> Debug for GaussianScalar<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl<S: Scalar> Display for GaussianScalar<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl<S: Scalar> From<S> for GaussianScalar<S> {
    fn from(re: S) -> Self {
        Self::real(re)
    }
}

impl<S: Scalar> Add for GaussianScalar<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<S: Scalar> Sub for GaussianScalar<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<S: Scalar> Mul for GaussianScalar<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Self::new(re, im)
    }
}

impl<S: Scalar> Div for GaussianScalar<S> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let den = rhs.norm_sq();
        let num = self * rhs.conj();
        Self::new(num.re / den.clone(), num.im / den)
    }
}

impl<S: Scalar> Neg for GaussianScalar<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl<S: Scalar> Field for GaussianScalar<S> {
    const EXACT: bool = S::EXACT;

    fn zero() -> Self {
        Self::real(S::zero())
    }
    fn one() -> Self {
        Self::real(S::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::real(S::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn magnitude(&self) -> f64 {
        self.re.magnitude().hypot(self.im.magnitude())
    }
}

/// Euclidean (bilinear, not Hermitian) inner product.
pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn scale<F: Field>(v: &[F], s: &F) -> Vec<F> {
    v.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(Field::is_zero)
}

/// Standard basis vector `e_k` of length `n`.
pub fn basis<F: Field>(n: usize, k: usize) -> Vec<F> {
    (0..n)
        .map(|i| if i == k { F::one() } else { F::zero() })
        .collect()
}

pub fn to_f64_vec<S: Scalar>(v: &[S]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

pub fn ratio_vec<S: Scalar>(v: &[(i64, i64)]) -> Vec<S> {
    v.iter().map(|&(n, d)| S::from_ratio(n, d)).collect()
}

pub fn int_vec<S: Scalar>(v: &[i64]) -> Vec<S> {
    v.iter().map(|&n| S::from_i64(n)).collect()
}

/// Largest absolute entry, as `f64`.
pub fn max_abs<F: Field>(v: &[F]) -> f64 {
    v.iter().map(Field::magnitude).fold(0.0, f64::max)
}

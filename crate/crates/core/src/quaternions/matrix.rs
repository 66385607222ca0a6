use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::scalar::{Field, Scalar};

use super::Quaternion;

/// Dense 4×4 matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix4<F> {
    rows: [[F; 4]; 4],
}

impl<F: Field> Matrix4<F> {
    pub fn from_rows(rows: [[F; 4]; 4]) -> Self {
        Self { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> F) -> Self {
        Self {
            rows: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: [[F; 4]; 4]) -> Self {
        Self::from_fn(|r, c| columns[c][r].clone())
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| F::zero())
    }

    pub fn identity() -> Self {
        Self::scalar(F::one())
    }

    pub fn scalar(c: F) -> Self {
        Self::from_fn(|r, col| if r == col { c.clone() } else { F::zero() })
    }

    pub fn rows(&self) -> &[[F; 4]; 4] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> [F; 4] {
        self.rows[r].clone()
    }

    pub fn column(&self, c: usize) -> [F; 4] {
        std::array::from_fn(|r| self.rows[r][c].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.rows[c][r].clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_fn(|r, c| self.rows[r][c].clone() * s.clone())
    }

    pub fn mul_vec(&self, v: &[F]) -> [F; 4] {
        assert_eq!(v.len(), 4);
        std::array::from_fn(|r| {
            (0..4).fold(F::zero(), |acc, c| acc + self.rows[r][c].clone() * v[c].clone())
        })
    }

    /// Applies the matrix to the coordinate vector of a quaternion.
    pub fn apply(&self, q: &Quaternion<F>) -> Quaternion<F> {
        Quaternion::from_array(self.mul_vec(&q.to_array()))
    }

    pub fn max_abs(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .map(Field::magnitude)
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Field::is_zero)
    }

    /// Determinant by cofactor expansion.
    pub fn det(&self) -> F {
        let m = &self.rows;
        let det3 = |skip: usize| {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let e = |r: usize, c: usize| m[r][cols[c]].clone();
            e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1))
                - e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0))
                + e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0))
        };
        (0..4).fold(F::zero(), |acc, c| {
            let term = m[0][c].clone() * det3(c);
            if c % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    }

    pub fn map<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> Matrix4<G> {
        Matrix4::from_fn(|r, c| f(&self.rows[r][c]))
    }
}

impl<S: Scalar> Matrix4<S> {
    pub fn to_f64(&self) -> Matrix4<f64> {
        self.map(Scalar::to_f64)
    }
}

impl<F> Index<(usize, usize)> for Matrix4<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.rows[r][c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix4<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.rows[r][c]
    }
}

impl<F: Field> Add for &Matrix4<F> {
    type Output = Matrix4<F>;
    fn add(self, rhs: Self) -> Matrix4<F> {
        Matrix4::from_fn(|r, c| self.rows[r][c].clone() + rhs.rows[r][c].clone())
    }
}

impl<F: Field> Sub for &Matrix4<F> {
    type Output = Matrix4<F>;
    fn sub(self, rhs: Self) -> Matrix4<F> {
        Matrix4::from_fn(|r, c| self.rows[r][c].clone() - rhs.rows[r][c].clone())
    }
}

impl<F: Field> Mul for &Matrix4<F> {
    type Output = Matrix4<F>;
    fn mul(self, rhs: Self) -> Matrix4<F> {
        Matrix4::from_fn(|r, c| {
            (0..4).fold(F::zero(), |acc, k| {
                acc + self.rows[r][k].clone() * rhs.rows[k][c].clone()
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn det_of_diagonal_and_permutation() {
        let d = Matrix4::<Rational>::from_fn(|r, c| {
            if r == c {
                Rational::from_i64(r as i64 + 1)
            } else {
                Rational::zero()
            }
        });
        assert_eq!(d.det(), Rational::from_i64(24));
        let swap = Matrix4::<Rational>::from_fn(|r, c| {
            let target = match r {
                0 => 1,
                1 => 0,
                other => other,
            };
            if c == target {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        assert_eq!(swap.det(), Rational::from_i64(-1));
    }

    #[test]
    fn product_with_identity() {
        let m = Matrix4::<Rational>::from_fn(|r, c| Rational::from_i64((3 * r + c) as i64 - 5));
        assert_eq!(&m * &Matrix4::identity(), m);
        assert_eq!(&Matrix4::identity() * &m, m);
    }
}

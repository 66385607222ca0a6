use crate::error::{Error, Result};
use crate::scalar::{dot, Field, GaussianScalar, Scalar};

use super::poly::{Monomial, Poly, PolyMap};

/// Homogeneous quadratic map `ℝⁿ → ℝⁿ`; output `k` is `xᵀ M_k x` with `M_k`
/// symmetric.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorQuadraticMap<F> {
    n: usize,
    matrices: Vec<Vec<Vec<F>>>,
}

impl<F: Field> VectorQuadraticMap<F> {
    pub fn new(matrices: Vec<Vec<Vec<F>>>) -> Result<Self> {
        let n = matrices.len();
        for (k, m) in matrices.iter().enumerate() {
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(Error::Parse {
                    field: format!("matrices[{k}]"),
                    message: format!("expected a {n}×{n} matrix"),
                });
            }
            for i in 0..n {
                for j in 0..i {
                    if m[i][j] != m[j][i] {
                        return Err(Error::Parse {
                            field: format!("matrices[{k}][{i}][{j}]"),
                            message: "matrix is not symmetric".into(),
                        });
                    }
                }
            }
        }
        Ok(Self { n, matrices })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            matrices: vec![vec![vec![F::zero(); n]; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[Vec<Vec<F>>] {
        &self.matrices
    }

    /// Reads a homogeneous quadratic polynomial map with `n` components.
    pub fn from_polymap(p: &PolyMap<F>) -> Result<Self> {
        let n = p.nvars();
        if p.arity() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.arity(),
            });
        }
        for c in p.components() {
            if c.terms().any(|(m, _)| m.degree() != 2) {
                return Err(Error::Domain(
                    "polynomial map is not homogeneous of degree 2".into(),
                ));
            }
        }
        Ok(Self {
            n,
            matrices: p.components().iter().map(Poly::quadratic_matrix).collect(),
        })
    }

    pub fn to_polymap(&self) -> PolyMap<F> {
        PolyMap::new(
            self.n,
            self.matrices.iter().map(|m| Poly::quadratic_form(m)).collect(),
        )
    }

    pub fn eval(&self, x: &[F]) -> Vec<F> {
        self.eval_with(x, F::clone)
    }

    pub fn eval_with<G: Field>(&self, x: &[G], embed: impl Fn(&F) -> G) -> Vec<G> {
        assert_eq!(x.len(), self.n);
        self.matrices
            .iter()
            .map(|m| {
                let mut acc = G::zero();
                for i in 0..self.n {
                    let row = (0..self.n).fold(G::zero(), |s, j| s + embed(&m[i][j]) * x[j].clone());
                    acc = acc + x[i].clone() * row;
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map_scalars(|c| c.clone() * s.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(F, F) -> F) -> Self {
        assert_eq!(self.n, other.n);
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| f(x.clone(), y.clone())).collect())
                    .collect()
            })
            .collect();
        Self { n: self.n, matrices }
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> VectorQuadraticMap<G> {
        VectorQuadraticMap {
            n: self.n,
            matrices: self
                .matrices
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(&f).collect()).collect())
                .collect(),
        }
    }

    /// The pure-gauge map `x ↦ λ(x)·x` for `λ(x) = Σ λ_i x_i`.
    pub fn gauge(lambda: &[F]) -> Self {
        let n = lambda.len();
        let half = F::one() / F::from_i64(2);
        let mut g = Self::zero(n);
        for k in 0..n {
            for (i, l) in lambda.iter().enumerate() {
                let c = l.clone() * half.clone();
                let m = &mut g.matrices[k];
                m[i][k] = m[i][k].clone() + c.clone();
                m[k][i] = m[k][i].clone() + c;
            }
        }
        g
    }

    /// `x ↦ b·(x, x)`.
    pub fn radial(b: &[F]) -> Self {
        let n = b.len();
        let mut g = Self::zero(n);
        for (k, bk) in b.iter().enumerate() {
            for i in 0..n {
                g.matrices[k][i][i] = bk.clone();
            }
        }
        g
    }

    /// Coordinates in the monomial basis: for each component `k`, the
    /// coefficients of `x_i x_j` with `i ≤ j`, in lexicographic order.
    pub fn coefficient_vector(&self) -> Vec<F> {
        let two = F::from_i64(2);
        let mut out = Vec::with_capacity(self.n * self.n * (self.n + 1) / 2);
        for m in &self.matrices {
            for i in 0..self.n {
                for j in i..self.n {
                    out.push(if i == j {
                        m[i][i].clone()
                    } else {
                        m[i][j].clone() * two.clone()
                    });
                }
            }
        }
        out
    }

    pub fn from_coefficient_vector(n: usize, v: &[F]) -> Result<Self> {
        let per = n * (n + 1) / 2;
        if v.len() != n * per {
            return Err(Error::DimensionMismatch {
                expected: n * per,
                got: v.len(),
            });
        }
        let mut components = Vec::with_capacity(n);
        for k in 0..n {
            let mut p = Poly::zero(n);
            let mut idx = k * per;
            for i in 0..n {
                for j in i..n {
                    p.add_term(Monomial::pair(n, i, j), v[idx].clone());
                    idx += 1;
                }
            }
            components.push(p);
        }
        Self::from_polymap(&PolyMap::new(n, components))
    }

    /// `(Γ(x), x)` as a cubic polynomial.
    pub fn pair_with_x(&self) -> Poly<F> {
        self.to_polymap().inner(&PolyMap::identity(self.n))
    }

    /// `(Γ(x), Γ(x))` as a quartic polynomial.
    pub fn self_pairing(&self) -> Poly<F> {
        let p = self.to_polymap();
        p.inner(&p)
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().flatten().flatten().all(Field::is_zero)
    }

    /// `(Γ(x), x)` evaluated at `x`.
    pub fn pair_at(&self, x: &[F]) -> F {
        dot(&self.eval(x), x)
    }
}

impl<S: Scalar> VectorQuadraticMap<S> {
    pub fn to_f64(&self) -> VectorQuadraticMap<f64> {
        self.map_scalars(Scalar::to_f64)
    }

    pub fn eval_gaussian(&self, x: &[GaussianScalar<S>]) -> Vec<GaussianScalar<S>> {
        self.eval_with(x, |c| GaussianScalar::real(c.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int_vec, Rational};

    #[test]
    fn rejects_asymmetric_matrices() {
        let m = vec![
            vec![int_vec::<Rational>(&[0, 1]), int_vec(&[0, 0])],
            vec![int_vec(&[0, 0]), int_vec(&[0, 0])],
        ];
        assert!(VectorQuadraticMap::new(m).is_err());
    }

    #[test]
    fn gauge_and_radial_evaluate() {
        let x = int_vec::<Rational>(&[1, 2, -1]);
        let g = VectorQuadraticMap::gauge(&int_vec::<Rational>(&[0, 1, 0]));
        assert_eq!(g.eval(&x), int_vec(&[2, 4, -2]));
        let b = VectorQuadraticMap::radial(&int_vec::<Rational>(&[1, 0, 3]));
        assert_eq!(b.eval(&x), int_vec(&[6, 0, 18]));
    }

    #[test]
    fn coefficient_vector_roundtrip() {
        let g = VectorQuadraticMap::gauge(&int_vec::<Rational>(&[1, -2, 5]))
            .add(&VectorQuadraticMap::radial(&int_vec(&[3, 0, 1])));
        let v = g.coefficient_vector();
        assert_eq!(v.len(), 18);
        assert_eq!(VectorQuadraticMap::from_coefficient_vector(3, &v).unwrap(), g);
        assert_eq!(VectorQuadraticMap::from_polymap(&g.to_polymap()).unwrap(), g);
    }
}

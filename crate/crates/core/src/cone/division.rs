use crate::error::{Error, RemainderReport, Result};
use crate::scalar::{Field, Scalar};

use super::poly::{Monomial, Poly, PolyMap};
use super::quadratic::VectorQuadraticMap;

/// Result of dividing by the cone form `(x, x)`.
///
/// `input = (x,x)·quotient + remainder`, and no remainder monomial contains
/// `x0` to a power ≥ 2. Since `(x,x)` is monic of degree 2 in `x0` this normal
/// form is unique, so the remainder is zero iff the input vanishes on the
/// complex asymptotic cone (for `n ≥ 2`).
#[derive(Clone, PartialEq, Debug)]
pub struct ConeDivision<F> {
    pub quotient: PolyMap<F>,
    pub remainder: PolyMap<F>,
}

impl<F: Field> ConeDivision<F> {
    pub fn is_exact(&self) -> bool {
        self.remainder.is_zero()
    }
}

/// Component-wise division of a polynomial map by `(x, x)`.
pub fn cone_divide<F: Field>(p: &PolyMap<F>) -> Result<ConeDivision<F>> {
    if !F::EXACT {
        return Err(Error::UnsupportedBackend("float"));
    }
    let (quotient, remainder) = p.components().iter().map(divide_poly).unzip();
    Ok(ConeDivision {
        quotient: PolyMap::new(p.nvars(), quotient),
        remainder: PolyMap::new(p.nvars(), remainder),
    })
}

/// Scalar version of [`cone_divide`], returning `(quotient, remainder)`.
pub fn cone_divide_poly<F: Field>(p: &Poly<F>) -> Result<(Poly<F>, Poly<F>)> {
    if !F::EXACT {
        return Err(Error::UnsupportedBackend("float"));
    }
    Ok(divide_poly(p))
}

/// Reduces with `x0² ← (x,x) − (x1² + ... + x_{n-1}²)` until no monomial keeps
/// `x0²`.
fn divide_poly<F: Field>(p: &Poly<F>) -> (Poly<F>, Poly<F>) {
    let n = p.nvars();
    let mut quotient = Poly::zero(n);
    let mut remainder = Poly::zero(n);
    let mut work = p.clone();
    while !work.is_zero() {
        let mut next = Poly::zero(n);
        for (m, c) in work.into_terms() {
            if m.exponent(0) < 2 {
                remainder.add_term(m, c);
                continue;
            }
            let mut e = m.exponents().to_vec();
            e[0] -= 2;
            let reduced = Monomial::from_exponents(e);
            quotient.add_term(reduced.clone(), c.clone());
            for i in 1..n {
                next.add_term(reduced.mul(&Monomial::pair(n, i, i)), -c.clone());
            }
        }
        work = next;
    }
    (quotient, remainder)
}

/// The quotients `λ = (Γ,x)/(x,x)` and `μ = (Γ,Γ)/(x,x)`.
#[derive(Clone, PartialEq, Debug)]
pub struct Conditions<F> {
    /// Coefficients of the linear functional `λ`.
    pub lambda: Vec<F>,
    /// The quadratic form `μ`.
    pub mu: Poly<F>,
}

impl<F: Field> Conditions<F> {
    pub fn lambda_poly(&self) -> Poly<F> {
        Poly::linear(&self.lambda)
    }

    pub fn mu_matrix(&self) -> Vec<Vec<F>> {
        self.mu.quadratic_matrix()
    }
}

/// Checks that `(Γ(x), x)` and `(Γ(x), Γ(x))` vanish on the asymptotic cone.
///
/// On success returns the exact quotients; otherwise a
/// [`Error::ConditionViolation`] carrying both remainders.
pub fn check_conditions<S: Scalar>(gamma: &VectorQuadraticMap<S>) -> Result<Conditions<S>> {
    let (lambda, r_lin) = cone_divide_poly(&gamma.pair_with_x())?;
    let (mu, r_quad) = cone_divide_poly(&gamma.self_pairing())?;
    if !r_lin.is_zero() || !r_quad.is_zero() {
        return Err(Error::ConditionViolation {
            gamma_x: r_lin.to_report(),
            gamma_gamma: r_quad.to_report(),
        });
    }
    Ok(Conditions {
        lambda: lambda.linear_coefficients(),
        mu,
    })
}

/// Representative `Γ − λ(x)x` of the gauge class, with `(Γ′(x), x) ≡ 0`.
pub fn canonicalize<S: Scalar>(gamma: &VectorQuadraticMap<S>) -> Result<VectorQuadraticMap<S>> {
    let cond = check_conditions(gamma)?;
    Ok(gamma.sub(&VectorQuadraticMap::gauge(&cond.lambda)))
}

/// `Γ(x) = b·(x,x) + λ(x)·x`.
#[derive(Clone, PartialEq, Debug)]
pub struct ParallelDecomposition<F> {
    pub b: Vec<F>,
    pub lambda: Vec<F>,
}

impl<F: Field> ParallelDecomposition<F> {
    pub fn reconstruct(&self) -> VectorQuadraticMap<F> {
        VectorQuadraticMap::radial(&self.b).add(&VectorQuadraticMap::gauge(&self.lambda))
    }
}

/// Writes `Γ` as `b(x,x) + λ(x)x` when `Γ(x) ∥ x` on the cone.
///
/// Divides every wedge component `Γ_i x_j − Γ_j x_i` by `(x,x)`, reads `b` from
/// `Λ_ij = b_i x_j − b_j x_i`, then `λ` from `Γ − b(x,x) = λ(x)x`, and checks
/// the reconstruction exactly.
pub fn parallel_decompose<S: Scalar>(
    gamma: &VectorQuadraticMap<S>,
) -> Result<ParallelDecomposition<S>> {
    let n = gamma.dim();
    if n < 2 {
        return Err(Error::UnsupportedDimension { expected: 2, got: n });
    }
    if !S::EXACT {
        return Err(Error::UnsupportedBackend(S::BACKEND));
    }
    let g = gamma.to_polymap();
    let mut wedge_quotients = vec![vec![Poly::zero(n); n]; n];
    let mut failed = RemainderReport::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = g.component(i) * &Poly::var(n, j) - g.component(j) * &Poly::var(n, i);
            let (q, r) = cone_divide_poly(&w)?;
            for (m, c) in r.to_report() {
                failed.insert(format!("{i}^{j}:{m}"), c);
            }
            wedge_quotients[i][j] = q;
        }
    }
    if !failed.is_empty() {
        return Err(Error::NotParallel { remainder: failed });
    }

    // Λ_0i = b_0 x_i − b_i x_0
    let b: Vec<S> = (0..n)
        .map(|i| {
            if i == 0 {
                wedge_quotients[0][1].coefficient(&Monomial::var(n, 1))
            } else {
                -wedge_quotients[0][i].coefficient(&Monomial::var(n, 0))
            }
        })
        .collect();

    let rest = gamma.sub(&VectorQuadraticMap::radial(&b)).to_polymap();
    let lambda: Vec<S> = (0..n)
        .map(|j| rest.component(0).coefficient(&Monomial::pair(n, 0, j)))
        .collect();

    let decomposition = ParallelDecomposition { b, lambda };
    let residual = gamma.sub(&decomposition.reconstruct());
    if !residual.is_zero() {
        return Err(Error::NotParallel {
            remainder: residual.to_polymap().to_report(),
        });
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int_vec, Rational};

    type R = Rational;

    fn r(n: i64) -> R {
        R::from_i64(n)
    }

    #[test]
    fn exact_multiple_divides() {
        let n = 4;
        let p = Poly::<R>::norm_form(n) * Poly::var(n, 2);
        let d = cone_divide(&PolyMap::scalar(p)).unwrap();
        assert_eq!(d.quotient.component(0), &Poly::var(n, 2));
        assert!(d.is_exact());
    }

    #[test]
    fn single_reduction_step() {
        let n = 3;
        let p = Poly::<R>::monomial(Monomial::pair(n, 0, 0), r(1));
        let (q, rem) = cone_divide_poly(&p).unwrap();
        assert_eq!(q, Poly::constant(n, r(1)));
        let expected = -(Poly::monomial(Monomial::pair(n, 1, 1), r(1))
            + Poly::monomial(Monomial::pair(n, 2, 2), r(1)));
        assert_eq!(rem, expected);
    }

    #[test]
    fn float_backend_is_rejected() {
        let p = PolyMap::scalar(Poly::<f64>::var(2, 0));
        assert_eq!(cone_divide(&p), Err(Error::UnsupportedBackend("float")));
    }

    #[test]
    fn radial_unit_conditions() {
        // Γ(x) = e0 (x,x): λ(x) = x0, μ = (e0,e0)(x,x)
        let g = VectorQuadraticMap::radial(&int_vec::<R>(&[1, 0, 0, 0]));
        let c = check_conditions(&g).unwrap();
        assert_eq!(c.lambda, int_vec(&[1, 0, 0, 0]));
        assert_eq!(c.mu, Poly::norm_form(4));
    }

    #[test]
    fn non_divisible_gamma_reports_remainder() {
        // Γ(x) = (x0 x1, 0, 0, 0)
        let mut p = PolyMap::<R>::zero(4, 4).into_components();
        p[0] = Poly::monomial(Monomial::pair(4, 0, 1), r(1));
        let g = VectorQuadraticMap::from_polymap(&PolyMap::new(4, p)).unwrap();
        match check_conditions(&g) {
            Err(Error::ConditionViolation { gamma_x, .. }) => {
                assert_eq!(gamma_x.get("x1^3").map(String::as_str), Some("-1/1"));
                assert_eq!(gamma_x.get("x1*x2^2").map(String::as_str), Some("-1/1"));
                assert_eq!(gamma_x.len(), 3);
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn canonicalize_examples() {
        let b = int_vec::<R>(&[2, -1, 0, 3]);
        let g = VectorQuadraticMap::radial(&b);
        let expected = g.sub(&VectorQuadraticMap::gauge(&b));
        assert_eq!(canonicalize(&g).unwrap(), expected);
        let pure = VectorQuadraticMap::gauge(&int_vec::<R>(&[1, 0, 0, 0]));
        assert!(canonicalize(&pure).unwrap().is_zero());
    }

    #[test]
    fn parallel_decompose_constructed() {
        let b = int_vec::<R>(&[1, 0, 0]);
        let l = int_vec::<R>(&[0, 1, 0]);
        let g = VectorQuadraticMap::radial(&b).add(&VectorQuadraticMap::gauge(&l));
        let d = parallel_decompose(&g).unwrap();
        assert_eq!(d.b, b);
        assert_eq!(d.lambda, l);
        let z = parallel_decompose(&VectorQuadraticMap::<R>::zero(5)).unwrap();
        assert!(z.b.iter().all(Field::is_zero) && z.lambda.iter().all(Field::is_zero));
    }
}

//! Sparse multivariate polynomials with coefficients in a [`Field`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::RemainderReport;
use crate::scalar::{Field, Scalar};

/// Exponent vector; one entry per variable `x0, x1, ...`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u16 {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Product of two variables, `x_i x_j`.
    pub fn pair(nvars: usize, i: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] += 1;
        e[j] += 1;
        Monomial(e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Scalar-valued polynomial in `nvars` variables. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, index), F::one());
        p
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let mut p = Self::zero(m.exponents().len());
        p.add_term(m, c);
        p
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    /// `xᵀ M x` for a square (not necessarily symmetric) `M`.
    pub fn quadratic_form(matrix: &[Vec<F>]) -> Self {
        let n = matrix.len();
        let mut p = Self::zero(n);
        for (i, row) in matrix.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                p.add_term(Monomial::pair(n, i, j), c.clone());
            }
        }
        p
    }

    /// The cone form `(x, x) = x0² + ... + x_{n-1}²`.
    pub fn norm_form(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        for i in 0..nvars {
            p.add_term(Monomial::pair(nvars, i, i), F::one());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        debug_assert_eq!(m.exponents().len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, F> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.clone() * s.clone());
        }
        p
    }

    pub fn eval(&self, x: &[F]) -> F {
        self.eval_with(x, F::clone)
    }

    /// Evaluates at a point of a (possibly larger) field into which the
    /// coefficients embed via `embed`.
    pub fn eval_with<G: Field>(&self, x: &[G], embed: impl Fn(&F) -> G) -> G {
        assert_eq!(x.len(), self.nvars, "evaluation point has wrong dimension");
        self.terms.iter().fold(G::zero(), |acc, (m, c)| {
            let mut term = embed(c);
            for (v, &e) in x.iter().zip(m.exponents()) {
                for _ in 0..e {
                    term = term * v.clone();
                }
            }
            acc + term
        })
    }

    /// Coefficients `c_i` of a polynomial `Σ c_i x_i`; other terms are ignored.
    pub fn linear_coefficients(&self) -> Vec<F> {
        (0..self.nvars)
            .map(|i| self.coefficient(&Monomial::var(self.nvars, i)))
            .collect()
    }

    /// Symmetric matrix `M` with `xᵀ M x` equal to the quadratic part.
    pub fn quadratic_matrix(&self) -> Vec<Vec<F>> {
        let n = self.nvars;
        let half = F::one() / F::from_i64(2);
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = self.coefficient(&Monomial::pair(n, i, j));
                        if i == j {
                            c
                        } else {
                            c * half.clone()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }

    /// Sum of absolute values of the coefficients.
    pub fn coefficient_l1(&self) -> f64 {
        self.terms.values().map(Field::magnitude).sum()
    }
}

impl<S: Scalar> Poly<S> {
    pub fn to_report(&self) -> RemainderReport {
        self.terms
            .iter()
            .map(|(m, c)| (m.to_string(), c.to_text()))
            .collect()
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c:?}*{m}")?;
        }
        Ok(())
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        let nvars = self.nvars;
        Self {
            nvars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Self) -> Poly<F> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut p = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                p.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        p
    }
}

/// Vector- or scalar-valued polynomial map; arity is the number of components.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMap<F> {
    nvars: usize,
    components: Vec<Poly<F>>,
}

impl<F: Field> PolyMap<F> {
    pub fn new(nvars: usize, components: Vec<Poly<F>>) -> Self {
        assert!(components.iter().all(|c| c.nvars == nvars));
        Self { nvars, components }
    }

    pub fn scalar(p: Poly<F>) -> Self {
        Self::new(p.nvars, vec![p])
    }

    pub fn zero(nvars: usize, arity: usize) -> Self {
        Self::new(nvars, vec![Poly::zero(nvars); arity])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly<F>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Poly<F>> {
        self.components
    }

    pub fn component(&self, k: usize) -> &Poly<F> {
        &self.components[k]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn eval(&self, x: &[F]) -> Vec<F> {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    /// Euclidean pairing `Σ_k P_k Q_k`.
    pub fn inner(&self, other: &PolyMap<F>) -> Poly<F> {
        assert_eq!(self.arity(), other.arity());
        self.components
            .iter()
            .zip(&other.components)
            .fold(Poly::zero(self.nvars), |acc, (a, b)| acc + a * b)
    }

    /// The identity map `x ↦ x`.
    pub fn identity(nvars: usize) -> Self {
        Self::new(nvars, (0..nvars).map(|i| Poly::var(nvars, i)).collect())
    }
}

impl<S: Scalar> PolyMap<S> {
    /// Report keyed by `"<component>:<monomial>"`; scalar maps omit the prefix.
    pub fn to_report(&self) -> RemainderReport {
        if self.arity() == 1 {
            return self.components[0].to_report();
        }
        let mut out = RemainderReport::new();
        for (k, c) in self.components.iter().enumerate() {
            for (m, v) in c.to_report() {
                out.insert(format!("{k}:{m}"), v);
            }
        }
        out
    }
}

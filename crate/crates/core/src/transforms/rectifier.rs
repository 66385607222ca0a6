use crate::cone::{check_conditions, Poly, VectorQuadraticMap};
use crate::error::{Error, Result};
use crate::scalar::{dot, is_zero_vec, scale, to_f64_vec, Scalar};

use super::maps::{t_a, t_a_quadratic};

/// A germ that rounds the lines through `0` into the bundle of a given `Γ`.
///
/// `Φ(x) = T^a(x + Γ′(x) f(x))` with `f = 2/(1 + √(1 − 4μ′(x)))`, where
/// `Γ′ = Γ − (quadratic term of T^a)` satisfies `(Γ′(x), x) ≡ 0` and
/// `μ′ = (Γ′,Γ′)/(x,x)`. The `T^a` stage is absent when `λ = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct RectifierMap<S> {
    target: VectorQuadraticMap<S>,
    translation: Option<Vec<S>>,
    reduced: VectorQuadraticMap<S>,
    mu: Poly<S>,
    radius: f64,
    eval_translation: Option<Vec<f64>>,
    eval_reduced: VectorQuadraticMap<f64>,
    eval_mu: Poly<f64>,
}

impl<S: Scalar> RectifierMap<S> {
    /// The `Γ` this map was synthesized for.
    pub fn target(&self) -> &VectorQuadraticMap<S> {
        &self.target
    }

    /// `a` of the `T^a` stage.
    pub fn translation(&self) -> Option<&[S]> {
        self.translation.as_deref()
    }

    /// `Γ′`, with `(Γ′(x), x) ≡ 0`.
    pub fn reduced(&self) -> &VectorQuadraticMap<S> {
        &self.reduced
    }

    /// `μ′ = (Γ′,Γ′)/(x,x)`.
    pub fn mu(&self) -> &Poly<S> {
        &self.mu
    }

    /// Radius of a ball on which `4|μ′| ≤ 1/2` and the `T^a` stage has no
    /// pole.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.target.dim()
    }

    /// `f(x) = 2/(1 + √(1 − 4μ′(x)))`.
    pub fn scaling(&self, x: &[f64]) -> Result<f64> {
        let disc = 1.0 - 4.0 * self.eval_mu.eval(x);
        if disc <= 0.0 {
            return Err(Error::OutOfDomain(format!("1 − 4μ = {disc:e} is not positive")));
        }
        Ok(2.0 / (1.0 + disc.sqrt()))
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let f = self.scaling(x)?;
        let g = self.eval_reduced.eval(x);
        let y: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi + gi * f).collect();
        match &self.eval_translation {
            Some(a) => t_a(a, &y),
            None => Ok(y),
        }
    }
}

/// Largest `r` with `r + c·r² ≤ bound`.
fn radius_for_growth(c: f64, bound: f64) -> f64 {
    if c == 0.0 {
        bound
    } else {
        (-1.0 + (1.0 + 4.0 * c * bound).sqrt()) / (2.0 * c)
    }
}

/// Builds a germ whose quadratic term is `Γ` and which maps lines through `0`
/// onto the circles of the bundle of `Γ`.
///
/// When `λ(x) = (v, x)` is nonzero, `a = −v/(v,v)` is the shortest vector with
/// `λ(x) = −(a,x)/(a,a)`, and the `T^a` stage absorbs `λ`.
pub fn synthesize_rectifier<S: Scalar>(gamma: &VectorQuadraticMap<S>) -> Result<RectifierMap<S>> {
    let conditions = check_conditions(gamma)?;
    let v = conditions.lambda;
    let (translation, reduced) = if is_zero_vec(&v) {
        (None, gamma.clone())
    } else {
        let a = scale(&v, &(-S::one() / dot(&v, &v)));
        let reduced = gamma.sub(&t_a_quadratic(&a)?);
        (Some(a), reduced)
    };
    let reduced_conditions = check_conditions(&reduced)?;
    debug_assert!(is_zero_vec(&reduced_conditions.lambda));
    let mu = reduced_conditions.mu;

    let mu_norm = mu.coefficient_l1();
    let mut radius = if mu_norm == 0.0 {
        f64::INFINITY
    } else {
        (1.0 / (8.0 * mu_norm)).sqrt()
    };
    let eval_translation = translation.as_ref().map(|a| to_f64_vec(a));
    if let Some(a) = &eval_translation {
        // |x + Γ′(x)f| ≤ r + 2‖Γ′‖r² must stay below |a|/2 to avoid the pole at −a
        let growth = 2.0
            * reduced
                .to_polymap()
                .components()
                .iter()
                .map(|c| c.map_coefficients(|v| v.to_f64()).coefficient_l1().powi(2))
                .sum::<f64>()
                .sqrt();
        let a_norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
        radius = radius.min(radius_for_growth(growth, a_norm / 2.0));
    }

    Ok(RectifierMap {
        target: gamma.clone(),
        eval_reduced: reduced.to_f64(),
        eval_mu: mu.map_coefficients(|c| c.to_f64()),
        translation,
        reduced,
        mu,
        radius,
        eval_translation,
    })
}

use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::circle_fit::{fit_circle, FittedCurve};
use super::maps::FractionalTransform;
use super::rectifier::RectifierMap;
use crate::scalar::Scalar;

/// Anything that can be evaluated pointwise in floating point.
pub trait Transform {
    fn apply(&self, x: &[f64]) -> Result<Vec<f64>>;
}

impl Transform for FractionalTransform<f64> {
    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        FractionalTransform::apply(self, x)
    }
}

impl<S: Scalar> Transform for RectifierMap<S> {
    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        RectifierMap::apply(self, x)
    }
}

/// Adapts a closure into a [`Transform`].
pub struct FnTransform<F>(pub F);

impl<F: Fn(&[f64]) -> Result<Vec<f64>>> Transform for FnTransform<F> {
    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        (self.0)(x)
    }
}

/// The identity map.
pub struct Identity;

impl Transform for Identity {
    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(x.to_vec())
    }
}

/// `count` Chebyshev nodes scaled to `[−radius, radius]`; `0` is a node only
/// for odd `count`.
pub fn chebyshev_parameters(radius: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| radius * ((2 * k + 1) as f64 * PI / (2 * count) as f64).cos())
        .collect()
}

/// Outcome for one sampled line.
#[derive(Clone, PartialEq, Debug)]
pub struct LineReport {
    pub direction: Vec<f64>,
    /// `None` when the map hit a pole or left its domain.
    pub curve: Option<FittedCurve>,
    /// Largest distance of an image sample to the fitted curve.
    pub residual: Option<f64>,
    /// The residual is compared against `tol · scale`: the fitted radius for
    /// circles, `1` for lines.
    pub scale: f64,
    pub pole: bool,
    pub passed: bool,
}

impl LineReport {
    /// Residual divided by the scale.
    pub fn relative_residual(&self) -> Option<f64> {
        self.residual.map(|r| r / self.scale)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct FitReport {
    pub lines: Vec<LineReport>,
    pub radius: f64,
    pub tolerance: f64,
    /// Maximum relative residual over lines that could be sampled.
    pub max_residual: f64,
    pub passed: bool,
}

/// Samples `t·d` for each direction `d` at Chebyshev-spaced `t ∈ [−r, r]`,
/// maps the samples, fits a circle to the images and checks the residual.
pub fn verify_rounds_lines<T: Transform + ?Sized>(
    map: &T,
    directions: &[Vec<f64>],
    radius: f64,
    tol: f64,
    samples_per_line: usize,
) -> Result<FitReport> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    if samples_per_line < 5 {
        return Err(Error::NeedsMoreSamples(format!(
            "{samples_per_line} samples per line; at least 5 are needed"
        )));
    }
    let params = chebyshev_parameters(radius, samples_per_line);
    let lines = directions
        .iter()
        .map(|d| verify_line(map, d, &params, tol))
        .collect::<Result<Vec<_>>>()?;
    let max_residual = lines
        .iter()
        .filter_map(LineReport::relative_residual)
        .fold(0.0, f64::max);
    let passed = lines.iter().all(|l| l.passed);
    Ok(FitReport {
        lines,
        radius,
        tolerance: tol,
        max_residual,
        passed,
    })
}

fn verify_line<T: Transform + ?Sized>(map: &T, d: &[f64], params: &[f64], tol: f64) -> Result<LineReport> {
    let norm = d.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::Domain("zero direction".into()));
    }
    let direction: Vec<f64> = d.iter().map(|v| v / norm).collect();
    let mut images = Vec::with_capacity(params.len());
    for &t in params {
        let x: Vec<f64> = direction.iter().map(|v| v * t).collect();
        match map.apply(&x) {
            Ok(y) if y.iter().all(|v| v.is_finite()) => images.push(y),
            Ok(_) | Err(Error::Pole) | Err(Error::OutOfDomain(_)) => {
                return Ok(LineReport {
                    direction,
                    curve: None,
                    residual: None,
                    scale: 1.0,
                    pole: true,
                    passed: false,
                })
            }
            Err(e) => return Err(e),
        }
    }
    let fit = fit_circle(&images)?;
    let scale = fit.curve.radius().unwrap_or(1.0);
    Ok(LineReport {
        direction,
        passed: fit.residual < tol * scale,
        residual: Some(fit.residual),
        scale,
        curve: Some(fit.curve),
        pole: false,
    })
}

use nalgebra::{DMatrix, Matrix3, SymmetricEigen, Vector3};

use crate::error::{Error, Result};

/// Curvature below which a fitted circle is reported as a straight line.
pub const LINE_CURVATURE: f64 = 1e-10;

const MIN_POINTS: usize = 5;
const REFINE_ITERATIONS: usize = 50;

/// A circle or straight line in `ℝⁿ`.
#[derive(Clone, PartialEq, Debug)]
pub enum FittedCurve {
    Circle {
        center: Vec<f64>,
        radius: f64,
        /// Orthonormal basis of the circle's plane.
        plane: [Vec<f64>; 2],
    },
    Line {
        point: Vec<f64>,
        direction: Vec<f64>,
    },
}

impl FittedCurve {
    pub fn is_line(&self) -> bool {
        matches!(self, FittedCurve::Line { .. })
    }

    pub fn center(&self) -> Option<&[f64]> {
        match self {
            FittedCurve::Circle { center, .. } => Some(center),
            FittedCurve::Line { .. } => None,
        }
    }

    pub fn radius(&self) -> Option<f64> {
        match self {
            FittedCurve::Circle { radius, .. } => Some(*radius),
            FittedCurve::Line { .. } => None,
        }
    }

    /// Euclidean distance from `p`, including the part normal to the plane.
    pub fn distance(&self, p: &[f64]) -> f64 {
        match self {
            FittedCurve::Line { point, direction } => {
                let d: Vec<f64> = p.iter().zip(point).map(|(a, b)| a - b).collect();
                let along = dot(&d, direction);
                d.iter()
                    .zip(direction)
                    .map(|(a, u)| (a - along * u).powi(2))
                    .sum::<f64>()
                    .sqrt()
            }
            FittedCurve::Circle { center, radius, plane } => {
                let d: Vec<f64> = p.iter().zip(center).map(|(a, b)| a - b).collect();
                let u = dot(&d, &plane[0]);
                let v = dot(&d, &plane[1]);
                let out_sq: f64 = d
                    .iter()
                    .zip(plane[0].iter().zip(&plane[1]))
                    .map(|(di, (e, f))| (di - u * e - v * f).powi(2))
                    .sum();
                let in_plane = u.hypot(v) - radius;
                (in_plane * in_plane + out_sq.max(0.0)).sqrt()
            }
        }
    }
}

/// A fitted curve and the largest distance of any input point to it.
#[derive(Clone, PartialEq, Debug)]
pub struct CurveFit {
    pub curve: FittedCurve,
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Fits a circle (or line) to points in `ℝⁿ`.
///
/// The plane is the top-two principal subspace of the centered points. In that
/// plane an algebraic fit `A(u²+v²) + Bu + Cv + D = 0` (smallest singular
/// vector) gives a start that degrades gracefully to a line as `A → 0`;
/// circles are then refined by Gauss-Newton on the geometric distance.
pub fn fit_circle(points: &[Vec<f64>]) -> Result<CurveFit> {
    let m = points.len();
    if m < MIN_POINTS {
        return Err(Error::NeedsMoreSamples(format!(
            "circle fit needs at least {MIN_POINTS} points, got {m}"
        )));
    }
    let n = points[0].len();
    if n < 2 {
        return Err(Error::UnsupportedDimension { expected: 2, got: n });
    }
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.len(),
        });
    }
    if points.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite point".into()));
    }

    let centroid: Vec<f64> = (0..n)
        .map(|j| points.iter().map(|p| p[j]).sum::<f64>() / m as f64)
        .collect();
    let centered: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().zip(&centroid).map(|(a, b)| a - b).collect())
        .collect();
    let spread = (centered.iter().map(|y| dot(y, y)).sum::<f64>() / m as f64).sqrt();
    if spread == 0.0 {
        return Err(Error::Degenerate("all points coincide".into()));
    }

    let cov = DMatrix::from_fn(n, n, |i, j| {
        centered.iter().map(|y| y[i] * y[j]).sum::<f64>() / (m as f64 * spread * spread)
    });
    let eig = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let axis = |k: usize| -> Vec<f64> { eig.eigenvectors.column(order[k]).iter().copied().collect() };
    let (e1, e2) = (axis(0), axis(1));

    let planar: Vec<(f64, f64)> = centered
        .iter()
        .map(|y| (dot(y, &e1) / spread, dot(y, &e2) / spread))
        .collect();

    let design = DMatrix::from_fn(m, 4, |r, c| {
        let (u, v) = planar[r];
        match c {
            0 => u * u + v * v,
            1 => u,
            2 => v,
            _ => 1.0,
        }
    });
    let svd = design.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Degenerate("singular value decomposition failed".into()))?;
    let smallest = (0..svd.singular_values.len())
        .min_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]))
        .expect("four singular values");
    let (a, b, c, d) = (
        v_t[(smallest, 0)],
        v_t[(smallest, 1)],
        v_t[(smallest, 2)],
        v_t[(smallest, 3)],
    );
    let disc = b * b + c * c - 4.0 * a * d;
    if disc <= 0.0 {
        return Err(Error::Degenerate("algebraic fit has no real circle".into()));
    }
    let curvature = 2.0 * a.abs() / disc.sqrt() / spread;

    let curve = if curvature < LINE_CURVATURE {
        FittedCurve::Line {
            point: centroid.clone(),
            direction: e1,
        }
    } else {
        let start = Vector3::new(-b / (2.0 * a), -c / (2.0 * a), disc.sqrt() / (2.0 * a.abs()));
        let p = refine(&planar, start);
        let center = (0..n)
            .map(|j| centroid[j] + spread * (p[0] * e1[j] + p[1] * e2[j]))
            .collect();
        FittedCurve::Circle {
            center,
            radius: spread * p[2],
            plane: [e1, e2],
        }
    };
    let residual = points.iter().map(|p| curve.distance(p)).fold(0.0, f64::max);
    Ok(CurveFit { curve, residual })
}

/// Gauss-Newton on `Σ (|p − c| − R)²` over `(c, R)`.
fn refine(points: &[(f64, f64)], start: Vector3<f64>) -> Vector3<f64> {
    let mut p = start;
    for _ in 0..REFINE_ITERATIONS {
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for &(u, v) in points {
            let (du, dv) = (u - p[0], v - p[1]);
            let dist = du.hypot(dv);
            if dist == 0.0 {
                continue;
            }
            let row = Vector3::new(-du / dist, -dv / dist, -1.0);
            jtj += row * row.transpose();
            jtr += row * (dist - p[2]);
        }
        let Some(step) = jtj.lu().solve(&(-jtr)) else {
            break;
        };
        p += step;
        if step.norm() <= 1e-15 * (1.0 + p.norm()) {
            break;
        }
    }
    p
}

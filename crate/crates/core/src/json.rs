//! JSON interchange format.
//!
//! Exact scalars are written as strings `"p/q"`; float scalars as numbers.
//! Every parse error names the offending field, e.g. `matrices[1][0][2]`.

use serde_json::{json, Map, Value};

use crate::bundles::{BundleDescriptor, Center, Circle, LinearQuaternionMap};
use crate::cone::{Poly, VectorQuadraticMap};
use crate::error::{Error, RemainderReport, Result};
use crate::quaternions::{Matrix4, Orientation, Side};
use crate::scalar::Scalar;
use crate::transforms::{AffineMap, FitReport, FittedCurve, FractionalTransform, LineReport};

fn parse_error(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.to_string(),
        message: message.into(),
    }
}

/// Values with a JSON representation.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> Result<Self>;
}

pub fn scalar<S: Scalar>(s: &S) -> Value {
    if S::EXACT {
        Value::String(s.to_text())
    } else {
        json!(s.to_f64())
    }
}

/// Exact scalars accept `"p/q"` strings and integers; float scalars accept
/// numbers and numeric strings.
pub fn parse_scalar<S: Scalar>(value: &Value) -> Result<S> {
    match value {
        Value::String(text) => S::parse(text),
        Value::Number(n) if S::EXACT => match n.as_i64() {
            Some(i) => Ok(S::from_i64(i)),
            None => Err(parse_error(
                "",
                format!("exact scalars must be written as \"p/q\", got {n}"),
            )),
        },
        Value::Number(n) => S::from_f64(n.as_f64().unwrap_or(f64::NAN)).map_err(|e| parse_error("", e.to_string())),
        other => Err(parse_error("", format!("expected a scalar, got {other}"))),
    }
}

pub fn vector<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn parse_vector<S: Scalar>(value: &Value, len: Option<usize>) -> Result<Vec<S>> {
    let items = value
        .as_array()
        .ok_or_else(|| parse_error("", "expected an array"))?;
    if let Some(len) = len {
        if items.len() != len {
            return Err(parse_error("", format!("expected {len} entries, got {}", items.len())));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, v)| parse_scalar(v).map_err(|e| e.at(&format!("[{i}]"))))
        .collect()
}

pub fn matrix<S: Scalar>(rows: &[Vec<S>]) -> Value {
    Value::Array(rows.iter().map(|r| vector(r)).collect())
}

pub fn parse_matrix<S: Scalar>(value: &Value, rows: usize, cols: usize) -> Result<Vec<Vec<S>>> {
    let items = value
        .as_array()
        .ok_or_else(|| parse_error("", "expected an array of rows"))?;
    if items.len() != rows {
        return Err(parse_error("", format!("expected {rows} rows, got {}", items.len())));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(r, Some(cols)).map_err(|e| e.at(&format!("[{i}]"))))
        .collect()
}

fn matrix4<S: Scalar>(m: &Matrix4<S>) -> Value {
    Value::Array(m.rows().iter().map(|r| vector(r)).collect())
}

fn parse_matrix4<S: Scalar>(value: &Value) -> Result<Matrix4<S>> {
    let rows: Vec<Vec<S>> = parse_matrix(value, 4, 4)?;
    Ok(Matrix4::from_fn(|r, c| rows[r][c].clone()))
}

fn field<'a>(value: &'a Value, name: &str) -> Result<&'a Value> {
    value
        .as_object()
        .ok_or_else(|| parse_error("", "expected an object"))?
        .get(name)
        .ok_or_else(|| parse_error(name, "missing field"))
}

fn text_field<'a>(value: &'a Value, name: &str) -> Result<&'a str> {
    field(value, name)?
        .as_str()
        .ok_or_else(|| parse_error(name, "expected a string"))
}

pub fn parse_side(text: &str, name: &str) -> Result<Side> {
    Side::parse(text).ok_or_else(|| parse_error(name, format!("expected \"left\" or \"right\", got \"{text}\"")))
}

pub fn parse_orientation(text: &str, name: &str) -> Result<Orientation> {
    Orientation::parse(text).ok_or_else(|| {
        parse_error(name, format!("expected \"left\", \"right\" or \"both\", got \"{text}\""))
    })
}

impl<S: Scalar> Json for VectorQuadraticMap<S> {
    fn to_json(&self) -> Value {
        json!({
            "n": self.dim(),
            "matrices": Value::Array(self.matrices().iter().map(|m| matrix(m)).collect()),
        })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let n = field(value, "n")?
            .as_u64()
            .filter(|&n| n >= 1)
            .ok_or_else(|| parse_error("n", "expected a positive integer"))? as usize;
        let items = field(value, "matrices")?
            .as_array()
            .ok_or_else(|| parse_error("matrices", "expected an array"))?;
        if items.len() != n {
            return Err(parse_error("matrices", format!("expected {n} matrices, got {}", items.len())));
        }
        let matrices = items
            .iter()
            .enumerate()
            .map(|(k, m)| parse_matrix(m, n, n).map_err(|e| e.at(&format!("matrices[{k}]"))))
            .collect::<Result<Vec<_>>>()?;
        VectorQuadraticMap::new(matrices)
    }
}

impl<S: Scalar> Json for Circle<S> {
    fn to_json(&self) -> Value {
        let center = match self.center() {
            Center::Finite(c) => vector(c),
            Center::Infinity => json!("infinity"),
        };
        json!({ "tangent": vector(self.tangent()), "center": center })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let tangent: Vec<S> = parse_vector(field(value, "tangent")?, None).map_err(|e| e.at("tangent"))?;
        let center = match field(value, "center")? {
            Value::String(s) if s == "infinity" => Center::Infinity,
            v => Center::Finite(parse_vector(v, Some(tangent.len())).map_err(|e| e.at("center"))?),
        };
        Circle::new(tangent, center).map_err(|e| parse_error("center", e.to_string()))
    }
}

impl<S: Scalar> Json for LinearQuaternionMap<S> {
    fn to_json(&self) -> Value {
        matrix4(self.matrix())
    }

    fn from_json(value: &Value) -> Result<Self> {
        Ok(LinearQuaternionMap::new(parse_matrix4(value)?))
    }
}

impl<S: Scalar> Json for BundleDescriptor<S> {
    fn to_json(&self) -> Value {
        json!({ "side": self.orientation().name(), "imA": self.im_a().to_json() })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let orientation = parse_orientation(text_field(value, "side")?, "side")?;
        let im_a = LinearQuaternionMap::from_json(field(value, "imA")?).map_err(|e| e.at("imA"))?;
        BundleDescriptor::new(orientation, im_a).map_err(|e| parse_error("imA", e.to_string()))
    }
}

impl<S: Scalar> Json for AffineMap<S> {
    fn to_json(&self) -> Value {
        json!({ "linear": matrix(self.linear()), "const": vector(self.constant()) })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let constant: Vec<S> = parse_vector(field(value, "const")?, None).map_err(|e| e.at("const"))?;
        let n = constant.len();
        let linear = parse_matrix(field(value, "linear")?, n, n).map_err(|e| e.at("linear"))?;
        AffineMap::new(linear, constant)
    }
}

impl<S: Scalar> Json for FractionalTransform<S> {
    fn to_json(&self) -> Value {
        json!({
            "side": self.side().name(),
            "num": self.numerator().to_json(),
            "den": self.denominator().to_json(),
        })
    }

    fn from_json(value: &Value) -> Result<Self> {
        let side = parse_side(text_field(value, "side")?, "side")?;
        let num = AffineMap::from_json(field(value, "num")?).map_err(|e| e.at("num"))?;
        let den = AffineMap::from_json(field(value, "den")?).map_err(|e| e.at("den"))?;
        FractionalTransform::new(side, num, den).map_err(|e| parse_error("den", e.to_string()))
    }
}

pub fn remainder(report: &RemainderReport) -> Value {
    Value::Object(
        report
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect::<Map<_, _>>(),
    )
}

/// A polynomial as a `monomial -> coefficient` object.
pub fn poly<S: Scalar>(p: &Poly<S>) -> Value {
    Value::Object(
        p.terms()
            .map(|(m, c)| (m.to_string(), scalar(c)))
            .collect::<Map<_, _>>(),
    )
}

fn floats(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|x| json!(x)).collect())
}

pub fn curve(c: &FittedCurve) -> Value {
    match c {
        FittedCurve::Circle { center, radius, plane } => json!({
            "kind": "circle",
            "center": floats(center),
            "radius": radius,
            "plane": [floats(&plane[0]), floats(&plane[1])],
        }),
        FittedCurve::Line { point, direction } => json!({
            "kind": "line",
            "point": floats(point),
            "direction": floats(direction),
        }),
    }
}

fn line_report(l: &LineReport) -> Value {
    json!({
        "direction": floats(&l.direction),
        "curve": l.curve.as_ref().map(curve),
        "residual": l.residual,
        "scale": l.scale,
        "pole": l.pole,
        "passed": l.passed,
    })
}

pub fn fit_report(r: &FitReport) -> Value {
    json!({
        "radius": r.radius,
        "tolerance": r.tolerance,
        "max_residual": r.max_residual,
        "passed": r.passed,
        "lines": r.lines.iter().map(line_report).collect::<Vec<_>>(),
    })
}

//! JSON and CSV rendering. Reals are written with 17 significant digits.

use std::fmt::Write as _;
use std::str::FromStr;

use mvop::linalg::{MatPoly, Matrix, VecPoly};
use mvop::{Mode, Params};
use serde_json::{json, Map, Number, Value};

/// A finite real as a JSON number in `{:.16e}` form; non-finite values become `null`.
pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Number::from_str(&format!("{x:.16e}")).map(Value::Number).unwrap_or(Value::Null)
}

/// Rewrites every non-integer number of `v` in `{:.16e}` form.
pub fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => n.as_f64().map_or(Value::Null, real),
        Value::Array(items) => Value::Array(items.into_iter().map(normalize).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

pub fn params(p: &Params) -> Value {
    let mut map = Map::new();
    match p.mode {
        Mode::Integer { n, m } => {
            map.insert("mode".into(), json!("integer"));
            map.insert("n".into(), json!(n));
            map.insert("m".into(), json!(m));
        }
        Mode::Jacobi { alpha, beta } => {
            map.insert("mode".into(), json!("jacobi"));
            map.insert("alpha".into(), real(alpha));
            map.insert("beta".into(), real(beta));
        }
    }
    map.insert("k".into(), json!(p.k));
    map.insert("ell".into(), json!(p.ell));
    Value::Object(map)
}

pub fn vector(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|x| real(*x)).collect())
}

pub fn matrix(m: &Matrix<f64>) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

/// One vector per power of `u`, lowest first.
pub fn vec_poly(f: &VecPoly<f64>) -> Value {
    Value::Array(f.coeffs().iter().map(|c| vector(c)).collect())
}

/// One row-major matrix per power of `u`, lowest first.
pub fn mat_poly(p: &MatPoly<f64>) -> Value {
    Value::Array(p.coeffs().iter().map(matrix).collect())
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn matrix_csv(header: &[String], rows: &[(String, Vec<f64>)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "label,{}", header.join(","));
    for (label, values) in rows {
        let cells: Vec<String> = values.iter().map(|x| format!("{x:.16e}")).collect();
        let _ = writeln!(out, "{label},{}", cells.join(","));
    }
    out
}

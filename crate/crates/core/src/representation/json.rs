//! Representation files:
//! `{"v": {label: n}, "w": {..}, "B": {arrow: rows}, "a": {label: rows},
//! "b": {..}, "split": {"w1": {..}}}`, where `rows` is a list of rows of
//! `[re, im]` pairs (plain numbers are read as real). Dimension vectors may
//! also be given as arrays in vertex order; missing matrices are zero.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{DimVector, Quiver};
use crate::scalar::Scalar;

use super::{FramingSplit, Rep};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn dim_vector(q: &Quiver, v: &Value, what: &str) -> Result<DimVector> {
    let n = q.num_vertices();
    match v {
        Value::Array(xs) => {
            let out = xs.iter().map(|x| x.as_i64().ok_or_else(|| parse_err(format!("`{what}` entries must be integers")))).collect::<Result<Vec<_>>>()?;
            let d = DimVector(out);
            q.check_dims(&d)?;
            Ok(d)
        }
        Value::Object(map) => {
            let mut out = vec![0; n];
            for (label, x) in map {
                let i = q.vertex_index(label)?;
                out[i] = x.as_i64().ok_or_else(|| parse_err(format!("`{what}.{label}` must be an integer")))?;
            }
            Ok(DimVector(out))
        }
        _ => Err(parse_err(format!("`{what}` must be an object or array"))),
    }
}

fn entry(x: &Value) -> Result<Complex64> {
    match x {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => Err(parse_err("matrix entries must be numbers")),
        },
        _ => Err(parse_err("matrix entries must be numbers or [re, im] pairs")),
    }
}

fn matrix(x: &Value, rows: usize, cols: usize, what: &str) -> Result<Matrix<Complex64>> {
    let Value::Array(rs) = x else {
        return Err(parse_err(format!("`{what}` must be a list of rows")));
    };
    // an empty list stands for any matrix with a zero dimension
    if rs.is_empty() && rows * cols == 0 {
        return Ok(Matrix::zeros(rows, cols));
    }
    if rs.len() != rows {
        return Err(Error::Shape(format!("`{what}` has {} rows, expected {rows}", rs.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in rs {
        let Value::Array(cs) = r else {
            return Err(parse_err(format!("`{what}` rows must be lists")));
        };
        if cs.len() != cols {
            return Err(Error::Shape(format!("`{what}` has a row of length {}, expected {cols}", cs.len())));
        }
        for c in cs {
            data.push(entry(c)?);
        }
    }
    Ok(Matrix::from_vec(rows, cols, data))
}

fn vertex_map<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<Option<&'a Map<String, Value>>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Object(m)) => Ok(Some(m)),
        Some(_) => Err(parse_err(format!("`{key}` must be an object"))),
    }
}

/// Parses a representation of `q` and its optional framing split.
pub fn rep_from_json(q: &Quiver, s: &str) -> Result<(Rep<Complex64>, Option<FramingSplit>)> {
    let root: Value = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
    let Value::Object(obj) = &root else {
        return Err(parse_err("representation must be a JSON object"));
    };
    let v = dim_vector(q, obj.get("v").ok_or_else(|| parse_err("missing `v`"))?, "v")?;
    let w = dim_vector(q, obj.get("w").ok_or_else(|| parse_err("missing `w`"))?, "w")?;
    let mut r = Rep::zero(q, &v, &w)?;
    let (vs, ws) = (v.as_usize(), w.as_usize());
    if let Some(bs) = vertex_map(obj, "B")? {
        for (key, m) in bs {
            let h: usize = key.parse().map_err(|_| parse_err(format!("arrow id `{key}` is not an integer")))?;
            if h >= q.num_arrows() {
                return Err(Error::UnknownArrow(h));
            }
            r.arrows[h] = matrix(m, vs[q.target(h)], vs[q.source(h)], &format!("B.{key}"))?;
        }
    }
    if let Some(a) = vertex_map(obj, "a")? {
        for (label, m) in a {
            let i = q.vertex_index(label)?;
            r.a[i] = matrix(m, vs[i], ws[i], &format!("a.{label}"))?;
        }
    }
    if let Some(b) = vertex_map(obj, "b")? {
        for (label, m) in b {
            let i = q.vertex_index(label)?;
            r.b[i] = matrix(m, ws[i], vs[i], &format!("b.{label}"))?;
        }
    }
    let split = match obj.get("split") {
        None | Some(Value::Null) => None,
        Some(Value::Object(sp)) => {
            let w1 = dim_vector(q, sp.get("w1").ok_or_else(|| parse_err("`split` needs `w1`"))?, "split.w1")?;
            Some(FramingSplit::new(&w, &w1)?)
        }
        Some(_) => return Err(parse_err("`split` must be an object")),
    };
    Ok((r, split))
}

pub fn matrix_json<T: Scalar>(m: &Matrix<T>) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                m.row(i)
                    .iter()
                    .map(|x| {
                        let z = x.to_c64();
                        json!([z.re, z.im])
                    })
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn labelled(q: &Quiver, v: &DimVector) -> Value {
    Value::Object(q.vertex_labels().iter().zip(&v.0).map(|(l, x)| (l.clone(), json!(x))).collect())
}

pub fn rep_to_json<T: Scalar>(r: &Rep<T>, split: Option<&FramingSplit>) -> Value {
    let q = r.quiver();
    let per_vertex = |ms: &[Matrix<T>]| -> Value {
        Value::Object(q.vertex_labels().iter().zip(ms).map(|(l, m)| (l.clone(), matrix_json(m))).collect())
    };
    let mut out = json!({
        "v": labelled(q, r.v()),
        "w": labelled(q, r.w()),
        "B": Value::Object(q.arrows().map(|h| (h.to_string(), matrix_json(&r.arrows[h]))).collect()),
        "a": per_vertex(&r.a),
        "b": per_vertex(&r.b),
    });
    if let Some(sp) = split {
        out["split"] = json!({ "w1": labelled(q, &sp.w1) });
    }
    out
}

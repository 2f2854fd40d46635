//! JSON documents for tensors and vertex sets.
//!
//! A tensor document is `{"n": 2, "entries": [[["1/2", "1/2"], ...], ...]}`
//! with `entries[i][j][k]` given as integer or `p/q` strings (bare JSON
//! integers are accepted too). Vertex-set documents carry the counts followed
//! by every vertex as a tensor document, in canonical order.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::enumerate::VertexSet;
use crate::error::{FormatError, TensorError};
use crate::tensor::StochasticTensor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDocument {
    pub n: usize,
    pub entries: Vec<Vec<Vec<String>>>,
}

impl From<&StochasticTensor> for TensorDocument {
    fn from(t: &StochasticTensor) -> Self {
        Self {
            n: t.n(),
            entries: t
                .to_nested()
                .into_iter()
                .map(|plane| {
                    plane
                        .into_iter()
                        .map(|line| line.iter().map(|v| v.to_string()).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

fn field(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        path: path.into(),
        message: message.into(),
    }
}

fn parse_rational(path: &str, v: &Value) -> Result<BigRational, FormatError> {
    let token = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(num) if num.is_i64() || num.is_u64() => num.to_string(),
        other => return Err(field(path, format!("expected a rational string, found {other}"))),
    };
    let valid_shape = {
        let mut parts = token.splitn(2, '/');
        let int_ok = |s: &str| {
            let s = s.strip_prefix('-').unwrap_or(s);
            !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
        };
        let numer = parts.next().unwrap_or("");
        match parts.next() {
            Some(den) => int_ok(numer) && !den.is_empty() && den.bytes().all(|b| b.is_ascii_digit()),
            None => int_ok(numer),
        }
    };
    if !valid_shape {
        return Err(field(path, format!("`{token}` is not an integer or p/q rational")));
    }
    token
        .parse()
        .map_err(|_| field(path, format!("`{token}` is not a rational")))
}

fn as_array<'a>(path: &str, v: &'a Value, expected: usize) -> Result<&'a Vec<Value>, FormatError> {
    let arr = v
        .as_array()
        .ok_or_else(|| field(path, "expected an array"))?;
    if arr.len() != expected {
        return Err(FormatError::Tensor(TensorError::Ragged {
            path: path.into(),
            expected,
            found: arr.len(),
        }));
    }
    Ok(arr)
}

fn tensor_from_value(v: &Value, prefix: &str) -> Result<StochasticTensor, FormatError> {
    let obj = v
        .as_object()
        .ok_or_else(|| field(prefix_or_root(prefix), "expected an object with `n` and `entries`"))?;
    let n_path = join(prefix, "n");
    let n = obj
        .get("n")
        .ok_or_else(|| field(&n_path, "missing"))?
        .as_u64()
        .ok_or_else(|| field(&n_path, "expected a positive integer"))? as usize;
    if n == 0 {
        return Err(field(&n_path, "must be at least 1"));
    }
    let e_path = join(prefix, "entries");
    let planes = as_array(&e_path, obj.get("entries").ok_or_else(|| field(&e_path, "missing"))?, n)?;
    let mut grid = Vec::with_capacity(n);
    for (i, plane) in planes.iter().enumerate() {
        let p_path = format!("{e_path}[{i}]");
        let lines = as_array(&p_path, plane, n)?;
        let mut rows = Vec::with_capacity(n);
        for (j, line) in lines.iter().enumerate() {
            let l_path = format!("{p_path}[{j}]");
            let cells = as_array(&l_path, line, n)?;
            let parsed = cells
                .iter()
                .enumerate()
                .map(|(k, c)| parse_rational(&format!("{l_path}[{k}]"), c))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(parsed);
        }
        grid.push(rows);
    }
    Ok(StochasticTensor::from_nested(grid)?)
}

fn join(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_string()
    } else {
        format!("{prefix}.{name}")
    }
}

fn prefix_or_root(prefix: &str) -> &str {
    if prefix.is_empty() {
        "<root>"
    } else {
        prefix
    }
}

/// Parses and validates a tensor document.
pub fn parse_tensor(text: &str) -> Result<StochasticTensor, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    tensor_from_value(&v, "")
}

pub fn tensor_to_json(t: &StochasticTensor) -> String {
    serde_json::to_string_pretty(&TensorDocument::from(t)).expect("document serializes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSetDocument {
    pub n: usize,
    pub total: usize,
    pub integral: usize,
    pub nonintegral: usize,
    pub vertices: Vec<TensorDocument>,
}

/// Serializes a vertex set of a tensor polytope. `None` for generic polytopes.
pub fn vertex_set_to_json(vs: &VertexSet) -> Option<String> {
    let n = vs.n?;
    let tensors = vs.tensors()?;
    let doc = VertexSetDocument {
        n,
        total: vs.len(),
        integral: vs.integral_count,
        nonintegral: vs.nonintegral_count,
        vertices: tensors.iter().map(TensorDocument::from).collect(),
    };
    Some(serde_json::to_string_pretty(&doc).expect("document serializes"))
}

/// Parses a vertex-set document, checking counts, order and validity.
pub fn parse_vertex_set(text: &str) -> Result<VertexSet, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    let count = |name: &str| -> Result<usize, FormatError> {
        v.get(name)
            .and_then(Value::as_u64)
            .map(|c| c as usize)
            .ok_or_else(|| field(name, "expected a nonnegative integer"))
    };
    let n = count("n")?;
    let (total, integral, nonintegral) = (count("total")?, count("integral")?, count("nonintegral")?);
    let list = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| field("vertices", "expected an array"))?;
    let mut vertices = Vec::with_capacity(list.len());
    for (idx, item) in list.iter().enumerate() {
        let t = tensor_from_value(item, &format!("vertices[{idx}]"))?;
        if t.n() != n {
            return Err(field(format!("vertices[{idx}].n"), format!("expected {n}, found {}", t.n())));
        }
        vertices.push(t);
    }
    if vertices.len() != total {
        return Err(field("total", format!("says {total}, document lists {}", vertices.len())));
    }
    let actual_integral = vertices.iter().filter(|t| t.is_integral()).count();
    if actual_integral != integral || total - actual_integral != nonintegral {
        return Err(field(
            "integral",
            format!("counts {integral}/{nonintegral} disagree with the listed vertices"),
        ));
    }
    let points: Vec<Vec<BigRational>> = vertices.into_iter().map(StochasticTensor::into_entries).collect();
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(field("vertices", "not in canonical order or contains duplicates"));
    }
    Ok(VertexSet {
        n: Some(n),
        ambient_dim: n * n * n,
        vertices: points,
        integral_count: integral,
        nonintegral_count: nonintegral,
    })
}

//! JSON input and output documents for the command-line front end.
//!
//! Schemas:
//! * rationals are strings `"p/q"` or `"p"`; big integers render as JSON
//!   numbers when they fit and as strings otherwise,
//! * number field: `{"minpoly": [rat, ...], "automorphisms": [[rat, ...], ...]}`
//!   with ascending coefficients and power-basis coordinate rows,
//! * branch mode: `{"kind": "branch", "field": ..., "x_exponent": m,
//!   "y_terms": [[exp, [rat, ...]], ...], "divisorial": {"M_delta": n} | null}`,
//! * graph mode: `{"kind": "graph", "g": ..., "M_sigma": [...], "M_tau": [...],
//!   "splittings": [{"M_rho": ..., "ell": ..., "deg": ...}, ...],
//!   "divisorial": {"M_delta": ...} | null}`,
//! * output: `{"order": N, "kind": ..., "coefficients": [[c0, c1, ...], ...],
//!   "factored": "..."}` with one coefficient array per power of `t`.

use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::branch::PuiseuxBranch;
use crate::error::{Error, Result};
use crate::galois::{Divisorial, GResolutionData, Splitting};
use crate::lseries::{BinomialFactorization, LPolynomial, LSeries};
use crate::numfield::{NumberField, QPoly};
use crate::{Int, Rat};

/// Parsed input payload: either a branch over an explicit number field or
/// ready-made graph data.
#[derive(Clone, Debug)]
pub enum InputPayload {
    Branch {
        branch: PuiseuxBranch,
        m_delta: Option<usize>,
    },
    Graph(GResolutionData),
}

/// A full input document.
#[derive(Clone, Debug)]
pub struct InputDocument {
    pub payload: InputPayload,
    pub default_order: Option<usize>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// `"p/q"` or `"p"` to an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = Int::from_str(num.trim()).map_err(|_| invalid(format!("bad rational '{s}'")))?;
    let den = Int::from_str(den.trim()).map_err(|_| invalid(format!("bad rational '{s}'")))?;
    if den == Int::from(0) {
        return Err(invalid(format!("zero denominator in '{s}'")));
    }
    Ok(Rat::new(num, den))
}

/// Canonical string form of a rational.
pub fn rat_string(r: &Rat) -> String {
    if r.denom() == &Int::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| invalid(format!("{what} must be a JSON object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| invalid(format!("{what} must be a JSON array")))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| invalid(format!("missing field '{key}'")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| invalid(format!("{what} must be a non-negative integer")))
}

fn rat_value(v: &Value, what: &str) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n
            .as_i64()
            .map(|n| Rat::from_integer(n.into()))
            .ok_or_else(|| invalid(format!("{what} must be an integer or a 'p/q' string"))),
        _ => Err(invalid(format!("{what} must be an integer or a 'p/q' string"))),
    }
}

fn rat_vector(v: &Value, what: &str) -> Result<Vec<Rat>> {
    as_array(v, what)?
        .iter()
        .map(|x| rat_value(x, what))
        .collect()
}

fn parse_field(v: &Value) -> Result<NumberField> {
    let obj = as_object(v, "field")?;
    let minpoly = QPoly::from_coeffs(rat_vector(get(obj, "minpoly")?, "minpoly")?);
    let automorphisms = as_array(get(obj, "automorphisms")?, "automorphisms")?
        .iter()
        .map(|row| rat_vector(row, "automorphism"))
        .collect::<Result<Vec<_>>>()?;
    NumberField::make_field(minpoly, automorphisms)
}

fn parse_divisorial_m_delta(obj: &Map<String, Value>) -> Result<Option<usize>> {
    match obj.get("divisorial") {
        None | Some(Value::Null) => Ok(None),
        Some(v) => {
            let d = as_object(v, "divisorial")?;
            Ok(Some(as_usize(get(d, "M_delta")?, "M_delta")?))
        }
    }
}

fn parse_branch_payload(obj: &Map<String, Value>) -> Result<InputPayload> {
    let field = parse_field(get(obj, "field")?)?;
    let m = as_usize(get(obj, "x_exponent")?, "x_exponent")?;
    let y_terms = as_array(get(obj, "y_terms")?, "y_terms")?
        .iter()
        .map(|pair| -> Result<(usize, _)> {
            let pair = as_array(pair, "y_terms entry")?;
            if pair.len() != 2 {
                return Err(invalid("y_terms entries must be [exponent, coefficient]"));
            }
            let exp = as_usize(&pair[0], "y_terms exponent")?;
            let coeff = field.element(rat_vector(&pair[1], "y_terms coefficient")?)?;
            Ok((exp, coeff))
        })
        .collect::<Result<Vec<_>>>()?;
    let branch = PuiseuxBranch::new(field, m, y_terms)?;
    Ok(InputPayload::Branch {
        branch,
        m_delta: parse_divisorial_m_delta(obj)?,
    })
}

fn parse_graph_payload(obj: &Map<String, Value>) -> Result<InputPayload> {
    let g = as_usize(get(obj, "g")?, "g")?;
    let usize_vec = |key: &str| -> Result<Vec<usize>> {
        as_array(get(obj, key)?, key)?
            .iter()
            .map(|v| as_usize(v, key))
            .collect()
    };
    let splittings = as_array(get(obj, "splittings")?, "splittings")?
        .iter()
        .map(|v| -> Result<Splitting> {
            let s = as_object(v, "splitting")?;
            Ok(Splitting {
                m_rho: as_usize(get(s, "M_rho")?, "M_rho")?,
                ell: as_usize(get(s, "ell")?, "ell")?,
                deg: as_usize(get(s, "deg")?, "deg")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut data = GResolutionData {
        g,
        m_sigma: usize_vec("M_sigma")?,
        m_tau: usize_vec("M_tau")?,
        splittings,
        divisorial: None,
    };
    if let Some(m_delta) = parse_divisorial_m_delta(obj)? {
        data.divisorial = Some(Divisorial {
            m_delta,
            deg_s: data.deg_s(),
        });
    }
    data.validate()?;
    Ok(InputPayload::Graph(data))
}

/// Parse a full input document; JSON syntax errors carry line and column.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = as_object(&value, "input document")?;
    let kind = get(obj, "kind")?
        .as_str()
        .ok_or_else(|| invalid("'kind' must be \"branch\" or \"graph\""))?;
    let payload = match kind {
        "branch" => parse_branch_payload(obj)?,
        "graph" => parse_graph_payload(obj)?,
        other => return Err(invalid(format!("unknown input kind '{other}'"))),
    };
    let default_order = match obj.get("default_order") {
        None | Some(Value::Null) => None,
        Some(v) => Some(as_usize(v, "default_order")?),
    };
    Ok(InputDocument {
        payload,
        default_order,
    })
}

fn int_value(n: &Int) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn int_from_value(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .ok_or_else(|| invalid("coefficient must be an integer")),
        Value::String(s) => {
            Int::from_str(s).map_err(|_| invalid(format!("bad integer '{s}'")))
        }
        _ => Err(invalid("coefficient must be an integer or integer string")),
    }
}

/// Output document for a computed series.
pub fn output_json(series: &LSeries, kind: &str, factored: &BinomialFactorization) -> String {
    let coefficients: Vec<Value> = series
        .coeffs()
        .iter()
        .map(|p| Value::Array(p.coeffs().iter().map(int_value).collect()))
        .collect();
    json!({
        "order": series.order(),
        "kind": kind,
        "coefficients": coefficients,
        "factored": factored.to_string(),
    })
    .to_string()
}

/// Re-parse an output document into the in-memory series (round-trip
/// check support).
pub fn parse_output(text: &str) -> Result<(LSeries, String, String)> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = as_object(&value, "output document")?;
    let order = as_usize(get(obj, "order")?, "order")?;
    let kind = get(obj, "kind")?
        .as_str()
        .ok_or_else(|| invalid("'kind' must be a string"))?
        .to_string();
    let coeffs = as_array(get(obj, "coefficients")?, "coefficients")?
        .iter()
        .map(|row| -> Result<LPolynomial> {
            let ints = as_array(row, "coefficient array")?
                .iter()
                .map(int_from_value)
                .collect::<Result<Vec<_>>>()?;
            Ok(LPolynomial::from_coeffs(ints))
        })
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != order + 1 {
        return Err(invalid("coefficient count does not match the order"));
    }
    let factored = get(obj, "factored")?
        .as_str()
        .ok_or_else(|| invalid("'factored' must be a string"))?
        .to_string();
    Ok((LSeries::from_coeffs(order, coeffs), kind, factored))
}

/// Graph data back to its JSON value (used by `verify` diagnostics).
pub fn graph_json(data: &GResolutionData) -> Value {
    json!({
        "kind": "graph",
        "g": data.g,
        "M_sigma": data.m_sigma,
        "M_tau": data.m_tau,
        "splittings": data
            .splittings
            .iter()
            .map(|s| json!({"M_rho": s.m_rho, "ell": s.ell, "deg": s.deg}))
            .collect::<Vec<_>>(),
        "divisorial": data
            .divisorial
            .as_ref()
            .map(|d| json!({"M_delta": d.m_delta}))
            .unwrap_or(Value::Null),
    })
}

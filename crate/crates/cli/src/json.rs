//! Scalar, form and matrix conversions between JSON and library types.

use fluxform::exterior::{Frame, KForm};
use fluxform::scalar::parse_rational;
use fluxform::{Error, Matrix, Result, Scalar};
use serde_json::{json, Map, Value};

/// Accepts `"p/q"` or decimal strings and JSON numbers. Numbers are read
/// from their literal text, so exact mode sees `0.25` as `1/4`.
pub fn scalar_from_json<S: Scalar>(v: &Value, what: &str) -> Result<S> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(Error::Invalid(format!("{what}: expected a number or \"p/q\" string, found {other}"))),
    };
    let q = parse_rational(&text).ok_or_else(|| Error::Invalid(format!("{what}: cannot parse '{text}'")))?;
    Ok(S::from_rational(&q))
}

pub fn scalars_from_json<S: Scalar>(vs: &[Value], what: &str) -> Result<Vec<S>> {
    vs.iter().enumerate().map(|(i, v)| scalar_from_json(v, &format!("{what}[{}]", i + 1))).collect()
}

/// Exact scalars render as strings, floats as numbers.
pub fn scalar_to_json<S: Scalar>(s: &S) -> Value {
    if S::EXACT {
        Value::String(s.render())
    } else {
        let x = s.to_f64();
        serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(format!("{x}")))
    }
}

pub fn matrix_to_json<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| scalar_to_json(&m[(i, j)])).collect())).collect())
}

/// `{degree, terms: [{indices (1-based), coeff}], text}`.
pub fn form_to_json<S: Scalar>(a: &KForm<S>) -> Value {
    let terms: Vec<Value> = a
        .sorted_terms()
        .iter()
        .map(|(idx, c)| json!({"indices": idx.iter().map(|i| i + 1).collect::<Vec<_>>(), "coeff": scalar_to_json(c)}))
        .collect();
    json!({"degree": a.degree(), "terms": terms, "text": a.to_string()})
}

/// Reads the `{degree, terms}` object form.
pub fn form_from_json<S: Scalar>(v: &Value, frame: Frame, what: &str) -> Result<KForm<S>> {
    let obj = v.as_object().ok_or_else(|| Error::Invalid(format!("{what}: expected an object")))?;
    let degree = obj
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Invalid(format!("{what}: missing integer 'degree'")))? as usize;
    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid(format!("{what}: missing array 'terms'")))?;
    let mut out = KForm::zero(frame, degree);
    for (t, term) in terms.iter().enumerate() {
        let indices = term
            .get("indices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid(format!("{what}: term {} has no 'indices'", t + 1)))?;
        let mut idx = Vec::with_capacity(indices.len());
        for i in indices {
            match i.as_u64() {
                Some(i) if i >= 1 && (i as usize) <= frame.dim() => idx.push(i as usize - 1),
                _ => return Err(Error::Invalid(format!("{what}: term {} has an index outside 1..={}", t + 1, frame.dim()))),
            }
        }
        if idx.len() != degree {
            return Err(Error::DegreeMismatch { expected: degree, found: idx.len() });
        }
        let c = term.get("coeff").ok_or_else(|| Error::Invalid(format!("{what}: term {} has no 'coeff'", t + 1)))?;
        out.add_indexed(&idx, scalar_from_json(c, what)?)?;
    }
    Ok(out)
}

/// Build an object from ordered pairs.
pub fn object<I: IntoIterator<Item = (&'static str, Value)>>(pairs: I) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

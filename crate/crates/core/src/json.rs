//! Canonical JSON for decompositions: sorted keys, decimal-string centers.

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::ball::Ball;
use crate::decompose::{Attractor, Certificate, Decomposition};
use crate::padic::{IntPolynomial, Residue};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("missing or malformed field `{0}`")]
    Field(String),
    #[error("ball center {center} is not below {p}^{level}")]
    CenterOutOfRange { center: String, p: u32, level: u32 },
}

fn ball(center: &Residue) -> Value {
    json!({ "center": center.value().to_string(), "level": center.level().get() })
}

fn balls(bs: &[Ball]) -> Value {
    Value::Array(bs.iter().map(|b| ball(b.center())).collect())
}

fn polynomial(f: &IntPolynomial) -> Value {
    match f.as_monomial() {
        Some(m) => json!({ "monomial_exponent": m }),
        None => json!({
            "coefficients": f.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>()
        }),
    }
}

fn certificate(c: &Certificate) -> Value {
    let param = match c {
        Certificate::TheoremBacked(case) => json!(case),
        Certificate::SplitForecast(n) | Certificate::Empirical(n) => json!(n),
    };
    json!({ "kind": c.kind(), "param": param })
}

/// The decomposition as a JSON value. `serde_json` maps keep keys sorted.
pub fn to_value(d: &Decomposition) -> Value {
    let orbits: Vec<Value> = d
        .periodic_orbits
        .iter()
        .map(|o| json!({ "period": o.period(), "points": o.points().iter().map(ball).collect::<Vec<_>>() }))
        .collect();
    let components: Vec<Value> = d
        .components
        .iter()
        .map(|c| {
            json!({
                "balls": balls(c.balls()),
                "certificate": certificate(&c.certificate),
                "verified_level": c.verified_level,
            })
        })
        .collect();
    let basins: Vec<Value> = d
        .basins
        .iter()
        .map(|b| {
            let (index, set) = match &b.attractor {
                Attractor::Orbit(i) => (json!(i), Value::Null),
                Attractor::InvariantSet(s) => (Value::Null, balls(s)),
            };
            json!({ "attractor_index": index, "attractor_set": set, "region": balls(&b.region) })
        })
        .collect();
    json!({
        "p": d.prime.get(),
        "polynomial": polynomial(&d.polynomial),
        "max_level": d.max_level,
        "periodic_orbits": orbits,
        "components": components,
        "basins": basins,
        "unresolved": balls(&d.unresolved),
    })
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn to_string(d: &Decomposition) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(d)).expect("values always serialize");
    s.push('\n');
    s
}

/// Checks the shape of a decomposition document and that every center lies in `[0, p^level)`.
pub fn validate(v: &Value) -> Result<(), JsonError> {
    let field = |v: &Value, k: &str| v.get(k).cloned().ok_or_else(|| JsonError::Field(k.to_string()));
    let p = field(v, "p")?.as_u64().ok_or_else(|| JsonError::Field("p".into()))? as u32;
    field(v, "max_level")?.as_u64().ok_or_else(|| JsonError::Field("max_level".into()))?;
    field(v, "polynomial")?;
    let check_ball = |b: &Value| -> Result<(), JsonError> {
        let center = b
            .get("center")
            .and_then(Value::as_str)
            .and_then(|s| s.parse::<BigUint>().ok())
            .ok_or_else(|| JsonError::Field("center".into()))?;
        let level = b
            .get("level")
            .and_then(Value::as_u64)
            .ok_or_else(|| JsonError::Field("level".into()))? as u32;
        if center >= BigUint::from(p).pow(level) {
            return Err(JsonError::CenterOutOfRange { center: center.to_string(), p, level });
        }
        Ok(())
    };
    let array = |v: &Value, k: &str| -> Result<Vec<Value>, JsonError> {
        v.get(k)
            .and_then(Value::as_array)
            .cloned()
            .ok_or_else(|| JsonError::Field(k.to_string()))
    };
    for o in array(v, "periodic_orbits")? {
        array(&o, "points")?.iter().try_for_each(check_ball)?;
    }
    for c in array(v, "components")? {
        array(&c, "balls")?.iter().try_for_each(check_ball)?;
        field(&c, "certificate")?;
    }
    for b in array(v, "basins")? {
        array(&b, "region")?.iter().try_for_each(check_ball)?;
        if let Some(set) = b.get("attractor_set").and_then(Value::as_array) {
            set.iter().try_for_each(check_ball)?;
        }
    }
    array(v, "unresolved")?.iter().try_for_each(check_ball)
}

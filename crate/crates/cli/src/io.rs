use std::path::Path;

use serde_json::{json, Value};

use pointlike_core::ainf::{AInf, Morphism};
use pointlike_core::novikov::{series_to_value, NovikovSeries};
use pointlike_core::rational::{rational_to_value, Rational};

use crate::outcome::CliError;

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key)
        .ok_or_else(|| CliError::Malformed(format!("missing \"{key}\"")))
}

pub fn series_json(s: &NovikovSeries) -> Value {
    json!({ "display": s.to_string(), "value": series_to_value(s) })
}

/// Nonzero coefficients keyed by basis name.
pub fn morphism_json<C: AInf + ?Sized>(cat: &C, m: &Morphism) -> Value {
    let (x, y) = (m.src, m.tgt);
    let entries: serde_json::Map<String, Value> = m
        .coeffs()
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(&b, c)| (cat.basis_name(x, y, b), Value::String(c.to_string())))
        .collect();
    json!({ "precision": m.precision().to_string(), "coefficients": entries })
}

pub fn point_json(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rational_to_value).collect())
}

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::ainf::{coeff_from_value, AInf, AInfCategory, Morphism};
use crate::novikov::Exponent;
use crate::rational::rational_from_value;

use super::category::{Summand, TwistedCategory};
use super::idempotent::HomotopyIdempotent;
use super::TwistedError;

/// A twisted complex read from JSON, with an optional homotopy idempotent.
pub struct TwistedInput {
    pub category: TwistedCategory<AInfCategory>,
    pub object: usize,
    pub idempotent: Option<HomotopyIdempotent>,
}

fn schema(m: impl Into<String>) -> TwistedError {
    TwistedError::Schema(m.into())
}

fn entries(
    tw: &TwistedCategory<AInfCategory>,
    x: usize,
    v: &Value,
    e: &Exponent,
) -> Result<Morphism, TwistedError> {
    let list = v
        .as_array()
        .ok_or_else(|| schema("entries must be a list"))?;
    let mut out = Vec::new();
    let s = tw.summands(x);
    for item in list {
        let idx = |k: &str| -> Result<usize, TwistedError> {
            let i = item
                .get(k)
                .and_then(Value::as_u64)
                .ok_or_else(|| schema(format!("entry without {k}")))? as usize;
            if i >= s.len() {
                return Err(schema(format!("{k} {i} out of range")));
            }
            Ok(i)
        };
        let (row, col) = (idx("row")?, idx("col")?);
        let name = item
            .get("basis")
            .and_then(Value::as_str)
            .ok_or_else(|| schema("entry without basis"))?;
        let b = tw
            .base
            .basis_index(s[row].object, s[col].object, name)
            .ok_or_else(|| schema(format!("unknown basis element {name}")))?;
        let c = coeff_from_value(item.get("coeff").unwrap_or(&json!(1)), e)?;
        out.push((row, col, b, c));
    }
    Ok(tw.from_entries(x, x, out))
}

/// Reads `{category, summands, delta?, idempotent?}`; the differential is validated.
pub fn twisted_from_json(
    v: &Value,
    default_truncation: Option<&Exponent>,
) -> Result<TwistedInput, TwistedError> {
    let base = AInfCategory::from_json(
        v.get("category")
            .ok_or_else(|| schema("missing category"))?,
        default_truncation,
    )?;
    let e = base.truncation().clone();
    let mut summands = Vec::new();
    for s in v
        .get("summands")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("missing summands"))?
    {
        let name = s
            .get("object")
            .and_then(Value::as_str)
            .ok_or_else(|| schema("summand without object"))?;
        let object = base
            .object_index(name)
            .ok_or_else(|| schema(format!("unknown object {name}")))?;
        let shift = s.get("shift").and_then(Value::as_i64).unwrap_or(0) as i32;
        let level = match s.get("level") {
            Some(l) => rational_from_value(l).map_err(TwistedError::Schema)?,
            None => crate::rational::int(0),
        };
        summands.push(Summand {
            object,
            shift,
            level,
        });
    }
    let mut tw = TwistedCategory::new(base);
    let x = tw.add_object("V", summands)?;
    if let Some(d) = v.get("delta") {
        let delta = entries(&tw, x, d, &e)?;
        tw.set_delta(x, delta)?;
    }
    let idempotent = match v.get("idempotent") {
        None => None,
        Some(Value::String(s)) if s == "unit" => Some(
            HomotopyIdempotent::unit(&tw, x).ok_or_else(|| schema("carrier has no strict unit"))?,
        ),
        Some(Value::Object(map)) => {
            let mut components = BTreeMap::new();
            for (k, list) in map {
                let d: usize = k
                    .parse()
                    .map_err(|_| schema(format!("bad component index {k}")))?;
                components.insert(d, entries(&tw, x, list, &e)?);
            }
            Some(HomotopyIdempotent {
                carrier: x,
                components,
            })
        }
        Some(_) => {
            return Err(schema(
                "idempotent must be \"unit\" or an object of components",
            ))
        }
    };
    Ok(TwistedInput {
        category: tw,
        object: x,
        idempotent,
    })
}

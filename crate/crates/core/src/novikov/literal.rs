//! JSON form of a series.
//!
//! Either a bare list of `[exp_n, exp_d, re_n, re_d, im_n, im_d]` rows, whose
//! truncation comes from context, or `{"terms": [...], "truncation": [n, d]}`.

use serde_json::Value;

use super::{Exponent, Gaussian, NovikovError, NovikovSeries};
use crate::rational::{bigint_from_value, rational_from_value, rational_to_value, Rational};

fn row(v: &Value) -> Result<(Exponent, Gaussian), NovikovError> {
    let err = |m: String| NovikovError::Literal(m);
    let items = v
        .as_array()
        .ok_or_else(|| err(format!("term must be a list, got {v}")))?;
    if items.len() != 6 {
        return Err(err(format!("term needs 6 integers, got {}", items.len())));
    }
    let mut ints = Vec::with_capacity(6);
    for x in items {
        ints.push(bigint_from_value(x).map_err(err)?);
    }
    for d in [&ints[1], &ints[3], &ints[5]] {
        if num_traits::Zero::is_zero(d) {
            return Err(err("zero denominator".into()));
        }
    }
    let q = |n: usize| Rational::new(ints[n].clone(), ints[n + 1].clone());
    Ok((Exponent::new(q(0)), Gaussian::new(q(2), q(4))))
}

/// Parses a series. `truncation` is the context value used when the literal
/// does not carry its own.
pub fn series_from_value(
    v: &Value,
    truncation: Option<&Exponent>,
) -> Result<NovikovSeries, NovikovError> {
    let (rows, trunc) = match v {
        Value::Array(rows) => (rows.as_slice(), None),
        Value::Object(map) => {
            let rows = map
                .get("terms")
                .and_then(Value::as_array)
                .ok_or_else(|| NovikovError::Literal("missing \"terms\" list".into()))?;
            let t = match map.get("truncation") {
                Some(t) => Some(Exponent::new(
                    rational_from_value(t).map_err(NovikovError::Literal)?,
                )),
                None => None,
            };
            (rows.as_slice(), t)
        }
        other => {
            return Err(NovikovError::Literal(format!(
                "series expected, got {other}"
            )))
        }
    };
    let trunc = trunc
        .or_else(|| truncation.cloned())
        .ok_or_else(|| NovikovError::Literal("no truncation given".into()))?;
    let terms = rows.iter().map(row).collect::<Result<Vec<_>, _>>()?;
    Ok(NovikovSeries::from_terms(terms, trunc))
}

pub fn series_to_value(s: &NovikovSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .iter()
        .map(|(e, c)| {
            let mut row = Vec::with_capacity(6);
            for r in [e.value(), &c.re, &c.im] {
                if let Value::Array(nd) = rational_to_value(r) {
                    row.extend(nd);
                }
            }
            Value::Array(row)
        })
        .collect();
    serde_json::json!({
        "terms": terms,
        "truncation": rational_to_value(s.truncation().value()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let v = json!({"terms": [[1, 2, 3, 1, 0, 1], [2, 1, -1, 4, 1, 1]], "truncation": [5, 1]});
        let s = series_from_value(&v, None).unwrap();
        assert_eq!(s.terms().len(), 2);
        assert_eq!(series_from_value(&series_to_value(&s), None).unwrap(), s);
    }

    #[test]
    fn bare_list_needs_context() {
        let v = json!([[0, 1, 1, 1, 0, 1]]);
        assert!(series_from_value(&v, None).is_err());
        let s = series_from_value(&v, Some(&Exponent::from_int(2))).unwrap();
        assert_eq!(s, NovikovSeries::one(Exponent::from_int(2)));
    }

    #[test]
    fn rejects_malformed_rows() {
        assert!(series_from_value(&json!([[0, 1, 1]]), Some(&Exponent::from_int(1))).is_err());
        assert!(
            series_from_value(&json!([[0, 0, 1, 1, 0, 1]]), Some(&Exponent::from_int(1))).is_err()
        );
        assert!(series_from_value(&json!("q"), Some(&Exponent::from_int(1))).is_err());
    }
}

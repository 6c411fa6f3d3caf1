//! JSON forms.
//!
//! Polytope: `{"box": [x0, x1, y0, y1]}` or `{"halfplanes": [{"a": [a1, a2], "b": b}]}`.
//! Laurent polynomial: `{"terms": [{"exp": [i, j], "coeff": <series>}]}`.
//! Tropical polynomial: `{"tropical": [{"exp": [i, j], "val": r}]}` or a Laurent polynomial.
//! Complex: `{"segments": [[[x, y], [x, y]]], "points": [[x, y]]}` or any polynomial form.

use serde_json::Value;

use crate::novikov::{series_from_value, Exponent};
use crate::rational::{rational_from_value, Rational};

use super::polytope::{HalfPlane, Point, RationalPolytope};
use super::{
    tropical_hypersurface, tropicalize, Exp, LaurentPoly, PolyhedralComplex, TropicalError,
    TropicalPolynomial,
};

fn schema(m: impl Into<String>) -> TropicalError {
    TropicalError::Schema(m.into())
}

fn rational(v: &Value) -> Result<Rational, TropicalError> {
    rational_from_value(v).map_err(schema)
}

fn list<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, TropicalError> {
    v.as_array()
        .ok_or_else(|| schema(format!("{what} must be a list")))
}

fn point(v: &Value) -> Result<Point, TropicalError> {
    let xs = list(v, "point")?;
    if xs.len() != 2 {
        return Err(schema("point needs 2 coordinates"));
    }
    Ok([rational(&xs[0])?, rational(&xs[1])?])
}

fn exponent(v: &Value) -> Result<Exp, TropicalError> {
    let xs = list(v, "exp")?;
    let ints: Option<Vec<i64>> = xs.iter().map(Value::as_i64).collect();
    match ints.as_deref() {
        Some([a, b]) => Ok([*a, *b]),
        _ => Err(schema("exp needs 2 integers")),
    }
}

pub fn polytope_from_json(v: &Value) -> Result<RationalPolytope, TropicalError> {
    if let Some(b) = v.get("box") {
        let xs = list(b, "box")?;
        if xs.len() != 4 {
            return Err(schema("box needs [x0, x1, y0, y1]"));
        }
        let r: Vec<Rational> = xs.iter().map(rational).collect::<Result<_, _>>()?;
        return RationalPolytope::rect(r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone());
    }
    let rows = v
        .get("halfplanes")
        .ok_or_else(|| schema("polytope needs \"box\" or \"halfplanes\""))?;
    let hs = list(rows, "halfplanes")?
        .iter()
        .map(|h| {
            let a = point(h.get("a").ok_or_else(|| schema("half-plane needs \"a\""))?)?;
            let b = rational(h.get("b").ok_or_else(|| schema("half-plane needs \"b\""))?)?;
            Ok(HalfPlane { a, b })
        })
        .collect::<Result<Vec<_>, TropicalError>>()?;
    RationalPolytope::new(hs)
}

pub fn laurent_from_json(v: &Value, truncation: &Exponent) -> Result<LaurentPoly, TropicalError> {
    let rows = list(
        v.get("terms")
            .ok_or_else(|| schema("polynomial needs \"terms\""))?,
        "terms",
    )?;
    let terms = rows
        .iter()
        .map(|t| {
            let nu = exponent(t.get("exp").ok_or_else(|| schema("term needs \"exp\""))?)?;
            let c = series_from_value(
                t.get("coeff")
                    .ok_or_else(|| schema("term needs \"coeff\""))?,
                Some(truncation),
            )
            .map_err(|e| schema(e.to_string()))?;
            Ok((nu, c))
        })
        .collect::<Result<Vec<_>, TropicalError>>()?;
    LaurentPoly::new(terms)
}

pub fn tropical_from_json(
    v: &Value,
    truncation: &Exponent,
) -> Result<TropicalPolynomial, TropicalError> {
    match v.get("tropical") {
        Some(rows) => {
            let terms = list(rows, "tropical")?
                .iter()
                .map(|t| {
                    let nu = exponent(t.get("exp").ok_or_else(|| schema("term needs \"exp\""))?)?;
                    let c = rational(t.get("val").ok_or_else(|| schema("term needs \"val\""))?)?;
                    Ok((nu, c))
                })
                .collect::<Result<Vec<_>, TropicalError>>()?;
            Ok(TropicalPolynomial::new(terms))
        }
        None => Ok(tropicalize(&laurent_from_json(v, truncation)?)),
    }
}

pub fn complex_from_json(
    v: &Value,
    ambient: &RationalPolytope,
    truncation: &Exponent,
) -> Result<PolyhedralComplex, TropicalError> {
    if v.get("segments").is_none() && v.get("points").is_none() {
        return Ok(tropical_hypersurface(
            &tropical_from_json(v, truncation)?,
            ambient,
        ));
    }
    let mut segs = Vec::new();
    if let Some(s) = v.get("segments") {
        for seg in list(s, "segments")? {
            let ends = list(seg, "segment")?;
            if ends.len() != 2 {
                return Err(schema("segment needs 2 endpoints"));
            }
            segs.push((point(&ends[0])?, point(&ends[1])?));
        }
    }
    let mut pts = Vec::new();
    if let Some(p) = v.get("points") {
        for x in list(p, "points")? {
            pts.push(point(x)?);
        }
    }
    if segs
        .iter()
        .flat_map(|(a, b)| [a, b])
        .chain(&pts)
        .any(|p| !ambient.contains(p))
    {
        return Err(schema("complex leaves the ambient polytope"));
    }
    Ok(PolyhedralComplex::from_segments(ambient.clone(), segs, pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_box_and_tropical_line() {
        let p = polytope_from_json(&json!({"box": [-1, 1, -1, 1]})).unwrap();
        let f = tropical_from_json(
            &json!({"terms": [
                {"exp": [0, 0], "coeff": [[0, 1, 1, 1, 0, 1]]},
                {"exp": [1, 0], "coeff": [[0, 1, 1, 1, 0, 1]]},
                {"exp": [0, 1], "coeff": [[0, 1, 1, 1, 0, 1]]}
            ]}),
            &Exponent::from_int(4),
        )
        .unwrap();
        assert_eq!(tropical_hypersurface(&f, &p).edges.len(), 3);
    }

    #[test]
    fn rejects_out_of_domain_segments() {
        let p = RationalPolytope::unit_square();
        let v = json!({"segments": [[[0, 0], [2, 0]]]});
        assert!(complex_from_json(&v, &p, &Exponent::from_int(1)).is_err());
    }
}

use serde_json::{json, Value};

use pointlike_core::novikov::{
    polydisc_contains, series_from_value, Exponent, NovikovError, NovikovSeries,
};
use pointlike_core::rational::rational_from_value;

use crate::io::{field, series_json};
use crate::outcome::{CliError, Globals, Outcome, Verdict};

fn series_args(v: &Value, g: &Globals) -> Result<Vec<NovikovSeries>, CliError> {
    field(v, "args")?
        .as_array()
        .ok_or_else(|| CliError::malformed("\"args\" must be a list"))?
        .iter()
        .map(|a| series_from_value(a, Some(&g.truncation)).map_err(CliError::malformed))
        .collect()
}

fn arity(args: &[NovikovSeries], n: usize, op: &str) -> Result<(), CliError> {
    if args.len() != n {
        return Err(CliError::Malformed(format!(
            "{op} takes {n} argument(s), got {}",
            args.len()
        )));
    }
    Ok(())
}

fn numeric(e: NovikovError) -> CliError {
    match e {
        NovikovError::Literal(_) | NovikovError::DimensionMismatch { .. } => CliError::malformed(e),
        other => CliError::Undecidable(other.to_string()),
    }
}

/// `{"op", "args": [series], "radii"?: [exponents], "expect"?: series | bool | exponent}`.
pub fn eval(v: &Value, g: &Globals) -> Result<Outcome, CliError> {
    let op = field(v, "op")?
        .as_str()
        .ok_or_else(|| CliError::malformed("\"op\" must be a string"))?;
    let args = series_args(v, g)?;
    let result: Value;
    let mut series: Option<NovikovSeries> = None;
    match op {
        "add" | "sub" | "mul" => {
            arity(&args, 2, op)?;
            let (a, b) = (&args[0], &args[1]);
            let r = match op {
                "add" => a + b,
                "sub" => a - b,
                _ => a * b,
            };
            result = series_json(&r);
            series = Some(r);
        }
        "neg" | "invert" | "exp" => {
            arity(&args, 1, op)?;
            let r = match op {
                "neg" => -&args[0],
                "invert" => args[0].invert().map_err(numeric)?,
                _ => args[0].exp().map_err(numeric)?,
            };
            result = series_json(&r);
            series = Some(r);
        }
        "val" => {
            arity(&args, 1, op)?;
            result = json!(args[0].val().to_string());
        }
        "norm" => {
            arity(&args, 1, op)?;
            result = json!(args[0].norm().to_string());
        }
        "polydisc" => {
            let radii: Vec<Exponent> = field(v, "radii")?
                .as_array()
                .ok_or_else(|| CliError::malformed("\"radii\" must be a list"))?
                .iter()
                .map(|r| {
                    rational_from_value(r)
                        .map(Exponent::new)
                        .map_err(CliError::Malformed)
                })
                .collect::<Result<_, _>>()?;
            result = json!(polydisc_contains(&radii, &args).map_err(numeric)?);
        }
        other => return Err(CliError::Malformed(format!("unknown op {other}"))),
    }
    let verdict = match v.get("expect") {
        None => Verdict::Pass,
        Some(exp) => match &series {
            Some(r) => {
                let e =
                    series_from_value(exp, Some(r.truncation())).map_err(CliError::malformed)?;
                Verdict::from_bool(r.agrees_with(&e))
            }
            None => Verdict::from_bool(exp == &result || exp.as_str() == result.as_str()),
        },
    };
    Ok(Outcome::new(verdict, json!({ "op": op, "result": result })))
}

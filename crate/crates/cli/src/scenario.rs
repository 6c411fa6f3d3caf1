use serde_json::{json, Value};

use pointlike_core::novikov::Exponent;
use pointlike_core::rational::rational_from_value;

use crate::cmd::dispatch;
use crate::io::field;
use crate::outcome::{CliError, Globals, Outcome, Verdict};

pub const DEFAULT_TRUNCATION: i64 = 8;

/// Settings given on the command line; each one beats the scenario's own.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub truncation: Option<Exponent>,
    pub seed: Option<u64>,
    pub bound: Option<i64>,
    pub order: Option<u32>,
}

impl Overrides {
    pub fn globals(&self, scenario: Option<&Value>) -> Result<Globals, CliError> {
        let get = |k: &str| scenario.and_then(|s| s.get(k));
        let truncation = match (&self.truncation, get("truncation")) {
            (Some(t), _) => t.clone(),
            (None, Some(v)) => parse_truncation(v)?,
            (None, None) => Exponent::from_int(DEFAULT_TRUNCATION),
        };
        let seed = self
            .seed
            .or_else(|| get("seed").and_then(Value::as_u64))
            .unwrap_or(0);
        let bound = self.bound.or_else(|| get("bound").and_then(Value::as_i64));
        let order = self
            .order
            .or_else(|| get("order").and_then(Value::as_u64).map(|o| o as u32));
        Ok(Globals {
            truncation,
            seed,
            bound,
            order,
        })
    }
}

pub fn parse_truncation(v: &Value) -> Result<Exponent, CliError> {
    let r = rational_from_value(v).map_err(CliError::Malformed)?;
    let e = Exponent::new(r);
    if !e.is_positive() {
        return Err(CliError::malformed("truncation must be positive"));
    }
    Ok(e)
}

/// `{"kind", "action", "payload", "seed"?, "truncation"?, "bound"?, "order"?, "expect"?}`.
///
/// With `expect` the verdict is whether the observed verdict matches it.
pub fn run_scenario(v: &Value, o: &Overrides) -> Result<(Outcome, Globals), CliError> {
    let kind = field(v, "kind")?
        .as_str()
        .ok_or_else(|| CliError::malformed("kind must be a string"))?;
    let action = field(v, "action")?
        .as_str()
        .ok_or_else(|| CliError::malformed("action must be a string"))?;
    let g = o.globals(Some(v))?;
    let mut out = dispatch(kind, action, field(v, "payload")?, &g)?;
    if let Some(exp) = v.get("expect") {
        let want = match exp.as_str() {
            Some("pass") => Verdict::Pass,
            Some("fail") => Verdict::Fail,
            _ => return Err(CliError::malformed("expect must be \"pass\" or \"fail\"")),
        };
        let observed = out.verdict;
        if let Value::Object(m) = &mut out.report {
            m.insert("observed".into(), json!(observed.as_str()));
            m.insert("expected".into(), json!(want.as_str()));
        }
        out.verdict = Verdict::from_bool(observed == want);
    }
    Ok((out, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_scenario_fields() {
        let s = json!({"seed": 4, "truncation": "5/2", "bound": 3});
        let none = Overrides::default().globals(Some(&s)).unwrap();
        assert_eq!(
            (none.seed, none.bound, none.truncation.to_string()),
            (4, Some(3), "5/2".to_string())
        );
        let o = Overrides {
            seed: Some(9),
            truncation: Some(Exponent::from_int(6)),
            ..Default::default()
        };
        let g = o.globals(Some(&s)).unwrap();
        assert_eq!(
            (g.seed, g.bound, g.truncation),
            (9, Some(3), Exponent::from_int(6))
        );
    }

    #[test]
    fn defaults_without_scenario() {
        let g = Overrides::default().globals(None).unwrap();
        assert_eq!(
            (g.seed, g.truncation),
            (0, Exponent::from_int(DEFAULT_TRUNCATION))
        );
    }

    #[test]
    fn truncation_must_be_positive() {
        assert!(parse_truncation(&json!(0)).is_err());
        assert!(parse_truncation(&json!("x")).is_err());
    }

    #[test]
    fn expectation_flips_the_verdict() {
        let s = json!({"kind": "lattice", "action": "member", "payload": {"n": 2, "vector": [1, 0, 0]}, "expect": "fail"});
        // Without an inner expectation membership reports pass, so expecting fail fails.
        let (out, _) = run_scenario(&s, &Overrides::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Fail);
        assert_eq!(out.report["observed"], "pass");
    }
}

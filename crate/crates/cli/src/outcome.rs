use serde_json::{json, Value};
use thiserror::Error;

use pointlike_core::novikov::Exponent;

/// Everything that stops a command short of a verdict. Both map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("undecidable at this truncation: {0}")]
    Undecidable(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn malformed(e: impl std::fmt::Display) -> Self {
        CliError::Malformed(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    pub report: Value,
    /// A figure to write when the caller asked for one.
    pub svg: Option<String>,
}

impl Outcome {
    pub fn new(verdict: Verdict, report: Value) -> Self {
        Self {
            verdict,
            report,
            svg: None,
        }
    }
}

/// Effective global settings; flags override scenario fields.
#[derive(Clone, Debug)]
pub struct Globals {
    pub truncation: Exponent,
    pub seed: u64,
    pub bound: Option<i64>,
    pub order: Option<u32>,
}

impl Globals {
    pub fn stamp(&self, mut report: Value) -> Value {
        if let Value::Object(m) = &mut report {
            m.insert("seed".into(), json!(self.seed));
            m.insert("truncation".into(), json!(self.truncation.to_string()));
        }
        report
    }
}

pub fn exit_code(r: Result<&Outcome, &CliError>) -> u8 {
    match r {
        Ok(o) if o.verdict == Verdict::Pass => 0,
        Ok(_) => 1,
        Err(_) => 2,
    }
}

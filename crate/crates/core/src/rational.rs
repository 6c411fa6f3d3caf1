//! Exact rational helpers and the integer literal forms accepted in JSON input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

pub fn min_rat<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if a <= b {
        a
    } else {
        b
    }
}

/// Renders `p/q` or `p` when the denominator is one.
pub fn fmt_rat(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// An integer in JSON: either a number or a decimal string (arbitrary precision).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLit {
    Small(i64),
    Big(String),
}

impl IntLit {
    pub fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            IntLit::Small(n) => Ok(BigInt::from(*n)),
            IntLit::Big(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|e| format!("bad integer literal {s:?}: {e}")),
        }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        match i64::try_from(n) {
            Ok(v) => IntLit::Small(v),
            Err(_) => IntLit::Big(n.to_string()),
        }
    }
}

pub fn bigint_from_value(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("integer expected, got {n}")),
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|e| format!("bad integer literal {s:?}: {e}")),
        other => Err(format!("integer expected, got {other}")),
    }
}

/// Reads a rational from `[num, den]`, a bare integer, or a string `"p/q"`.
pub fn rational_from_value(v: &Value) -> Result<Rational, String> {
    match v {
        Value::Array(items) if items.len() == 2 => {
            let n = bigint_from_value(&items[0])?;
            let d = bigint_from_value(&items[1])?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rational::new(n, d))
        }
        Value::String(s) if s.contains('/') => {
            let (n, d) = s.split_once('/').unwrap();
            let n = n.trim().parse::<BigInt>().map_err(|e| e.to_string())?;
            let d = d.trim().parse::<BigInt>().map_err(|e| e.to_string())?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rational::new(n, d))
        }
        other => bigint_from_value(other).map(Rational::from_integer),
    }
}

pub fn rational_to_value(x: &Rational) -> Value {
    Value::Array(vec![int_value(x.numer()), int_value(x.denom())])
}

pub fn int_value(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

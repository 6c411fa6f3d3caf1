use serde_json::{json, Value};

use pointlike_core::homalg::int_vec;
use pointlike_core::mukai::{
    congruence_obstruction, explicit_generators, lattice_report, membership, span_and_saturation,
    IntegerLattice,
};

use crate::io::field;
use crate::outcome::{CliError, Globals, Outcome, Verdict};

const DEFAULT_BOUND: i64 = 10;

fn n_of(v: &Value) -> Result<i64, CliError> {
    field(v, "n")?
        .as_i64()
        .ok_or_else(|| CliError::malformed("\"n\" must be an integer"))
}

fn bound_of(v: &Value, g: &Globals) -> i64 {
    g.bound
        .or_else(|| v.get("bound").and_then(Value::as_i64))
        .unwrap_or(DEFAULT_BOUND)
}

/// Saturation is full, every class obeys the congruence, and the congruence
/// excludes `(1, 0, 0)` whenever there is one.
pub fn verify(v: &Value, g: &Globals) -> Result<Outcome, CliError> {
    let r = lattice_report(n_of(v)?, bound_of(v, g)).map_err(CliError::malformed)?;
    let ok = r.saturation_full && r.congruence_holds && (r.congruence.is_none() || !r.member_100);
    let report = serde_json::to_value(&r).map_err(CliError::malformed)?;
    Ok(Outcome::new(Verdict::from_bool(ok), report))
}

/// `{"n", "vector": [a, b, c], "expect"?: bool}`.
pub fn member(v: &Value, g: &Globals) -> Result<Outcome, CliError> {
    let n = n_of(v)?;
    let bound = bound_of(v, g);
    let xs: Vec<i64> = field(v, "vector")?
        .as_array()
        .and_then(|a| a.iter().map(Value::as_i64).collect())
        .ok_or_else(|| CliError::malformed("\"vector\" must be a list of integers"))?;
    if xs.len() != 3 {
        return Err(CliError::malformed("vector needs 3 coordinates"));
    }
    let lat = IntegerLattice::u_plus_even(n);
    let mut gens = lat
        .enumerate_square_minus2(bound)
        .map_err(CliError::malformed)?;
    gens.extend(explicit_generators(n));
    let span = span_and_saturation(&gens, 3);
    let vec = int_vec(&xs);
    let is_member = membership(&vec, &span.span);
    let cong = congruence_obstruction(n).map_err(CliError::malformed)?;
    let verdict = match v.get("expect").and_then(Value::as_bool) {
        Some(e) => Verdict::from_bool(e == is_member),
        None => Verdict::Pass,
    };
    Ok(Outcome::new(
        verdict,
        json!({
            "n": n,
            "bound": bound,
            "vector": xs,
            "member": is_member,
            "square": lat.square(&vec).map_err(CliError::malformed)?.to_string(),
            "congruence": cong.map(|c| c.describe()),
            "congruence_value": cong.map(|c| c.eval(&vec)),
        }),
    ))
}

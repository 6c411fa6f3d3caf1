use serde_json::{json, Value};

use pointlike_core::twisted::{
    check_idempotent, endomorphism_cohomology, idempotent_window, is_point_like, twisted_from_json,
    TwistedError, TwistedInput,
};

use crate::io::morphism_json;
use crate::outcome::{CliError, Globals, Outcome, Verdict};

const DEFAULT_WINDOW: usize = 8;

fn classify(e: TwistedError) -> CliError {
    if e.is_undecidable() {
        CliError::Undecidable(e.to_string())
    } else {
        CliError::malformed(e)
    }
}

fn load(v: &Value, g: &Globals) -> Result<TwistedInput, CliError> {
    let t = twisted_from_json(v, Some(&g.truncation)).map_err(classify)?;
    if t.idempotent.is_none() {
        return Err(CliError::malformed("missing \"idempotent\""));
    }
    Ok(t)
}

/// The homotopy-idempotent equations through the degree bound, plus the
/// point-like test when they hold.
pub fn check(v: &Value, g: &Globals) -> Result<Outcome, CliError> {
    let t = load(v, g)?;
    let p = t.idempotent.as_ref().expect("checked in load");
    let r = check_idempotent(&t.category, p).map_err(classify)?;
    let defects: Vec<Value> = r
        .defects
        .iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(d, m)| json!({"d": d, "defect": morphism_json(&t.category, m)}))
        .collect();
    let mut report = json!({
        "degree_bound": r.degree_bound,
        "passes": r.passes(),
        "failing": r.failing(),
        "defects": defects,
    });
    if r.passes() {
        let endo = endomorphism_cohomology(&t.category, p).map_err(classify)?;
        report["image_ranks"] = json!(endo.ranks);
        report["point_like"] = json!(is_point_like(&t.category, p).map_err(classify)?);
    }
    Ok(Outcome::new(Verdict::from_bool(r.passes()), report))
}

/// Maurer–Cartan residual of the window complex; passes when it vanishes.
pub fn window(v: &Value, g: &Globals) -> Result<Outcome, CliError> {
    let t = load(v, g)?;
    let p = t.idempotent.as_ref().expect("checked in load");
    let n = v
        .get("window")
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .or(g.order.map(|o| o as usize))
        .unwrap_or(DEFAULT_WINDOW);
    let w = idempotent_window(&t.category, p, n).map_err(classify)?;
    let direct = check_idempotent(&t.category, p).map_err(classify)?;
    let mc = w.is_maurer_cartan();
    Ok(Outcome::new(
        Verdict::from_bool(mc),
        json!({
            "window": n,
            "maurer_cartan": mc,
            "defect_lengths": w.defect_lengths(),
            "direct_failing": direct.failing(),
            "agrees_with_direct": mc == direct.passes() && w.defect_lengths() == direct.failing(),
        }),
    ))
}

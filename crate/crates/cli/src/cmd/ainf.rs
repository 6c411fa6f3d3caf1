use std::collections::BTreeMap;

use serde_json::{json, Value};

use pointlike_core::ainf::{
    check_relations, check_units, coeff_from_value, mc_residual, versal_match, AInf, AInfCategory,
    AInfError, Morphism, MultiIndex,
};
use pointlike_core::fixtures::TwistedPair;

use crate::io::{field, morphism_json};
use crate::outcome::{CliError, Globals, Outcome, Verdict};

pub fn classify(e: AInfError) -> CliError {
    if e.is_undecidable() {
        CliError::Undecidable(e.to_string())
    } else {
        CliError::malformed(e)
    }
}

fn category(v: &Value, g: &Globals) -> Result<AInfCategory, CliError> {
    AInfCategory::from_json(field(v, "category")?, Some(&g.truncation)).map_err(classify)
}

/// A-infinity relations and strict-unit axioms through the requested arity.
pub fn check(v: &Value, g: &Globals) -> Result<Outcome, CliError> {
    let cat = category(v, g)?;
    let arity = g
        .order
        .map(|o| o as usize)
        .or_else(|| {
            v.get("max_arity")
                .and_then(Value::as_u64)
                .map(|a| a as usize)
        })
        .unwrap_or(cat.max_arity() + 1);
    let rel = check_relations(&cat, arity).map_err(classify)?;
    let units = check_units(&cat, arity).map_err(classify)?;
    let show = |vs: &[pointlike_core::ainf::Violation]| -> Vec<Value> {
        vs.iter()
            .take(20)
            .map(|x| json!({"arity": x.arity, "objects": x.objects, "inputs": x.inputs, "output": morphism_json(&cat, &x.output)}))
            .collect()
    };
    Ok(Outcome::new(
        Verdict::from_bool(rel.is_empty() && units.is_empty()),
        json!({
            "max_arity": arity,
            "relation_violations": rel.len(),
            "unit_violations": units.len(),
            "first_relation_violations": show(&rel),
            "first_unit_violations": show(&units),
        }),
    ))
}

/// `{"category", "delta": {"object", "entries": [{"basis", "coeff"}]}}`; passes when the residual vanishes.
pub fn mc(v: &Value, g: &Globals) -> Result<Outcome, CliError> {
    let cat = category(v, g)?;
    let d = field(v, "delta")?;
    let obj = field(d, "object")?
        .as_str()
        .ok_or_else(|| CliError::malformed("object must be a string"))?;
    let x = cat
        .object_index(obj)
        .ok_or_else(|| CliError::Malformed(format!("unknown object {obj}")))?;
    let e = cat.truncation().clone();
    let mut coeffs = Vec::new();
    for it in field(d, "entries")?
        .as_array()
        .ok_or_else(|| CliError::malformed("entries must be a list"))?
    {
        let name = field(it, "basis")?
            .as_str()
            .ok_or_else(|| CliError::malformed("basis must be a string"))?;
        let b = cat
            .basis_index(x, x, name)
            .ok_or_else(|| CliError::Malformed(format!("unknown basis {name}")))?;
        coeffs.push((
            b,
            coeff_from_value(field(it, "coeff")?, &e).map_err(classify)?,
        ));
    }
    let delta = Morphism::from_coeffs(x, x, coeffs, e);
    let r = mc_residual(&cat, &delta).map_err(classify)?;
    Ok(Outcome::new(
        Verdict::from_bool(r.is_zero()),
        json!({ "residual": morphism_json(&cat, &r) }),
    ))
}

fn theta(v: &Value) -> Result<[BTreeMap<MultiIndex, i64>; 2], CliError> {
    let rows = v
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| CliError::malformed("theta needs 2 components"))?;
    let mut out: [BTreeMap<MultiIndex, i64>; 2] = Default::default();
    for (i, row) in rows.iter().enumerate() {
        for t in row
            .as_array()
            .ok_or_else(|| CliError::malformed("theta component must be a list"))?
        {
            let exp: MultiIndex = field(t, "exp")?
                .as_array()
                .and_then(|a| a.iter().map(|x| x.as_u64().map(|k| k as u32)).collect())
                .ok_or_else(|| CliError::malformed("exp must be a list of naturals"))?;
            let c = field(t, "coeff")?
                .as_i64()
                .ok_or_else(|| CliError::malformed("coeff must be an integer"))?;
            out[i].insert(exp, c);
        }
    }
    Ok(out)
}

/// Matches the pulled-back family `ε = θ*(x₁X + x₂Y)` on the cone-augmented
/// torus object against the versal family on the plain torus object.
pub fn versal(v: &Value, g: &Globals) -> Result<Outcome, CliError> {
    let th = theta(field(v, "theta")?)?;
    let order = g
        .order
        .or_else(|| v.get("order").and_then(Value::as_u64).map(|o| o as u32))
        .unwrap_or(4);
    let pair = TwistedPair::new(g.truncation.clone());
    let prob = pair.problem(pair.pulled_back_family(&th), order);
    let m = match versal_match(&pair.cat, &prob) {
        Ok(m) => m,
        Err(
            e @ (AInfError::Inconsistent(_)
            | AInfError::NotVersal
            | AInfError::NotQuasiIso
            | AInfError::SeedNotClosed),
        ) => {
            return Ok(Outcome::new(
                Verdict::Fail,
                json!({ "order": order, "obstruction": e.to_string() }),
            ));
        }
        Err(e) => return Err(classify(e)),
    };
    let linear: Vec<Vec<String>> = m
        .linear
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect();
    let eta: Vec<Value> = m
        .eta
        .iter()
        .map(|s| {
            Value::Array(
                s.terms
                    .iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| json!({"exp": k, "coeff": c.to_string()}))
                    .collect(),
            )
        })
        .collect();
    let mut ok = m.residual_order > order;
    if let Some(exp) = v.get("expect_linear") {
        let want: Option<Vec<Vec<i64>>> = serde_json::from_value(exp.clone()).ok();
        let want =
            want.ok_or_else(|| CliError::malformed("expect_linear must be an integer matrix"))?;
        let got_ok = want.len() == m.linear.len()
            && want.iter().zip(&m.linear).all(|(w, r)| {
                w.len() == r.len()
                    && w.iter().zip(r).all(|(a, c)| {
                        c.agrees_with(&pointlike_core::novikov::NovikovSeries::from_int(
                            *a,
                            c.truncation().clone(),
                        ))
                    })
            });
        ok &= got_ok;
    }
    Ok(Outcome::new(
        Verdict::from_bool(ok),
        json!({ "order": order, "residual_order": m.residual_order, "linear": linear, "eta": eta }),
    ))
}

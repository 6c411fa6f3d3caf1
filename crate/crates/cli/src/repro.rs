use serde_json::{json, Value};

use crate::outcome::{CliError, Outcome, Verdict};
use crate::scenario::{run_scenario, Overrides};

/// Scenarios shipped inside the binary, keyed by file name.
pub const FIXTURES: &[(&str, &str)] = &[
    ("novikov-exp", include_str!("../fixtures/novikov-exp.json")),
    (
        "novikov-invert",
        include_str!("../fixtures/novikov-invert.json"),
    ),
    (
        "ainf-torus-check",
        include_str!("../fixtures/ainf-torus-check.json"),
    ),
    (
        "ainf-torus-mc",
        include_str!("../fixtures/ainf-torus-mc.json"),
    ),
    (
        "ainf-versal-planted",
        include_str!("../fixtures/ainf-versal-planted.json"),
    ),
    (
        "tw-summand-projection",
        include_str!("../fixtures/tw-summand-projection.json"),
    ),
    (
        "tw-torus-unit",
        include_str!("../fixtures/tw-torus-unit.json"),
    ),
    (
        "tw-failing-window",
        include_str!("../fixtures/tw-failing-window.json"),
    ),
    ("lattice-n1", include_str!("../fixtures/lattice-n1.json")),
    ("lattice-n2", include_str!("../fixtures/lattice-n2.json")),
    (
        "lattice-member",
        include_str!("../fixtures/lattice-member.json"),
    ),
    ("trop-line", include_str!("../fixtures/trop-line.json")),
    (
        "trop-escape-1000",
        include_str!("../fixtures/trop-escape-1000.json"),
    ),
    (
        "flux-cylinder",
        include_str!("../fixtures/flux-cylinder.json"),
    ),
    (
        "flux-surgery",
        include_str!("../fixtures/flux-surgery.json"),
    ),
];

/// Runs every bundled scenario whose kind matches `module` (all when `None`).
/// Passes when each one meets its expectation.
pub fn repro(module: Option<&str>, o: &Overrides) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut all = true;
    for (name, text) in FIXTURES {
        let v: Value =
            serde_json::from_str(text).map_err(|e| CliError::Malformed(format!("{name}: {e}")))?;
        if module.is_some_and(|m| v.get("kind").and_then(Value::as_str) != Some(m)) {
            continue;
        }
        let row = match run_scenario(&v, o) {
            Ok((out, _)) => {
                all &= out.verdict == Verdict::Pass;
                json!({"name": name, "verdict": out.verdict.as_str()})
            }
            Err(e) => {
                all = false;
                json!({"name": name, "verdict": "error", "error": e.to_string()})
            }
        };
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Malformed(format!(
            "no bundled scenarios for module {}",
            module.unwrap_or("")
        )));
    }
    Ok(Outcome::new(
        Verdict::from_bool(all),
        json!({ "scenarios": rows }),
    ))
}

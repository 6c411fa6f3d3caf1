pub mod ainf;
pub mod flux;
pub mod lattice;
pub mod novikov;
pub mod trop;
pub mod twisted;

use serde_json::Value;

use crate::outcome::{CliError, Globals, Outcome};

type Handler = fn(&Value, &Globals) -> Result<Outcome, CliError>;

/// Every `(kind, action)` pair a scenario file may name.
pub const HANDLERS: &[(&str, &str, Handler)] = &[
    ("novikov", "eval", novikov::eval),
    ("ainf", "check", ainf::check),
    ("ainf", "mc", ainf::mc),
    ("ainf", "versal", ainf::versal),
    ("tw", "check", twisted::check),
    ("tw", "window", twisted::window),
    ("lattice", "verify", lattice::verify),
    ("lattice", "member", lattice::member),
    ("trop", "surface", trop::surface),
    ("trop", "escape", trop::escape),
    ("flux", "check", flux::check),
];

/// Long module names accepted in scenario files.
fn canonical(kind: &str) -> &str {
    match kind {
        "twisted" => "tw",
        "tropical" => "trop",
        other => other,
    }
}

pub fn dispatch(
    kind: &str,
    action: &str,
    payload: &Value,
    g: &Globals,
) -> Result<Outcome, CliError> {
    let kind = canonical(kind);
    let h = HANDLERS
        .iter()
        .find(|(k, a, _)| *k == kind && *a == action)
        .map(|(_, _, h)| h)
        .ok_or_else(|| CliError::Malformed(format!("unknown command {kind} {action}")))?;
    h(payload, g)
}

use std::fmt::Write;

use serde_json::Value;

use pointlike_core::flux::{evaluate_scenario, restriction_image, scenario_from_json, Subspace};
use pointlike_core::rational::Rational;

use crate::outcome::{CliError, Globals, Outcome, Verdict};

pub fn check(v: &Value, _g: &Globals) -> Result<Outcome, CliError> {
    let s = scenario_from_json(v).map_err(CliError::malformed)?;
    let (ok, report) = evaluate_scenario(&s).map_err(CliError::malformed)?;
    let images: Vec<Subspace> = s
        .data
        .iter()
        .map(restriction_image)
        .collect::<Result<_, _>>()
        .map_err(CliError::malformed)?;
    let mut out = Outcome::new(Verdict::from_bool(ok), report);
    out.svg = Some(projection_svg(&images));
    Ok(out)
}

const SIZE: f64 = 400.0;

fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(0.0)
}

/// Projects each subspace onto its first two coordinates and draws the
/// projected basis vectors as lines through the origin; a two-dimensional
/// projection fills the canvas. Rows for ambient dimension below 2 are skipped.
pub fn projection_svg(images: &[Subspace]) -> String {
    let c = SIZE / 2.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        s,
        r##"<line x1="0" y1="{c}" x2="{SIZE}" y2="{c}" stroke="#bbb"/>"##
    );
    let _ = writeln!(
        s,
        r##"<line x1="{c}" y1="0" x2="{c}" y2="{SIZE}" stroke="#bbb"/>"##
    );
    for img in images.iter().filter(|i| i.ambient >= 2) {
        let dirs: Vec<(f64, f64)> = img
            .basis
            .iter()
            .map(|b| (to_f64(&b[0]), to_f64(&b[1])))
            .filter(|(x, y)| *x != 0.0 || *y != 0.0)
            .collect();
        let spans_plane = dirs
            .iter()
            .enumerate()
            .any(|(i, a)| dirs[i + 1..].iter().any(|b| a.0 * b.1 - a.1 * b.0 != 0.0));
        if spans_plane {
            let _ = writeln!(
                s,
                r##"<rect width="{SIZE}" height="{SIZE}" fill="#36c" fill-opacity="0.15"/>"##
            );
            continue;
        }
        for (x, y) in dirs {
            let k = c / x.abs().max(y.abs());
            let _ = writeln!(
                s,
                r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#36c" stroke-width="2"/>"##,
                c - k * x,
                c + k * y,
                c + k * x,
                c - k * y
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

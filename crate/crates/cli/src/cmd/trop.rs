use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pointlike_core::rational::Rational;
use pointlike_core::tropical::{
    complex_from_json, polytope_from_json, to_svg, tropical_from_json, tropical_hypersurface,
    uncovered_point, PolyhedralComplex, RationalPolytope, TropicalPolynomial,
};

use crate::io::{field, point_json};
use crate::outcome::{CliError, Globals, Outcome, Verdict};

fn polytope(v: &Value) -> Result<RationalPolytope, CliError> {
    polytope_from_json(field(v, "polytope")?).map_err(CliError::malformed)
}

/// `{"poly", "polytope", "expect_edges"?}`: the corner locus, with every
/// vertex and edge midpoint re-checked against the polynomial.
pub fn surface(v: &Value, g: &Globals) -> Result<Outcome, CliError> {
    let domain = polytope(v)?;
    let f = tropical_from_json(field(v, "poly")?, &g.truncation).map_err(CliError::malformed)?;
    let c = tropical_hypersurface(&f, &domain);
    let consistent = c.vertices.iter().all(|p| is_boundary_or_corner(&f, &c, p))
        && c.edges.iter().all(|e| f.is_corner(&e.midpoint()));
    let count_ok = match v.get("expect_edges") {
        None => true,
        Some(n) => {
            n.as_u64()
                .ok_or_else(|| CliError::malformed("expect_edges must be a natural"))?
                == c.edges.len() as u64
        }
    };
    let edges: Vec<Value> = c
        .edges
        .iter()
        .map(
            |e| json!({"from": point_json(&e.a), "to": point_json(&e.b), "direction": e.direction}),
        )
        .collect();
    let rays: Vec<Value> = c
        .rays()
        .iter()
        .map(|(p, d)| json!({"from": point_json(p), "direction": d}))
        .collect();
    let mut out = Outcome::new(
        Verdict::from_bool(consistent && count_ok),
        json!({
            "vertices": c.vertices.iter().map(|p| point_json(p)).collect::<Vec<_>>(),
            "edges": edges,
            "rays": rays,
            "corner_locus_consistent": consistent,
        }),
    );
    out.svg = Some(to_svg(&c));
    Ok(out)
}

/// Isolated corner points and interior vertices attain the minimum twice;
/// vertices on the boundary may be plain clipping endpoints.
fn is_boundary_or_corner(f: &TropicalPolynomial, c: &PolyhedralComplex, p: &[Rational; 2]) -> bool {
    c.on_boundary(p) || f.is_corner(p)
}

/// A uniformly random tropical line `min(a, b + x, c + y)` with coefficients in `[-1, 1]`, step `1/1000`.
pub fn random_line(rng: &mut ChaCha8Rng, domain: &RationalPolytope) -> PolyhedralComplex {
    let mut v = || Rational::new(rng.gen_range(-1000i64..=1000).into(), 1000.into());
    let f = TropicalPolynomial::new([([0, 0], v()), ([1, 0], v()), ([0, 1], v())]);
    tropical_hypersurface(&f, domain)
}

/// `{"polytope", "complexes": [..]}` or `{"polytope", "random_lines": {"count"}}`;
/// passes when a point off every complex is found and re-verified.
pub fn escape(v: &Value, g: &Globals) -> Result<Outcome, CliError> {
    let domain = polytope(v)?;
    let complexes: Vec<PolyhedralComplex> = if let Some(r) = v.get("random_lines") {
        let count = field(r, "count")?
            .as_u64()
            .ok_or_else(|| CliError::malformed("count must be a natural"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        (0..count).map(|_| random_line(&mut rng, &domain)).collect()
    } else {
        field(v, "complexes")?
            .as_array()
            .ok_or_else(|| CliError::malformed("complexes must be a list"))?
            .iter()
            .map(|c| complex_from_json(c, &domain, &g.truncation).map_err(CliError::malformed))
            .collect::<Result<_, _>>()?
    };
    let found = uncovered_point(&complexes, &domain);
    let ok = domain.interior_contains(&found.point)
        && complexes.iter().all(|c| !c.contains(&found.point));
    Ok(Outcome::new(
        Verdict::from_bool(ok),
        json!({
            "complexes": complexes.len(),
            "point": point_json(&found.point),
            "candidates_tried": found.candidates_tried,
        }),
    ))
}

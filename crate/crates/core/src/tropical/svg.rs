use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::rational::Rational;

use super::polytope::Point;
use super::PolyhedralComplex;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

fn f(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Static figure: the ambient polygon, each edge as a line and each vertex as a dot.
pub fn to_svg(c: &PolyhedralComplex) -> String {
    let (lo, hi) = c.ambient.bounding_box();
    let span = (f(&hi[0]) - f(&lo[0]))
        .max(f(&hi[1]) - f(&lo[1]))
        .max(f64::MIN_POSITIVE);
    let k = (SIZE - 2.0 * MARGIN) / span;
    let map = |p: &Point| -> (f64, f64) {
        (
            MARGIN + (f(&p[0]) - f(&lo[0])) * k,
            SIZE - MARGIN - (f(&p[1]) - f(&lo[1])) * k,
        )
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let outline: Vec<String> = c
        .ambient
        .vertices()
        .iter()
        .map(|v| {
            let (x, y) = map(v);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="none" stroke="#999"/>"##,
        outline.join(" ")
    );
    for e in &c.edges {
        let (x1, y1) = map(&e.a);
        let (x2, y2) = map(&e.b);
        let _ = writeln!(
            s,
            r##"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#c00" stroke-width="2"/>"##
        );
    }
    for v in &c.vertices {
        let (x, y) = map(v);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::tropical::{tropical_hypersurface, RationalPolytope, TropicalPolynomial};

    #[test]
    fn tropical_line_draws_three_edges() {
        let sq = RationalPolytope::rect(int(-1), int(1), int(-1), int(1)).unwrap();
        let f = TropicalPolynomial::from_ints(&[([0, 0], 0), ([1, 0], 0), ([0, 1], 0)]);
        let svg = to_svg(&tropical_hypersurface(&f, &sq));
        assert_eq!(svg.matches("<line").count(), 3);
    }

    #[test]
    fn empty_complex_draws_no_edges() {
        let svg = to_svg(&PolyhedralComplex::empty(RationalPolytope::unit_square()));
        assert_eq!(svg.matches("<line").count(), 0);
        assert_eq!(svg.matches("<circle").count(), 0);
    }
}

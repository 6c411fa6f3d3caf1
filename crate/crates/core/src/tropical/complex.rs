use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::rational::{int, midpoint, Rational};

use super::polytope::{add, clip_interval, cross, dot, scale, sub, Point, RationalPolytope};
use super::{Exp, TropicalPolynomial};

/// A segment `a → b` whose direction is a positive multiple of the primitive
/// integer vector `direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: Point,
    pub b: Point,
    pub direction: Exp,
}

impl Edge {
    pub fn contains(&self, p: &Point) -> bool {
        let ab = sub(&self.b, &self.a);
        let ap = sub(p, &self.a);
        if !cross(&ab, &ap).is_zero() {
            return false;
        }
        let t = dot(&ab, &ap);
        t >= Rational::zero() && t <= dot(&ab, &ab)
    }

    pub fn midpoint(&self) -> Point {
        [
            midpoint(&self.a[0], &self.b[0]),
            midpoint(&self.a[1], &self.b[1]),
        ]
    }
}

/// A rational 1-complex inside a polytope: edges meet only at listed vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralComplex {
    pub ambient: RationalPolytope,
    pub vertices: Vec<Point>,
    pub edges: Vec<Edge>,
}

impl PolyhedralComplex {
    pub fn empty(ambient: RationalPolytope) -> Self {
        Self {
            ambient,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Builds a complex from arbitrary segments and points, splitting at
    /// every crossing so that edges meet only at vertices.
    pub fn from_segments(
        ambient: RationalPolytope,
        segments: Vec<(Point, Point)>,
        points: Vec<Point>,
    ) -> Self {
        let mut lines: BTreeMap<(Exp, Rational), Vec<(Point, Point)>> = BTreeMap::new();
        let mut isolated = points;
        for (a, b) in segments {
            if a == b {
                isolated.push(a);
                continue;
            }
            let dir = primitive(&sub(&b, &a));
            let n = normalize_sign([-dir[1], dir[0]]);
            let key = (n, dot(&exp_point(&n), &a));
            let along = exp_point(&[-n[1], n[0]]);
            let (a, b) = if dot(&along, &sub(&b, &a)) > Rational::zero() {
                (a, b)
            } else {
                (b, a)
            };
            lines.entry(key).or_default().push((a, b));
        }
        let mut merged: Vec<(Point, Point, Exp)> = Vec::new();
        for ((n, _), mut segs) in lines {
            let d = [-n[1], n[0]];
            let dp = exp_point(&d);
            segs.sort_by_key(|x| dot(&dp, &x.0));
            let mut cur: Option<(Point, Point)> = None;
            for (a, b) in segs {
                cur = match cur {
                    Some((ca, cb)) if dot(&dp, &a) <= dot(&dp, &cb) => {
                        let end = if dot(&dp, &b) > dot(&dp, &cb) { b } else { cb };
                        Some((ca, end))
                    }
                    Some((ca, cb)) => {
                        merged.push((ca, cb, d));
                        Some((a, b))
                    }
                    None => Some((a, b)),
                };
            }
            if let Some((ca, cb)) = cur {
                merged.push((ca, cb, d));
            }
        }
        let mut vertices: Vec<Point> = Vec::new();
        fn push(p: Point, vs: &mut Vec<Point>) {
            if !vs.contains(&p) {
                vs.push(p);
            }
        }
        for (a, b, _) in &merged {
            push(a.clone(), &mut vertices);
            push(b.clone(), &mut vertices);
        }
        for (i, (a, b, _)) in merged.iter().enumerate() {
            for (c, d, _) in &merged[i + 1..] {
                if let Some(p) = segment_intersection(a, b, c, d) {
                    push(p, &mut vertices);
                }
            }
        }
        let probe = |p: &Point| {
            merged.iter().any(|(a, b, d)| {
                Edge {
                    a: a.clone(),
                    b: b.clone(),
                    direction: *d,
                }
                .contains(p)
            })
        };
        for p in isolated {
            if !probe(&p) {
                push(p, &mut vertices);
            }
        }
        let mut edges = Vec::new();
        for (a, b, d) in merged {
            let whole = Edge { a, b, direction: d };
            let dp = exp_point(&d);
            let mut cuts: Vec<&Point> = vertices.iter().filter(|v| whole.contains(v)).collect();
            cuts.sort_by_key(|x| dot(&dp, x));
            for w in cuts.windows(2) {
                edges.push(Edge {
                    a: w[0].clone(),
                    b: w[1].clone(),
                    direction: d,
                });
            }
        }
        vertices.sort();
        edges.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
        Self {
            ambient,
            vertices,
            edges,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.vertices.iter().any(|v| v == p) || self.edges.iter().any(|e| e.contains(p))
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.ambient.contains(p) && !self.ambient.interior_contains(p)
    }

    /// Edges leaving the interior and ending on the boundary of the ambient
    /// polytope, as `(interior endpoint, primitive outward direction)`.
    pub fn rays(&self) -> Vec<(Point, Exp)> {
        let mut out = Vec::new();
        for e in &self.edges {
            match (self.on_boundary(&e.a), self.on_boundary(&e.b)) {
                (false, true) => out.push((e.a.clone(), e.direction)),
                (true, false) => out.push((e.b.clone(), [-e.direction[0], -e.direction[1]])),
                _ => {}
            }
        }
        out.sort();
        out
    }

    /// Vertices that are not on the boundary of the ambient polytope.
    pub fn interior_vertices(&self) -> Vec<&Point> {
        self.vertices
            .iter()
            .filter(|v| !self.on_boundary(v))
            .collect()
    }
}

/// The corner locus of `f` inside `domain`: for each pair of terms, the part of
/// their bisector line where those two terms attain the minimum.
pub fn tropical_hypersurface(
    f: &TropicalPolynomial,
    domain: &RationalPolytope,
) -> PolyhedralComplex {
    let terms: Vec<(&Exp, &Rational)> = f.terms.iter().collect();
    let mut segments = Vec::new();
    let mut points = Vec::new();
    for (i, (ni, ci)) in terms.iter().enumerate() {
        for (nj, cj) in &terms[i + 1..] {
            // (νᵢ - νⱼ)·p = cⱼ - cᵢ
            let n = [ni[0] - nj[0], ni[1] - nj[1]];
            let rhs = *cj - *ci;
            let p0 = if n[0] != 0 {
                [&rhs / &int(n[0]), int(0)]
            } else {
                [int(0), &rhs / &int(n[1])]
            };
            let dir = exp_point(&primitive_exp([-n[1], n[0]]));
            let others = terms
                .iter()
                .filter(|(nk, _)| nk != ni && nk != nj)
                .map(|(nk, ck)| ([int(ni[0] - nk[0]), int(ni[1] - nk[1])], *ck - *ci));
            let domain_rows = domain
                .halfplanes()
                .iter()
                .map(|h| (h.a.clone(), h.b.clone()));
            let Some((lo, hi)) = clip_interval(domain_rows.chain(others), &p0, &dir, None, None)
            else {
                continue;
            };
            let a = add(&p0, &scale(&dir, &lo));
            let b = add(&p0, &scale(&dir, &hi));
            if lo == hi {
                points.push(a);
            } else {
                segments.push((a, b));
            }
        }
    }
    PolyhedralComplex::from_segments(domain.clone(), segments, points)
}

fn exp_point(e: &Exp) -> Point {
    [int(e[0]), int(e[1])]
}

fn primitive_exp(v: Exp) -> Exp {
    let g = v[0].gcd(&v[1]);
    [v[0] / g, v[1] / g]
}

/// Primitive integer vector positively proportional to a nonzero rational vector.
fn primitive(v: &Point) -> Exp {
    let l = v[0].denom().lcm(v[1].denom());
    let x = v[0].numer() * (&l / v[0].denom());
    let y = v[1].numer() * (&l / v[1].denom());
    let g = x.gcd(&y);
    let conv = |z: num_bigint::BigInt| -> i64 { i64::try_from(z).expect("direction fits in i64") };
    [conv(x / &g), conv(y / &g)]
}

fn normalize_sign(v: Exp) -> Exp {
    if v[0] < 0 || (v[0] == 0 && v[1] < 0) {
        [-v[0], -v[1]]
    } else {
        v
    }
}

fn segment_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let r = sub(b, a);
    let s = sub(d, c);
    let den = cross(&r, &s);
    if den.is_zero() {
        return None;
    }
    let ac = sub(c, a);
    let t = cross(&ac, &s) / &den;
    let u = cross(&ac, &r) / &den;
    let (zero, one) = (Rational::zero(), int(1));
    if t < zero || t > one || u < zero || u > one {
        return None;
    }
    Some(add(a, &scale(&r, &t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn square(r: i64) -> RationalPolytope {
        RationalPolytope::rect(int(-r), int(r), int(-r), int(r)).unwrap()
    }

    #[test]
    fn crossing_segments_are_split() {
        let c = PolyhedralComplex::from_segments(
            square(2),
            vec![
                ([int(-1), int(0)], [int(1), int(0)]),
                ([int(0), int(-1)], [int(0), int(1)]),
            ],
            vec![],
        );
        assert_eq!(c.edges.len(), 4);
        assert_eq!(c.vertices.len(), 5);
        assert!(c.contains(&[rat(1, 2), int(0)]));
        assert!(!c.contains(&[rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn overlapping_segments_merge() {
        let c = PolyhedralComplex::from_segments(
            square(3),
            vec![
                ([int(0), int(0)], [int(2), int(2)]),
                ([int(1), int(1)], [int(-1), int(-1)]),
            ],
            vec![[int(1), int(1)]],
        );
        assert_eq!(c.edges.len(), 1);
        assert_eq!(c.edges[0].direction, [1, 1]);
    }

    #[test]
    fn single_term_has_empty_locus() {
        let f = TropicalPolynomial::from_ints(&[([1, 1], 3)]);
        assert!(tropical_hypersurface(&f, &square(1)).is_empty());
    }
}

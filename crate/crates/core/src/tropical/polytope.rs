use num_traits::{Signed, Zero};

use crate::rational::{int, Rational};

use super::TropicalError;

/// A point of `ℚ²`.
pub type Point = [Rational; 2];

pub fn pt(x: Rational, y: Rational) -> Point {
    [x, y]
}

pub fn dot(a: &Point, b: &Point) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

pub fn sub(a: &Point, b: &Point) -> Point {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

pub fn add(a: &Point, b: &Point) -> Point {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

pub fn scale(a: &Point, t: &Rational) -> Point {
    [&a[0] * t, &a[1] * t]
}

pub fn cross(a: &Point, b: &Point) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Half-plane `a·p ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub a: Point,
    pub b: Rational,
}

/// A bounded convex polygon with nonempty interior, given by half-planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    halfplanes: Vec<HalfPlane>,
    vertices: Vec<Point>,
}

impl RationalPolytope {
    pub fn new(halfplanes: Vec<HalfPlane>) -> Result<Self, TropicalError> {
        if halfplanes
            .iter()
            .any(|h| h.a[0].is_zero() && h.a[1].is_zero())
        {
            return Err(TropicalError::Polytope("zero normal".into()));
        }
        // Bounded iff the recession cone is trivial; its extreme rays are
        // perpendicular to some normal.
        for h in &halfplanes {
            for d in [
                [-h.a[1].clone(), h.a[0].clone()],
                [h.a[1].clone(), -h.a[0].clone()],
            ] {
                if halfplanes.iter().all(|g| dot(&g.a, &d) <= Rational::zero()) {
                    return Err(TropicalError::Polytope("unbounded".into()));
                }
            }
        }
        if halfplanes.is_empty() {
            return Err(TropicalError::Polytope("unbounded".into()));
        }
        let mut vertices: Vec<Point> = Vec::new();
        for (i, h) in halfplanes.iter().enumerate() {
            for g in &halfplanes[i + 1..] {
                let det = cross(&h.a, &g.a);
                if det.is_zero() {
                    continue;
                }
                let x = (&h.b * &g.a[1] - &g.b * &h.a[1]) / &det;
                let y = (&h.a[0] * &g.b - &g.a[0] * &h.b) / &det;
                let p = [x, y];
                if halfplanes.iter().all(|k| dot(&k.a, &p) <= k.b) && !vertices.contains(&p) {
                    vertices.push(p);
                }
            }
        }
        if vertices.len() < 3 {
            return Err(TropicalError::Polytope("empty interior".into()));
        }
        let c = centroid(&vertices);
        vertices.sort_by(|p, q| angle_cmp(&sub(p, &c), &sub(q, &c)));
        let poly = Self {
            halfplanes,
            vertices,
        };
        if !poly.interior_contains(&c) {
            return Err(TropicalError::Polytope("empty interior".into()));
        }
        Ok(poly)
    }

    /// `[x0, x1] × [y0, y1]`.
    pub fn rect(
        x0: Rational,
        x1: Rational,
        y0: Rational,
        y1: Rational,
    ) -> Result<Self, TropicalError> {
        let (one, zero) = (int(1), int(0));
        Self::new(vec![
            HalfPlane {
                a: [one.clone(), zero.clone()],
                b: x1,
            },
            HalfPlane {
                a: [-one.clone(), zero.clone()],
                b: -x0,
            },
            HalfPlane {
                a: [zero.clone(), one.clone()],
                b: y1,
            },
            HalfPlane {
                a: [zero, -one],
                b: -y0,
            },
        ])
    }

    pub fn unit_square() -> Self {
        Self::rect(int(0), int(1), int(0), int(1)).expect("valid square")
    }

    pub fn halfplanes(&self) -> &[HalfPlane] {
        &self.halfplanes
    }

    /// Vertices in counterclockwise order.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.halfplanes.iter().all(|h| dot(&h.a, p) <= h.b)
    }

    pub fn interior_contains(&self, p: &Point) -> bool {
        self.halfplanes.iter().all(|h| dot(&h.a, p) < h.b)
    }

    /// Average of the vertices; an interior point.
    pub fn barycenter(&self) -> Point {
        centroid(&self.vertices)
    }

    /// Parameter interval of `{p0 + t·d} ∩ P`, intersected with `[lo, hi]` (`None` = unbounded).
    pub fn clip(
        &self,
        p0: &Point,
        d: &Point,
        lo: Option<Rational>,
        hi: Option<Rational>,
    ) -> Option<(Rational, Rational)> {
        clip_interval(
            self.halfplanes.iter().map(|h| (h.a.clone(), h.b.clone())),
            p0,
            d,
            lo,
            hi,
        )
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices {
            for k in 0..2 {
                if v[k] < lo[k] {
                    lo[k] = v[k].clone();
                }
                if v[k] > hi[k] {
                    hi[k] = v[k].clone();
                }
            }
        }
        (lo, hi)
    }
}

/// Intersects `{t : a·(p0 + t d) ≤ b}` over all constraints with `[lo, hi]`.
pub(crate) fn clip_interval<I>(
    constraints: I,
    p0: &Point,
    d: &Point,
    mut lo: Option<Rational>,
    mut hi: Option<Rational>,
) -> Option<(Rational, Rational)>
where
    I: IntoIterator<Item = (Point, Rational)>,
{
    for (a, b) in constraints {
        let ad = dot(&a, d);
        let slack = &b - dot(&a, p0);
        if ad.is_zero() {
            if slack.is_negative() {
                return None;
            }
            continue;
        }
        let t = &slack / &ad;
        if ad.is_positive() {
            if hi.as_ref().is_none_or(|h| &t < h) {
                hi = Some(t);
            }
        } else if lo.as_ref().is_none_or(|l| &t > l) {
            lo = Some(t);
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) if l <= h => Some((l, h)),
        _ => None,
    }
}

fn centroid(ps: &[Point]) -> Point {
    let n = int(ps.len() as i64);
    let mut s = [int(0), int(0)];
    for p in ps {
        s = add(&s, p);
    }
    [&s[0] / &n, &s[1] / &n]
}

/// Exact counterclockwise angular order starting from the positive x-axis.
fn angle_cmp(a: &Point, b: &Point) -> std::cmp::Ordering {
    let half = |p: &Point| -> u8 {
        if p[1].is_positive() || (p[1].is_zero() && p[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(a)
        .cmp(&half(b))
        .then_with(|| Rational::zero().cmp(&cross(a, b)))
}

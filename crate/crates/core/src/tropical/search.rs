use crate::rational::{abs, int};

use super::polytope::{add, dot, Point, RationalPolytope};
use super::PolyhedralComplex;

/// A point of the open domain avoiding every complex, with the number of
/// candidates examined (the barycenter counts as the first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncoveredPoint {
    pub point: Point,
    pub candidates_tried: usize,
}

/// Streaming search: complexes may be added between queries.
#[derive(Clone, Debug)]
pub struct UncoveredSearch {
    domain: RationalPolytope,
    complexes: Vec<PolyhedralComplex>,
}

impl UncoveredSearch {
    pub fn new(domain: RationalPolytope) -> Self {
        Self {
            domain,
            complexes: Vec::new(),
        }
    }

    pub fn push(&mut self, c: PolyhedralComplex) {
        self.complexes.push(c);
    }

    pub fn len(&self) -> usize {
        self.complexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complexes.is_empty()
    }

    fn covered(&self, p: &Point) -> bool {
        self.complexes.iter().any(|c| c.contains(p))
    }

    /// Tries the barycenter, then points `b + r·(s, s²)` with `s = t/T` on a
    /// parabolic arc inside the domain. A line meets the arc at most twice, so
    /// `T = 2·#edges + #vertices + 1` candidates always contain a free one.
    pub fn query(&self) -> UncoveredPoint {
        let b = self.domain.barycenter();
        if !self.covered(&b) {
            return UncoveredPoint {
                point: b,
                candidates_tried: 1,
            };
        }
        let r = self
            .domain
            .halfplanes()
            .iter()
            .map(|h| (&h.b - dot(&h.a, &b)) / (abs(&h.a[0]) + abs(&h.a[1])))
            .min()
            .expect("polytope has half-planes")
            / int(2);
        let budget: usize = self
            .complexes
            .iter()
            .map(|c| 2 * c.edges.len() + c.vertices.len())
            .sum::<usize>()
            + 1;
        let tt = int(budget as i64);
        for t in 1..=budget {
            let s = int(t as i64) / &tt;
            let p = add(&b, &[&r * &s, &r * &s * &s]);
            debug_assert!(self.domain.interior_contains(&p));
            if !self.covered(&p) {
                return UncoveredPoint {
                    point: p,
                    candidates_tried: t + 1,
                };
            }
        }
        unreachable!("finitely many segments cannot cover {budget} points of a parabola")
    }
}

pub fn uncovered_point(
    complexes: &[PolyhedralComplex],
    domain: &RationalPolytope,
) -> UncoveredPoint {
    let mut s = UncoveredSearch::new(domain.clone());
    for c in complexes {
        s.push(c.clone());
    }
    s.query()
}

/// Dimensions of a piece `D \ E` of a naively constructible set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionLabel {
    pub d: usize,
    pub e: Option<usize>,
}

/// Codimension at least one in an `ambient`-dimensional space: no `D` is full-dimensional.
pub fn naively_constructible_codim(pieces: &[DimensionLabel], ambient: usize) -> bool {
    pieces.iter().all(|l| l.d < ambient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::{tropical_hypersurface, TropicalPolynomial};

    #[test]
    fn empty_list_gives_barycenter() {
        let sq = RationalPolytope::unit_square();
        let u = uncovered_point(&[], &sq);
        assert_eq!(u.point, sq.barycenter());
        assert_eq!(u.candidates_tried, 1);
    }

    #[test]
    fn line_through_barycenter_is_avoided() {
        let sq = RationalPolytope::unit_square();
        // x = 1/2 as the corner locus of 2x and 1.
        let f = TropicalPolynomial::new([([2, 0], int(0)), ([0, 0], int(1))]);
        let c = tropical_hypersurface(&f, &sq);
        assert!(c.contains(&sq.barycenter()));
        let u = uncovered_point(std::slice::from_ref(&c), &sq);
        assert!(!c.contains(&u.point));
        assert!(sq.interior_contains(&u.point));
        assert!(u.candidates_tried > 1);
    }

    #[test]
    fn codimension_verdicts() {
        let curve = DimensionLabel { d: 1, e: None };
        let full = DimensionLabel { d: 2, e: Some(1) };
        assert!(naively_constructible_codim(&[curve, curve], 2));
        assert!(!naively_constructible_codim(&[full], 2));
        assert!(!naively_constructible_codim(&[curve, full], 2));
    }
}

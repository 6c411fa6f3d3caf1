use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use pointlike_core::novikov::{Exponent, NovikovSeries};
use pointlike_core::rational::{int, rat, Rational};
use pointlike_core::tropical::{
    tropical_hypersurface, tropicalize, uncovered_point, Exp, LaurentPoly, Point,
    PolyhedralComplex, RationalPolytope, TropicalPolynomial, UncoveredSearch,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn square(lo: i64, hi: i64) -> RationalPolytope {
    RationalPolytope::rect(int(lo), int(hi), int(lo), int(hi)).unwrap()
}

fn one_plus_x_plus_y() -> TropicalPolynomial {
    TropicalPolynomial::from_ints(&[([0, 0], 0), ([1, 0], 0), ([0, 1], 0)])
}

#[test]
fn tropical_line_has_three_rays_from_the_origin() {
    let c = tropical_hypersurface(&one_plus_x_plus_y(), &square(-1, 1));
    let origin = [int(0), int(0)];
    assert_eq!(c.interior_vertices(), vec![&origin]);
    let rays = c.rays();
    assert_eq!(
        rays,
        vec![
            (origin.clone(), [-1, -1]),
            (origin.clone(), [0, 1]),
            (origin, [1, 0])
        ]
    );
    assert_eq!(c.edges.len(), 3);
}

#[test]
fn binomial_gives_a_vertical_line() {
    let t = Exponent::from_int(8);
    let f = LaurentPoly::new([
        ([1, 0], NovikovSeries::one(t.clone())),
        ([0, 0], -&NovikovSeries::q_power(Exponent::ratio(1, 3), t)),
    ])
    .unwrap();
    let c = tropical_hypersurface(&tropicalize(&f), &square(-1, 1));
    assert_eq!(c.edges.len(), 1);
    let e = &c.edges[0];
    assert_eq!((e.a[0].clone(), e.b[0].clone()), (rat(1, 3), rat(1, 3)));
    assert_eq!(e.direction, [0, 1]);
    assert!(c.rays().is_empty());
}

#[test]
fn mixed_valuations_are_read_off_per_coefficient() {
    let t = Exponent::from_int(10);
    let q = |n, d| NovikovSeries::q_power(Exponent::ratio(n, d), t.clone());
    let f = LaurentPoly::new([
        ([0, 0], &q(2, 3) + &q(5, 1)),
        ([1, -1], q(-3, 2)),
        ([2, 1], NovikovSeries::from_int(7, t.clone())),
    ])
    .unwrap();
    // Oracle: the least exponent with a nonzero coefficient.
    let expect: BTreeMap<Exp, Rational> = f
        .terms()
        .iter()
        .map(|(nu, c)| {
            (
                *nu,
                c.terms()
                    .iter()
                    .find(|(_, g)| !g.is_zero())
                    .unwrap()
                    .0
                    .value()
                    .clone(),
            )
        })
        .collect();
    assert_eq!(tropicalize(&f).terms, expect);
    assert_eq!(expect[&[0, 0]], rat(2, 3));
    assert_eq!(expect[&[1, -1]], rat(-3, 2));
}

/// Minimizing terms of `f` at `p`, computed directly.
fn argmin(f: &[(Exp, Rational)], p: &Point) -> Vec<usize> {
    let vals: Vec<Rational> = f
        .iter()
        .map(|(nu, c)| c + &int(nu[0]) * &p[0] + &int(nu[1]) * &p[1])
        .collect();
    let m = vals.iter().min().unwrap();
    (0..f.len()).filter(|&i| &vals[i] == m).collect()
}

/// Scans a rational grid, keeps points where two or more terms tie, and rebuilds
/// each pair's segment from its extreme grid points.
fn grid_oracle(
    f: &[(Exp, Rational)],
    lo: i64,
    hi: i64,
    steps: i64,
) -> (BTreeSet<Point>, BTreeSet<(Point, Point)>) {
    let mut vertices = BTreeSet::new();
    let mut pairs: BTreeMap<(usize, usize), Vec<Point>> = BTreeMap::new();
    let h = Rational::new((hi - lo).into(), steps.into());
    for i in 0..=steps {
        for j in 0..=steps {
            let p = [int(lo) + &h * int(i), int(lo) + &h * int(j)];
            let arg = argmin(f, &p);
            if arg.len() >= 3 {
                vertices.insert(p.clone());
            }
            for a in 0..arg.len() {
                for b in a + 1..arg.len() {
                    pairs.entry((arg[a], arg[b])).or_default().push(p.clone());
                }
            }
        }
    }
    let segments = pairs
        .into_values()
        .filter(|ps| ps.len() >= 2)
        .map(|mut ps| {
            ps.sort();
            (ps[0].clone(), ps[ps.len() - 1].clone())
        })
        .collect();
    (vertices, segments)
}

#[test]
fn square_newton_polygon_matches_grid_scan() {
    let f = vec![
        ([0, 0], int(0)),
        ([1, 0], int(0)),
        ([0, 1], int(0)),
        ([1, 1], int(-1)),
    ];
    let (lo, hi) = (-2, 3);
    let (oracle_vertices, oracle_segments) = grid_oracle(&f, lo, hi, 20);
    let c = tropical_hypersurface(&TropicalPolynomial::new(f.clone()), &square(lo, hi));
    let got_vertices: BTreeSet<Point> = c.interior_vertices().into_iter().cloned().collect();
    assert_eq!(got_vertices, oracle_vertices);
    let got_segments: BTreeSet<(Point, Point)> = c
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (e.a.clone(), e.b.clone());
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    assert_eq!(got_segments, oracle_segments);
    // Frozen from the scan.
    assert_eq!(
        got_vertices,
        BTreeSet::from([[int(0), int(1)], [int(1), int(0)]])
    );
    assert_eq!(c.edges.len(), 5);
    assert_eq!(c.rays().len(), 4);
}

#[test]
fn membership_of_vertices_edges_and_generic_points() {
    let c = tropical_hypersurface(&one_plus_x_plus_y(), &square(-1, 1));
    assert!(c.contains(&[int(0), int(0)]));
    assert!(c.contains(&[rat(-1, 3), rat(-1, 3)]));
    assert!(c.contains(&[int(0), rat(4, 5)]));
    // Off every ray: not on an axis and not on the diagonal.
    let p = [rat(1, 3), rat(-2, 7)];
    let f = [([0, 0], int(0)), ([1, 0], int(0)), ([0, 1], int(0))];
    assert_eq!(argmin(&f, &p).len(), 1);
    assert!(!c.contains(&p));
}

fn random_line(rng: &mut ChaCha8Rng, domain: &RationalPolytope) -> PolyhedralComplex {
    let mut v = || Rational::new(rng.gen_range(-1000i64..=1000).into(), 1000.into());
    let f = TropicalPolynomial::new([([0, 0], v()), ([1, 0], v()), ([0, 1], v())]);
    tropical_hypersurface(&f, domain)
}

#[test]
fn escapes_many_random_tropical_lines() {
    let sq = RationalPolytope::unit_square();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let lines: Vec<PolyhedralComplex> = (0..300).map(|_| random_line(&mut rng, &sq)).collect();
    let u = uncovered_point(&lines, &sq);
    assert!(sq.interior_contains(&u.point));
    assert!(lines.iter().all(|c| !c.contains(&u.point)));
}

#[test]
fn streaming_search_forces_the_parabola() {
    // Lines through the barycenter in many directions still leave the arc free.
    let sq = RationalPolytope::unit_square();
    let b = sq.barycenter();
    let mut s = UncoveredSearch::new(sq.clone());
    for k in 1..=6i64 {
        let dir = [rat(1, 2), rat(k, 20)];
        let a = [&b[0] - &dir[0], &b[1] - &dir[1]];
        let e = [&b[0] + &dir[0], &b[1] + &dir[1]];
        s.push(PolyhedralComplex::from_segments(
            sq.clone(),
            vec![(a, e)],
            vec![],
        ));
        let u = s.query();
        assert!(u.candidates_tried > 1);
        assert!(sq.interior_contains(&u.point));
    }
    assert_eq!(s.len(), 6);
}

fn arb_tropical() -> impl Strategy<Value = Vec<(Exp, Rational)>> {
    prop::collection::btree_map((-2i64..=2, -2i64..=2), (-6i64..=6, 1i64..=3), 2..6).prop_map(|m| {
        m.into_iter()
            .map(|((a, b), (n, d))| ([a, b], rat(n, d)))
            .collect()
    })
}

fn corner_points(c: &PolyhedralComplex) -> Vec<Point> {
    c.vertices
        .iter()
        .cloned()
        .chain(c.edges.iter().map(|e| e.midpoint()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_point_of_the_locus_is_a_corner(f in arb_tropical()) {
        let c = tropical_hypersurface(&TropicalPolynomial::new(f.clone()), &square(-3, 3));
        for p in corner_points(&c) {
            prop_assert!(argmin(&f, &p).len() >= 2);
        }
    }

    #[test]
    fn locus_ignores_a_common_scalar(f in arb_tropical(), n in -4i64..=4, d in 1i64..=3) {
        let t = Exponent::from_int(20);
        let lp = LaurentPoly::new(f.iter().map(|(nu, c)| (*nu, NovikovSeries::q_power(Exponent::new(c.clone()), t.clone())))).unwrap();
        let c = NovikovSeries::q_power(Exponent::ratio(n, d), t.clone()).scale_rational(&int(3));
        let dom = square(-3, 3);
        let a = tropical_hypersurface(&tropicalize(&lp), &dom);
        let b = tropical_hypersurface(&tropicalize(&lp.scale(&c).unwrap()), &dom);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rays_are_primitive_and_normal_to_newton_edges(f in arb_tropical()) {
        let c = tropical_hypersurface(&TropicalPolynomial::new(f.clone()), &square(-3, 3));
        for e in &c.edges {
            prop_assert_eq!(e.direction[0].gcd(&e.direction[1]), 1);
            let arg = argmin(&f, &e.midpoint());
            prop_assert!(arg.len() >= 2);
            for w in arg.windows(2) {
                let (nu, mu) = (f[w[0]].0, f[w[1]].0);
                prop_assert_eq!(e.direction[0] * (nu[0] - mu[0]) + e.direction[1] * (nu[1] - mu[1]), 0);
            }
        }
    }

    #[test]
    fn uncovered_point_avoids_every_complex(seed in any::<u64>(), k in 0usize..30) {
        let sq = RationalPolytope::unit_square();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lines: Vec<PolyhedralComplex> = (0..k).map(|_| random_line(&mut rng, &sq)).collect();
        let u = uncovered_point(&lines, &sq);
        prop_assert!(sq.interior_contains(&u.point));
        for c in &lines {
            prop_assert!(!c.contains(&u.point));
        }
    }
}

//! Fixtures and oracles for the deformation solvers.
#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use pointlike_core::ainf::{
    match_residual, multi_indices, series_deformed_mu, versal_match, AInf, Family, HomCohomology,
    MorphSeries, Morphism, ScalarSeries, VersalMatch,
};
use pointlike_core::fixtures::{self, ix, TwistedPair};
use pointlike_core::homalg::{solve, Matrix};
use pointlike_core::novikov::{Exponent, Gaussian, NovikovSeries};
use pointlike_core::rational::rat;

pub fn unit_index(n: usize, i: usize) -> Vec<u32> {
    let mut m = vec![0; n];
    m[i] = 1;
    m
}

/// Order-by-order oracle: the unknowns at each multi-index enter the residual
/// affinely, so probing with zero and each unit vector recovers the linear
/// system; its free-variables-zero solution must be what the solver chose.
/// Panics on the first disagreement and returns the solver's answer.
pub fn versal_match_against_probes(order: u32) -> VersalMatch {
    let trunc = Exponent::from_int(4);
    let p = TwistedPair::new(trunc.clone());
    let prob = p.problem(p.pulled_back_family(&fixtures::planted_theta()), order);
    let got = versal_match(&p.cat, &prob).unwrap();
    assert!(got.residual_order > order);

    let h0 = p.cat.degree_basis(p.t, p.d, 0);
    let h1 = p.cat.degree_basis(p.t, p.d, 1);
    let j = prob.source.nparams;
    let nunk = j + h0.len();
    let zero = NovikovSeries::zero(trunc.clone());
    let one = NovikovSeries::one(trunc.clone());
    for deg in 1..=order {
        let eta_low: Vec<ScalarSeries> = got.eta.iter().map(|s| s.truncated(deg - 1)).collect();
        let f_low = got.f.truncated(deg - 1);
        for mi in multi_indices(2, deg) {
            let residual_at = |x: &[NovikovSeries]| -> Vec<NovikovSeries> {
                let mut eta = eta_low.clone();
                for i in 0..j {
                    eta[i].insert(mi.clone(), x[i].clone());
                }
                let mut f = f_low.clone();
                let fm = Morphism::from_coeffs(
                    p.t,
                    p.d,
                    h0.iter().zip(&x[j..]).map(|(&b, c)| (b, c.clone())),
                    trunc.clone(),
                );
                if !fm.is_zero() {
                    f.insert(mi.clone(), fm);
                }
                let r = match_residual(&p.cat, &prob, &eta, &f, deg).unwrap();
                let c = r
                    .coeff(&mi)
                    .cloned()
                    .unwrap_or_else(|| p.cat.zero(p.t, p.d));
                h1.iter().map(|&b| c.coeff(b)).collect()
            };
            let base = residual_at(&vec![zero.clone(); nunk]);
            let cols: Vec<Vec<NovikovSeries>> = (0..nunk)
                .map(|u| {
                    let mut x = vec![zero.clone(); nunk];
                    x[u] = one.clone();
                    residual_at(&x)
                        .iter()
                        .zip(&base)
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect();
            let system = Matrix::from_columns(&cols, h1.len(), &trunc);
            let rhs: Vec<NovikovSeries> = base.iter().map(|x| -x).collect();
            let x = solve(&system, &rhs, &trunc)
                .unwrap()
                .expect("order is solvable");
            for i in 0..j {
                assert!(
                    x[i].agrees_with(&got.eta[i].coeff(&mi, &trunc)),
                    "η_{i} at {mi:?}"
                );
            }
            let fm = got
                .f
                .coeff(&mi)
                .cloned()
                .unwrap_or_else(|| p.cat.zero(p.t, p.d));
            for (k, &b) in h0.iter().enumerate() {
                assert!(x[j + k].agrees_with(&fm.coeff(b)), "f at {mi:?}, basis {b}");
            }
        }
    }
    got
}

/// Up to three terms `c·q^{n/d}` with `n/d ∈ (0, 12]` and Gaussian integer `c`.
pub fn positive_series_at(trunc: i64) -> impl Strategy<Value = NovikovSeries> {
    prop::collection::vec(((1i64..=12, 1i64..=3), (-4i64..=4, -2i64..=2)), 0..4).prop_map(
        move |t| {
            NovikovSeries::from_terms(
                t.into_iter().map(|((n, d), (a, b))| {
                    (Exponent::ratio(n, d), Gaussian::new(rat(a, 1), rat(b, 1)))
                }),
                Exponent::from_int(trunc),
            )
        },
    )
}

/// Families on `T` and `D` over `k[[y₁, y₂]]`: `δ₀ = y₁X` on `T`, and on `D`
/// `y₁X` on every summand plus `y₂Y` on the two cone summands only. The
/// inclusion stays closed, and so does its shift by the deformed coboundary of
/// the homotopy.
pub struct ObstructionSetup {
    pair: TwistedPair,
    delta0: MorphSeries,
    delta1: MorphSeries,
    f: MorphSeries,
}

impl ObstructionSetup {
    pub fn new() -> Self {
        let trunc = Exponent::from_int(4);
        let pair = TwistedPair::new(trunc.clone());
        let cat = &pair.cat;
        let one = NovikovSeries::one(trunc);
        let entry = |x: usize, y: usize, cells: &[(usize, &str)]| {
            cat.from_entries(
                x,
                y,
                cells
                    .iter()
                    .map(|&(j, n)| (j, j, ix(&cat.base, n), one.clone())),
            )
        };
        let src = Family::linear(
            pair.t,
            vec![entry(pair.t, pair.t, &[(0, "X")]), cat.zero(pair.t, pair.t)],
            true,
        );
        let tgt = Family::linear(
            pair.d,
            vec![
                entry(pair.d, pair.d, &[(0, "X"), (1, "X"), (2, "X")]),
                entry(pair.d, pair.d, &[(1, "Y"), (2, "Y")]),
            ],
            true,
        );
        let (delta0, delta1) = (src.as_series(), tgt.as_series());
        let h = MorphSeries::constant(pair.homotopy(), 2);
        let shift = series_deformed_mu(cat, &[Some(&delta0), Some(&delta1)], &[&h], 2).unwrap();
        let f = MorphSeries::constant(pair.seed(), 2).add(&shift);
        assert!(src.residual_series(cat, 3).unwrap().order().is_none());
        assert!(tgt.residual_series(cat, 3).unwrap().order().is_none());
        assert!(
            series_deformed_mu(cat, &[Some(&delta0), Some(&delta1)], &[&f], 2)
                .unwrap()
                .order()
                .is_none()
        );
        Self {
            pair,
            delta0,
            delta1,
            f,
        }
    }

    fn along(&self, s: &MorphSeries, v: &[NovikovSeries]) -> Morphism {
        let mut acc = self.pair.cat.zero(s.src, s.tgt);
        for (i, c) in v.iter().enumerate() {
            if let Some(x) = s.coeff(&unit_index(2, i)) {
                acc = acc.add(&x.scale(c));
            }
        }
        acc
    }
}

/// The obstruction `μ²(o₀(v), f) + μ²(f, o₁(v))` of a closed family is exact;
/// at cochain level it equals `-μ¹(v(f))`.
pub fn derivative_identity(setup: &ObstructionSetup, v: [i64; 2]) -> Result<(), TestCaseError> {
    let p = &setup.pair;
    let vs: Vec<NovikovSeries> = v
        .iter()
        .map(|&c| NovikovSeries::from_int(c, p.cat.truncation().clone()))
        .collect();
    let o0 = setup.along(&setup.delta0, &vs);
    let o1 = setup.along(&setup.delta1, &vs);
    let vf = setup.along(&setup.f, &vs);
    let f0 = setup.f.coeff(&[0, 0]).cloned().unwrap();
    let obs = p
        .cat
        .mu(&[&o0, &f0])
        .unwrap()
        .add(&p.cat.mu(&[&f0, &o1]).unwrap());
    prop_assert_eq!(obs.is_zero(), v[1] == 0);
    prop_assert!(obs.add(&p.cat.mu(&[&vf]).unwrap()).is_zero());
    let hom = HomCohomology::new(&p.cat, p.t, p.d, None, None).unwrap();
    prop_assert!(hom.is_exact(&obs, 1).unwrap());
    Ok(())
}

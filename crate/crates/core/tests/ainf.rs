mod common;

use proptest::prelude::*;

use common::ainf::{
    derivative_identity, positive_series_at, unit_index, versal_match_against_probes,
    ObstructionSetup,
};
use pointlike_core::ainf::{
    check_relations, check_units, deformed_mu, mc_residual, versal_match, AInf, AInfCategory,
    AInfError, BasisElement, Family, MorphSeries, Morphism, ScalarSeries, VersalMatchProblem,
};
use pointlike_core::fixtures::{self, ix, TwistedPair};
use pointlike_core::novikov::{Exponent, NovikovSeries};

fn e(n: i64) -> Exponent {
    Exponent::from_int(n)
}

fn q(k: i64, trunc: i64) -> NovikovSeries {
    NovikovSeries::q_power(e(k), e(trunc))
}

#[test]
fn exterior_algebra_is_a_valid_structure() {
    let t = fixtures::torus(e(5));
    assert!(check_relations(&t, 4).unwrap().is_empty());
    assert!(check_units(&t, 4).unwrap().is_empty());
    for f in [
        fixtures::sphere(e(5)),
        fixtures::degenerate(e(5)),
        fixtures::dg_three(e(5)),
    ] {
        assert!(check_relations(&f, 4).unwrap().is_empty());
        assert!(check_units(&f, 4).unwrap().is_empty());
    }
}

#[test]
fn non_associative_product_violates_the_cubic_relation() {
    // a·a = b but a·b = 0 while b·a = c: (a·a)·a ≠ a·(a·a).
    let mut cat = AInfCategory::new(&["C"], e(3));
    cat.set_hom(
        0,
        0,
        vec![
            BasisElement::new("a", 0),
            BasisElement::new("b", 0),
            BasisElement::new("c", 0),
        ],
    );
    cat.add_mu_int(&[0, 0, 0], &[0, 0], 1, 1);
    cat.add_mu_int(&[0, 0, 0], &[1, 0], 2, 1);
    let cat = cat.finish().unwrap();
    let v = check_relations(&cat, 3).unwrap();
    assert!(!v.is_empty());
    assert!(v.iter().all(|x| x.arity == 3));
}

#[test]
fn torus_mc_residual_vanishes() {
    let t = fixtures::torus(e(6));
    let d = Morphism::from_coeffs(0, 0, [(ix(&t, "X"), q(1, 6)), (ix(&t, "Y"), q(2, 6))], e(6));
    assert!(mc_residual(&t, &d).unwrap().is_zero());
    assert!(mc_residual(&t, &t.zero(0, 0)).unwrap().is_zero());
}

#[test]
fn filtration_zero_input_diverges() {
    let t = fixtures::torus(e(6));
    let d = t.basis(0, 0, ix(&t, "X"));
    assert!(matches!(
        mc_residual(&t, &d),
        Err(AInfError::DivergentSum(_))
    ));
}

#[test]
fn dg_residual_matches_direct_evaluation() {
    let cat = fixtures::dg_three(e(8));
    for c in [
        q(1, 8),
        &q(1, 8) + &q(3, 8),
        &NovikovSeries::from_int(3, e(8)) * &q(2, 8),
    ] {
        let d = Morphism::from_coeffs(0, 0, [(ix(&cat, "u"), c.clone())], e(8));
        let r = mc_residual(&cat, &d).unwrap();
        // du = v and u·u = v: μ¹(cu) = -c v and μ²(cu, cu) = -c² v.
        let expect = -&(&c + &(&c * &c));
        assert_eq!(r.coeff(ix(&cat, "v")), expect.truncated(r.precision()));
    }
}

#[test]
fn deformed_differential_on_torus() {
    let t = fixtures::torus(e(6));
    let a = q(1, 6);
    let d = Morphism::from_coeffs(0, 0, [(ix(&t, "X"), a.clone())], e(6));
    let y = t.basis(0, 0, ix(&t, "Y"));
    let got = deformed_mu(&t, &[Some(&d), Some(&d)], &[&y]).unwrap();
    let direct = t.mu(&[&d, &y]).unwrap().add(&t.mu(&[&y, &d]).unwrap());
    assert_eq!(got, direct);
    // Graded commutativity makes the two terms cancel.
    assert!(got.is_zero());
    let half = deformed_mu(&t, &[Some(&d), None], &[&y]).unwrap();
    assert_eq!(half.coeff(ix(&t, "XY")), a.truncated(half.precision()));
}

#[test]
fn twisted_pair_satisfies_relations() {
    let p = TwistedPair::new(e(4));
    assert!(check_relations(&p.cat, 3).unwrap().is_empty());
    assert!(check_units(&p.cat, 3).unwrap().is_empty());
    assert!(deformed_mu(&p.cat, &[None, None], &[&p.seed()])
        .unwrap()
        .is_zero());
}

#[test]
fn versality_of_torus_families() {
    let t = fixtures::torus(e(5));
    assert!(fixtures::torus_family(&t, true).is_versal(&t).unwrap());
    let sub = Family::linear(0, vec![t.basis(0, 0, ix(&t, "X"))], true);
    assert!(!sub.is_versal(&t).unwrap());
    let x = t.basis(0, 0, ix(&t, "X"));
    let y = t.basis(0, 0, ix(&t, "Y"));
    let redundant = Family::linear(0, vec![x.clone(), y.clone(), x.add(&y)], true);
    assert!(!redundant.is_versal(&t).unwrap());
}

#[test]
fn versal_match_recovers_planted_coordinates() {
    let p = TwistedPair::new(e(4));
    let theta = fixtures::planted_theta();
    let prob = p.problem(p.pulled_back_family(&theta), 4);
    let m = versal_match(&p.cat, &prob).unwrap();
    assert!(m.residual_order > 4);
    let one = NovikovSeries::one(e(4));
    let zero = NovikovSeries::zero(e(4));
    assert_eq!(
        m.linear,
        vec![vec![one.clone(), one.clone()], vec![zero, one]]
    );
}

#[test]
fn versal_match_on_swapped_coordinates_is_a_permutation() {
    let p = TwistedPair::new(e(4));
    let prob = p.problem(p.pulled_back_family(&fixtures::swapped_theta()), 5);
    let m = versal_match(&p.cat, &prob).unwrap();
    assert!(m.residual_order > 5);
    let (one, zero) = (NovikovSeries::one(e(4)), NovikovSeries::zero(e(4)));
    assert_eq!(
        m.linear,
        vec![vec![zero.clone(), one.clone()], vec![one, zero]]
    );
    // θ is linear, so nothing survives above degree one.
    for s in &m.eta {
        assert!(s.terms.keys().all(|k| k.iter().sum::<u32>() == 1));
    }
}

#[test]
fn matching_a_family_against_itself_gives_the_identity() {
    let t = fixtures::torus(e(5));
    let fam = fixtures::torus_family(&t, true);
    let unit = t.basis(0, 0, ix(&t, "e"));
    let prob = VersalMatchProblem {
        source: fam.clone(),
        target: fam,
        seed: unit.clone(),
        order: 5,
    };
    let m = versal_match(&t, &prob).unwrap();
    assert!(m.residual_order > 5);
    for (i, s) in m.eta.iter().enumerate() {
        let mut expect = ScalarSeries::zero(2);
        expect.insert(unit_index(2, i), NovikovSeries::one(e(5)));
        assert_eq!(s, &expect);
    }
    assert_eq!(m.f, MorphSeries::constant(unit, 2));
}

#[test]
fn versal_match_agrees_with_probed_linear_solves() {
    let m = versal_match_against_probes(6);
    assert!(m.residual_order > 6);
}

#[test]
fn deformed_differential_squares_to_zero() {
    let p = TwistedPair::new(e(5));
    let t = fixtures::torus(e(5));
    let delta = Morphism::from_coeffs(
        0,
        0,
        [(ix(&t, "X"), q(1, 5)), (ix(&t, "Y"), &q(2, 5) + &q(3, 5))],
        e(5),
    );
    let d1 = |x: &Morphism| deformed_mu(&t, &[Some(&delta), Some(&delta)], &[x]).unwrap();
    for b in 0..t.hom_dim(0, 0) {
        assert!(d1(&d1(&t.basis(0, 0, b))).is_zero());
    }
    for (x, y) in [(p.t, p.d), (p.d, p.d), (p.d, p.t)] {
        for b in 0..p.cat.hom_dim(x, y) {
            let m = p.cat.basis(x, y, b);
            let once = p.cat.mu(&[&m]).unwrap();
            assert!(p.cat.mu(&[&once]).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn obstruction_of_a_closed_family_is_exact(a in -4i64..=4, b in -4i64..=4) {
        thread_local!(static SETUP: ObstructionSetup = ObstructionSetup::new());
        SETUP.with(|s| derivative_identity(s, [a, b]))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn random_degree_one_elements_of_the_exterior_algebra_are_maurer_cartan(
        a in positive_series_at(5),
        b in positive_series_at(5),
    ) {
        let t = fixtures::torus(e(5));
        let d = Morphism::from_coeffs(0, 0, [(ix(&t, "X"), a), (ix(&t, "Y"), b)], e(5));
        prop_assert!(mc_residual(&t, &d).unwrap().is_zero());
    }
}

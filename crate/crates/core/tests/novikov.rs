mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use pointlike_core::novikov::{polydisc_contains, Exponent, Gaussian, NovikovSeries, Valuation};
use pointlike_core::rational::{rat, Rational};

fn e(n: i64, d: i64) -> Exponent {
    Exponent::ratio(n, d)
}

/// Dense schoolbook product on `(exponent, re, im)` triples, cut at `cap`.
fn oracle_mul(
    a: &NovikovSeries,
    b: &NovikovSeries,
    cap: &Exponent,
) -> BTreeMap<Rational, (Rational, Rational)> {
    let mut out: BTreeMap<Rational, (Rational, Rational)> = BTreeMap::new();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let x = ea.value() + eb.value();
            if &x >= cap.value() {
                continue;
            }
            let re = &ca.re * &cb.re - &ca.im * &cb.im;
            let im = &ca.re * &cb.im + &ca.im * &cb.re;
            let slot = out.entry(x).or_insert((rat(0, 1), rat(0, 1)));
            slot.0 += re;
            slot.1 += im;
        }
    }
    out.retain(|_, (r, i)| *r != rat(0, 1) || *i != rat(0, 1));
    out
}

fn dense(s: &NovikovSeries) -> BTreeMap<Rational, (Rational, Rational)> {
    s.terms()
        .iter()
        .map(|(k, c)| (k.value().clone(), (c.re.clone(), c.im.clone())))
        .collect()
}

proptest! {
    #[test]
    fn product_matches_schoolbook_oracle(a in common::series(-3, 15), b in common::series(-3, 15)) {
        let p = &a * &b;
        prop_assert_eq!(dense(&p), oracle_mul(&a, &b, p.truncation()));
    }

    #[test]
    fn field_axioms(a in common::series(-3, 15), b in common::series(-3, 15), c in common::series(-3, 15)) {
        common::field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn ultrametric_and_valuation(a in common::series(-6, 15), b in common::series(-6, 15)) {
        common::ultrametric(&a, &b)?;
    }

    #[test]
    fn exp_is_a_homomorphism(a in common::positive_series(), b in common::positive_series()) {
        common::exp_homomorphism(&a, &b)?;
    }

    #[test]
    fn stored_terms_are_normalized(a in common::series(-6, 17)) {
        prop_assert!(a.terms().keys().all(|k| k < a.truncation()));
        prop_assert!(a.terms().values().all(|c| !c.is_zero()));
    }

    #[test]
    fn inverse_reports_its_truncation(a in common::nonzero_series(-6, 15)) {
        let v = a.val().finite().unwrap().clone();
        let inv = a.invert().unwrap();
        prop_assert_eq!(inv.truncation(), &(a.truncation() - &v.scaled(2)));
        prop_assert_eq!(inv.val(), Valuation::Finite(-&v));
    }
}

/// `exp(c·q^λ) = Σ cᵏ/k! q^{kλ}`, evaluated independently of the library.
fn monomial_exp_oracle(
    c: &Rational,
    lam: &Exponent,
    trunc: &Exponent,
) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    let mut k = 0i64;
    let mut coeff = rat(1, 1);
    loop {
        let x = lam.value() * rat(k, 1);
        if &x >= trunc.value() {
            return out;
        }
        out.push((x, coeff.clone()));
        k += 1;
        coeff = coeff * c / rat(k, 1);
    }
}

#[test]
fn exp_of_monomials_matches_oracle() {
    let frozen: Vec<(Rational, Rational)> = vec![
        (rat(0, 1), rat(1, 1)),
        (rat(2, 3), rat(-2, 1)),
        (rat(4, 3), rat(2, 1)),
        (rat(2, 1), rat(-4, 3)),
    ];
    let (c, lam, t) = (rat(-2, 1), e(2, 3), e(7, 3));
    assert_eq!(monomial_exp_oracle(&c, &lam, &t), frozen);
    let s = NovikovSeries::monomial(Gaussian::real(c.clone()), lam.clone(), t.clone());
    let got: Vec<(Rational, Rational)> = s
        .exp()
        .unwrap()
        .terms()
        .iter()
        .map(|(k, v)| (k.value().clone(), v.re.clone()))
        .collect();
    assert_eq!(got, frozen);
    for (c, lam) in [
        (rat(1, 1), e(1, 2)),
        (rat(3, 5), e(1, 1)),
        (rat(-1, 7), e(5, 4)),
    ] {
        let t = e(6, 1);
        let s = NovikovSeries::monomial(Gaussian::real(c.clone()), lam.clone(), t.clone());
        let got: Vec<(Rational, Rational)> = s
            .exp()
            .unwrap()
            .terms()
            .iter()
            .map(|(k, v)| (k.value().clone(), v.re.clone()))
            .collect();
        assert_eq!(got, monomial_exp_oracle(&c, &lam, &t));
    }
}

#[test]
fn gaussian_unit_circle_powers() {
    // (1 + i q)(1 - i q) = 1 + q²
    let t = e(5, 1);
    let a = NovikovSeries::from_terms(
        [(e(0, 1), Gaussian::one()), (e(1, 1), Gaussian::i())],
        t.clone(),
    );
    let b = NovikovSeries::from_terms(
        [(e(0, 1), Gaussian::one()), (e(1, 1), -&Gaussian::i())],
        t.clone(),
    );
    let p = &a * &b;
    assert_eq!(
        p,
        NovikovSeries::from_terms([(e(0, 1), Gaussian::one()), (e(2, 1), Gaussian::one())], t)
    );
}

#[test]
fn polydisc_examples() {
    let t = e(5, 1);
    let one = NovikovSeries::one(t.clone());
    let half = NovikovSeries::q_power(e(1, 2), t.clone());
    let q23 =
        &NovikovSeries::q_power(e(2, 1), t.clone()) + &NovikovSeries::q_power(e(3, 1), t.clone());
    assert!(polydisc_contains(&[e(0, 1), e(0, 1)], &[one.clone(), one.clone()]).unwrap());
    assert!(!polydisc_contains(&[e(1, 1), e(0, 1)], &[half.clone(), one]).unwrap());
    assert!(polydisc_contains(&[e(1, 2), e(2, 1)], &[half, q23]).unwrap());
    assert!(polydisc_contains(&[e(0, 1)], &[]).is_err());
}

#[test]
fn truncated_equality_is_context_relative() {
    let a = NovikovSeries::from_terms(
        [(e(0, 1), Gaussian::one()), (e(3, 1), Gaussian::one())],
        e(4, 1),
    );
    let b = NovikovSeries::from_terms([(e(0, 1), Gaussian::one())], e(2, 1));
    assert!(a.agrees_with(&b));
    assert_ne!(a, b);
}

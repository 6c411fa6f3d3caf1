//! Strategies and property bodies shared by the integration suites.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use pointlike_core::novikov::{Exponent, Gaussian, NovikovSeries, Valuation};
use pointlike_core::rational::rat;

pub mod ainf;

/// Truncation used by the randomized Novikov suites.
pub const E: i64 = 6;

pub fn exponent(lo: i64, hi: i64) -> impl Strategy<Value = Exponent> {
    (lo..=hi, 1i64..=3).prop_map(|(n, d)| Exponent::ratio(n, d))
}

pub fn gaussian() -> impl Strategy<Value = Gaussian> {
    (-5i64..=5, 1i64..=3, -2i64..=2).prop_map(|(a, d, b)| Gaussian::new(rat(a, d), rat(b, 1)))
}

/// Up to four terms `c·q^{n/d}` with `n ∈ [lo, hi]`, `d ≤ 3`; terms at or
/// above the truncation are dropped.
pub fn series(lo: i64, hi: i64) -> impl Strategy<Value = NovikovSeries> {
    prop::collection::vec((exponent(lo, hi), gaussian()), 0..4)
        .prop_map(|t| NovikovSeries::from_terms(t, Exponent::from_int(E)))
}

pub fn nonzero_series(lo: i64, hi: i64) -> impl Strategy<Value = NovikovSeries> {
    series(lo, hi).prop_filter("nonzero", |s| !s.is_zero())
}

/// Strictly positive valuation, the domain of `exp`.
pub fn positive_series() -> impl Strategy<Value = NovikovSeries> {
    series(1, 5)
}

fn agree(a: &NovikovSeries, b: &NovikovSeries, what: &str) -> Result<(), TestCaseError> {
    prop_assert!(a.agrees_with(b), "{what}: {a} vs {b}");
    Ok(())
}

pub fn field_axioms(
    a: &NovikovSeries,
    b: &NovikovSeries,
    c: &NovikovSeries,
) -> Result<(), TestCaseError> {
    agree(&(a + b), &(b + a), "a+b = b+a")?;
    agree(&(a * b), &(b * a), "ab = ba")?;
    agree(&(&(a + b) + c), &(a + &(b + c)), "additive associativity")?;
    agree(
        &(&(a * b) * c),
        &(a * &(b * c)),
        "multiplicative associativity",
    )?;
    agree(&(a * &(b + c)), &(&(a * b) + &(a * c)), "distributivity")?;
    #[allow(clippy::eq_op)]
    let self_difference = a - a;
    prop_assert!(self_difference.is_zero());
    agree(
        &(a * &NovikovSeries::one(a.truncation().clone())),
        a,
        "unit",
    )?;
    if !a.is_zero() {
        let inv = a.invert().expect("nonzero series invert");
        let one = NovikovSeries::one(inv.truncation().clone());
        agree(&(a * &inv), &one, "a·a⁻¹ = 1")?;
    }
    Ok(())
}

pub fn ultrametric(a: &NovikovSeries, b: &NovikovSeries) -> Result<(), TestCaseError> {
    let (va, vb) = (a.val(), b.val());
    let vs = (a + b).val();
    let lo = std::cmp::min(&va, &vb).clone();
    prop_assert!(vs >= lo, "val(a+b) = {vs} < min({va}, {vb})");
    if va != vb {
        prop_assert_eq!(&vs, &lo);
    }
    prop_assert!((a + b).norm() <= std::cmp::max(a.norm(), b.norm()));
    prop_assert_eq!((a * b).norm(), &a.norm() * &b.norm());
    if let (Valuation::Finite(x), Valuation::Finite(y)) = (&va, &vb) {
        prop_assert_eq!((a * b).val(), Valuation::Finite(x + y));
    }
    Ok(())
}

pub fn exp_homomorphism(a: &NovikovSeries, b: &NovikovSeries) -> Result<(), TestCaseError> {
    let (ea, eb) = (a.exp().unwrap(), b.exp().unwrap());
    agree(
        &(a + b).exp().unwrap(),
        &(&ea * &eb),
        "exp(a+b) = exp a · exp b",
    )?;
    agree(
        &(&ea * &(-a).exp().unwrap()),
        &NovikovSeries::one(ea.truncation().clone()),
        "exp(a)exp(-a) = 1",
    )?;
    prop_assert_eq!(ea.val(), Valuation::Finite(Exponent::zero()));
    prop_assert!(ea.leading().unwrap().1.is_one());
    Ok(())
}

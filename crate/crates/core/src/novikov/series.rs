use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::coeff::Gaussian;
use super::NovikovError;
use crate::rational::{fmt_rat, int, Rational};

/// The exponent `λ` of a monomial `q^λ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(Rational);

impl Exponent {
    pub fn new(r: Rational) -> Self {
        Self(r)
    }

    pub fn from_int(n: i64) -> Self {
        Self(int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self(crate::rational::rat(n, d))
    }

    pub fn zero() -> Self {
        Self(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self(&self.0 * int(k))
    }
}

impl Add<&Exponent> for &Exponent {
    type Output = Exponent;
    fn add(self, o: &Exponent) -> Exponent {
        Exponent(&self.0 + &o.0)
    }
}

impl Sub<&Exponent> for &Exponent {
    type Output = Exponent;
    fn sub(self, o: &Exponent) -> Exponent {
        Exponent(&self.0 - &o.0)
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-&self.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rat(&self.0))
    }
}

/// `val(s)`: the least exponent, or `+∞` for the zero series.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(Exponent),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Exponent> {
        match self {
            Valuation::Finite(e) => Some(e),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(e) => write!(f, "{e}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

/// The norm `|s| = e^{-val(s)}`, kept symbolic as the exponent `-val(s)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Norm {
    Zero,
    /// `e^x`
    Exp(Rational),
}

impl Norm {
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            Norm::Zero => 0.0,
            Norm::Exp(x) => x.to_f64().unwrap_or(f64::NAN).exp(),
        }
    }
}

impl Mul for &Norm {
    type Output = Norm;
    // e^a · e^b = e^{a+b}.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: &Norm) -> Norm {
        match (self, o) {
            (Norm::Exp(a), Norm::Exp(b)) => Norm::Exp(a + b),
            _ => Norm::Zero,
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::Zero => f.write_str("0"),
            Norm::Exp(x) if x.is_zero() => f.write_str("1"),
            Norm::Exp(x) => write!(f, "e^{{{}}}", fmt_rat(x)),
        }
    }
}

/// A Novikov series `Σ a_λ q^λ` known exactly modulo `q^E`, where `E` is the
/// truncation. Every stored exponent is below `E` and every stored coefficient
/// is nonzero.
///
/// Arithmetic reports the truncation that is actually guaranteed: a product
/// `a·b` is known modulo `q^{min(E_a + val b, E_b + val a)}`, an inverse of a
/// series with valuation `v` modulo `q^{E - 2v}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovSeries {
    terms: BTreeMap<Exponent, Gaussian>,
    truncation: Exponent,
}

impl NovikovSeries {
    pub fn zero(truncation: Exponent) -> Self {
        Self {
            terms: BTreeMap::new(),
            truncation,
        }
    }

    pub fn one(truncation: Exponent) -> Self {
        Self::constant(Gaussian::one(), truncation)
    }

    pub fn constant(c: Gaussian, truncation: Exponent) -> Self {
        Self::monomial(c, Exponent::zero(), truncation)
    }

    pub fn from_int(n: i64, truncation: Exponent) -> Self {
        Self::constant(Gaussian::from_int(n), truncation)
    }

    pub fn from_rational(r: Rational, truncation: Exponent) -> Self {
        Self::constant(Gaussian::real(r), truncation)
    }

    /// `c·q^e`, dropped if `e` is at or beyond the truncation.
    pub fn monomial(c: Gaussian, e: Exponent, truncation: Exponent) -> Self {
        let mut s = Self::zero(truncation);
        if !c.is_zero() && e < s.truncation {
            s.terms.insert(e, c);
        }
        s
    }

    pub fn q_power(e: Exponent, truncation: Exponent) -> Self {
        Self::monomial(Gaussian::one(), e, truncation)
    }

    pub fn from_terms<I>(terms: I, truncation: Exponent) -> Self
    where
        I: IntoIterator<Item = (Exponent, Gaussian)>,
    {
        let mut s = Self::zero(truncation);
        for (e, c) in terms {
            if e >= s.truncation {
                continue;
            }
            let slot = s.terms.entry(e).or_insert_with(Gaussian::zero);
            *slot = &*slot + &c;
        }
        s.terms.retain(|_, c| !c.is_zero());
        s
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Gaussian> {
        &self.terms
    }

    pub fn truncation(&self) -> &Exponent {
        &self.truncation
    }

    pub fn coefficient(&self, e: &Exponent) -> Gaussian {
        self.terms.get(e).cloned().unwrap_or_else(Gaussian::zero)
    }

    /// Zero modulo the truncation.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn val(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(e) => Valuation::Finite(e.clone()),
            None => Valuation::Infinite,
        }
    }

    /// A lower bound for the true valuation: `val` if nonzero, else the truncation.
    pub fn val_floor(&self) -> Exponent {
        self.terms
            .keys()
            .next()
            .cloned()
            .unwrap_or_else(|| self.truncation.clone())
    }

    pub fn leading(&self) -> Option<(&Exponent, &Gaussian)> {
        self.terms.iter().next()
    }

    pub fn norm(&self) -> Norm {
        match self.val() {
            Valuation::Finite(e) => Norm::Exp(-e.value().clone()),
            Valuation::Infinite => Norm::Zero,
        }
    }

    /// Lowers the truncation to `e` (never raises it).
    pub fn truncated(&self, e: &Exponent) -> Self {
        if e >= &self.truncation {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .range(..e.clone())
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            truncation: e.clone(),
        }
    }

    /// True when both series agree below the smaller of the two truncations.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let e = std::cmp::min(&self.truncation, &other.truncation).clone();
        self.agrees_below(other, &e)
    }

    /// Compares terms with exponent `< e`. The caller is responsible for `e`
    /// not exceeding either truncation.
    pub fn agrees_below(&self, other: &Self, e: &Exponent) -> bool {
        let a = self.terms.range(..e.clone());
        let b = other.terms.range(..e.clone());
        a.eq(b)
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        if c.is_zero() {
            // 0 · (known + O(q^E)) is exactly zero; keep the context truncation.
            return Self::zero(self.truncation.clone());
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
            truncation: self.truncation.clone(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&Gaussian::real(r.clone()))
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: &Exponent) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k + e, v.clone())).collect(),
            truncation: &self.truncation + e,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.truncation.clone());
        for _ in 0..k {
            acc = &acc * self;
        }
        if k == 0 {
            return acc;
        }
        acc
    }

    /// `1/s`, known modulo `q^{E - 2·val(s)}`.
    pub fn invert(&self) -> Result<Self, NovikovError> {
        let (v, c) = self.leading().ok_or(NovikovError::DivisionByZero)?;
        let (v, c_inv) = (v.clone(), c.inv().expect("stored coefficients are nonzero"));
        // s = c·q^v·(1 + t) with val(t) > 0, known modulo q^E.
        let rel = &self.truncation - &v;
        let t: BTreeMap<Exponent, Gaussian> = self
            .terms
            .iter()
            .skip(1)
            .map(|(e, a)| (e - &v, a * &c_inv))
            .collect();
        let mut w = BTreeMap::new();
        w.insert(Exponent::zero(), Gaussian::one());
        let mut power = w.clone();
        loop {
            power = neg_terms(&mul_terms(&power, &t, &rel));
            if power.is_empty() {
                break;
            }
            add_into(&mut w, &power);
        }
        let shift = -&v;
        let terms = w.into_iter().map(|(e, a)| (&e + &shift, &a * &c_inv));
        Ok(Self::from_terms(terms, &rel + &shift))
    }

    /// `exp(s) = Σ s^k/k!` for `val(s) > 0`; the result lies in `U_Λ`.
    pub fn exp(&self) -> Result<Self, NovikovError> {
        if let Valuation::Finite(v) = self.val() {
            if !v.is_positive() {
                return Err(NovikovError::NonPositiveValuation(v.to_string()));
            }
        }
        let cap = self.truncation.clone();
        let mut acc = BTreeMap::new();
        if Exponent::zero() < cap {
            acc.insert(Exponent::zero(), Gaussian::one());
        }
        let mut term = acc.clone();
        let mut k = 1i64;
        loop {
            let next = mul_terms(&term, &self.terms, &cap);
            if next.is_empty() {
                break;
            }
            let inv_k = Rational::new(One::one(), k.into());
            term = next
                .into_iter()
                .map(|(e, a)| (e, a.scale(&inv_k)))
                .collect();
            add_into(&mut acc, &term);
            k += 1;
        }
        Ok(Self::from_terms(acc, cap))
    }

    fn mul_truncation(&self, o: &Self) -> Exponent {
        let a = &self.truncation + &o.val_floor();
        let b = &o.truncation + &self.val_floor();
        std::cmp::min(a, b)
    }
}

fn mul_terms(
    a: &BTreeMap<Exponent, Gaussian>,
    b: &BTreeMap<Exponent, Gaussian>,
    cap: &Exponent,
) -> BTreeMap<Exponent, Gaussian> {
    let mut out: BTreeMap<Exponent, Gaussian> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea + eb;
            if &e >= cap {
                // b is sorted, later exponents only grow.
                break;
            }
            let prod = ca * cb;
            let slot = out.entry(e).or_insert_with(Gaussian::zero);
            *slot = &*slot + &prod;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn neg_terms(a: &BTreeMap<Exponent, Gaussian>) -> BTreeMap<Exponent, Gaussian> {
    a.iter().map(|(e, c)| (e.clone(), -c)).collect()
}

fn add_into(acc: &mut BTreeMap<Exponent, Gaussian>, b: &BTreeMap<Exponent, Gaussian>) {
    for (e, c) in b {
        let slot = acc.entry(e.clone()).or_insert_with(Gaussian::zero);
        *slot = &*slot + c;
    }
    acc.retain(|_, c| !c.is_zero());
}

impl Add<&NovikovSeries> for &NovikovSeries {
    type Output = NovikovSeries;
    fn add(self, o: &NovikovSeries) -> NovikovSeries {
        let e = std::cmp::min(&self.truncation, &o.truncation).clone();
        NovikovSeries::from_terms(
            self.terms
                .iter()
                .chain(o.terms.iter())
                .map(|(k, v)| (k.clone(), v.clone())),
            e,
        )
    }
}

impl Sub<&NovikovSeries> for &NovikovSeries {
    type Output = NovikovSeries;
    fn sub(self, o: &NovikovSeries) -> NovikovSeries {
        self + &(-o)
    }
}

impl Neg for &NovikovSeries {
    type Output = NovikovSeries;
    fn neg(self) -> NovikovSeries {
        NovikovSeries {
            terms: neg_terms(&self.terms),
            truncation: self.truncation.clone(),
        }
    }
}

impl Mul<&NovikovSeries> for &NovikovSeries {
    type Output = NovikovSeries;
    fn mul(self, o: &NovikovSeries) -> NovikovSeries {
        let cap = self.mul_truncation(o);
        NovikovSeries {
            terms: mul_terms(&self.terms, &o.terms, &cap),
            truncation: cap,
        }
    }
}

impl fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if e.value().is_zero() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "q^{{{e}}}")?;
            } else {
                write!(f, "{c}·q^{{{e}}}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{{{}}})", self.truncation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn e(n: i64, d: i64) -> Exponent {
        Exponent::ratio(n, d)
    }

    fn s(terms: &[(i64, i64, i64)], trunc: i64) -> NovikovSeries {
        NovikovSeries::from_terms(
            terms
                .iter()
                .map(|&(n, d, c)| (e(n, d), Gaussian::from_int(c))),
            Exponent::from_int(trunc),
        )
    }

    #[test]
    fn valuation_of_sum_and_zero() {
        assert_eq!(
            s(&[(1, 2, 1), (2, 1, 3)], 5).val(),
            Valuation::Finite(e(1, 2))
        );
        assert_eq!(NovikovSeries::zero(e(5, 1)).val(), Valuation::Infinite);
    }

    #[test]
    fn valuation_is_additive_on_product() {
        // (q + q^2)(q^-1 + 1) = 1 + 2q + q^2
        let a = s(&[(1, 1, 1), (2, 1, 1)], 6);
        let b = s(&[(-1, 1, 1), (0, 1, 1)], 6);
        let p = &a * &b;
        assert_eq!(p.val(), Valuation::Finite(Exponent::zero()));
        assert_eq!(p.coefficient(&e(1, 1)), Gaussian::from_int(2));
        assert_eq!(p.truncation(), &e(5, 1));
    }

    #[test]
    fn geometric_inverse() {
        let one_plus_q = s(&[(0, 1, 1), (1, 1, 1)], 6);
        let inv = one_plus_q.invert().unwrap();
        assert_eq!(
            inv,
            s(
                &[
                    (0, 1, 1),
                    (1, 1, -1),
                    (2, 1, 1),
                    (3, 1, -1),
                    (4, 1, 1),
                    (5, 1, -1)
                ],
                6
            )
        );
        let prod = &one_plus_q * &inv;
        assert_eq!(prod, NovikovSeries::one(e(6, 1)));
    }

    #[test]
    fn invert_monomial_and_truncation_loss() {
        let q = s(&[(1, 1, 1)], 4);
        let inv = q.invert().unwrap();
        assert_eq!(inv.terms().len(), 1);
        assert_eq!(inv.val(), Valuation::Finite(e(-1, 1)));
        assert_eq!(inv.truncation(), &e(2, 1)); // E - 2v
        assert!(matches!(
            NovikovSeries::zero(e(3, 1)).invert(),
            Err(NovikovError::DivisionByZero)
        ));
    }

    #[test]
    fn square_of_half_power_binomial() {
        let a = s(&[(0, 1, 1), (1, 2, 1)], 4);
        assert_eq!(&a * &a, s(&[(0, 1, 1), (1, 2, 2), (1, 1, 1)], 4));
    }

    #[test]
    fn exp_examples() {
        let zero = NovikovSeries::zero(e(3, 1));
        assert_eq!(zero.exp().unwrap(), NovikovSeries::one(e(3, 1)));
        let q = s(&[(1, 1, 1)], 3);
        let expected = NovikovSeries::from_terms(
            [
                (e(0, 1), Gaussian::one()),
                (e(1, 1), Gaussian::one()),
                (e(2, 1), Gaussian::real(rat(1, 2))),
            ],
            e(3, 1),
        );
        assert_eq!(q.exp().unwrap(), expected);
        assert!(s(&[(0, 1, 1)], 3).exp().is_err());
        assert!(s(&[(-1, 2, 1)], 3).exp().is_err());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(s(&[(1, 1, 1)], 3).norm(), Norm::Exp(int(-1)));
        assert_eq!(NovikovSeries::zero(e(3, 1)).norm(), Norm::Zero);
        assert_eq!(s(&[(0, 1, 7), (1, 1, 2)], 3).norm(), Norm::Exp(int(0)));
        assert!((Norm::Exp(int(-1)).to_f64() - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(Norm::Exp(int(0)).to_string(), "1");
    }

    #[test]
    fn display_is_readable() {
        let a = s(&[(0, 1, 2), (1, 2, 1)], 4);
        assert_eq!(a.to_string(), "2 + q^{1/2} + O(q^{4})");
    }
}

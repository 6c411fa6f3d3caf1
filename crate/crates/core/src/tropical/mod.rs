//! Tropical geometry in the plane over the Novikov field, min convention:
//! `val(Σ f_ν z^ν)` is governed by `min_ν(val f_ν + ν·p)` at `p = val(z)`.

mod complex;
mod json;
mod polytope;
mod search;
mod svg;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::novikov::NovikovSeries;
use crate::rational::{int, Rational};

pub use complex::{tropical_hypersurface, Edge, PolyhedralComplex};
pub use json::{complex_from_json, laurent_from_json, polytope_from_json, tropical_from_json};
pub use polytope::{add, cross, dot, pt, scale, sub, HalfPlane, Point, RationalPolytope};
pub use search::{
    naively_constructible_codim, uncovered_point, DimensionLabel, UncoveredPoint, UncoveredSearch,
};
pub use svg::to_svg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("invalid polytope: {0}")]
    Polytope(String),
    #[error("coefficient of exponent ({0}, {1}) is zero")]
    ZeroCoefficient(i64, i64),
    #[error("malformed input: {0}")]
    Schema(String),
}

/// Exponent vector in `ℤ²`.
pub type Exp = [i64; 2];

/// `Σ f_ν z^ν` with nonzero Novikov coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<Exp, NovikovSeries>,
}

impl LaurentPoly {
    pub fn new<I: IntoIterator<Item = (Exp, NovikovSeries)>>(
        terms: I,
    ) -> Result<Self, TropicalError> {
        let mut out = BTreeMap::new();
        for (nu, c) in terms {
            if c.is_zero() {
                return Err(TropicalError::ZeroCoefficient(nu[0], nu[1]));
            }
            out.insert(nu, c);
        }
        Ok(Self { terms: out })
    }

    pub fn terms(&self) -> &BTreeMap<Exp, NovikovSeries> {
        &self.terms
    }

    /// `c·f`; `c` must be nonzero.
    pub fn scale(&self, c: &NovikovSeries) -> Result<Self, TropicalError> {
        Self::new(self.terms.iter().map(|(nu, f)| (*nu, f * c)))
    }
}

/// `p ↦ min_ν(c_ν + ν·p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    pub terms: BTreeMap<Exp, Rational>,
}

impl TropicalPolynomial {
    pub fn new<I: IntoIterator<Item = (Exp, Rational)>>(terms: I) -> Self {
        Self {
            terms: terms.into_iter().collect(),
        }
    }

    pub fn from_ints(terms: &[(Exp, i64)]) -> Self {
        Self::new(terms.iter().map(|(nu, c)| (*nu, int(*c))))
    }

    pub fn term_value(nu: &Exp, c: &Rational, p: &Point) -> Rational {
        c + &int(nu[0]) * &p[0] + &int(nu[1]) * &p[1]
    }

    /// The minimum and every exponent attaining it. `None` without terms.
    pub fn eval(&self, p: &Point) -> Option<(Rational, Vec<Exp>)> {
        let mut best: Option<(Rational, Vec<Exp>)> = None;
        for (nu, c) in &self.terms {
            let v = Self::term_value(nu, c, p);
            match &mut best {
                Some((m, arg)) if &v == m => arg.push(*nu),
                Some((m, _)) if &v > m => {}
                _ => best = Some((v, vec![*nu])),
            }
        }
        best
    }

    /// The minimum is attained at least twice.
    pub fn is_corner(&self, p: &Point) -> bool {
        self.eval(p).is_some_and(|(_, arg)| arg.len() >= 2)
    }

    pub fn shift(&self, by: &Rational) -> Self {
        Self::new(self.terms.iter().map(|(nu, c)| (*nu, c + by)))
    }
}

/// `ν ↦ val(f_ν)`.
pub fn tropicalize(f: &LaurentPoly) -> TropicalPolynomial {
    TropicalPolynomial::new(f.terms.iter().map(|(nu, c)| {
        let v = c.val();
        let e = v.finite().expect("coefficients are nonzero");
        (*nu, e.value().clone())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::Exponent;

    #[test]
    fn binomial_tropicalizes_to_its_valuations() {
        let t = Exponent::from_int(10);
        let lam = Exponent::ratio(3, 2);
        let f = LaurentPoly::new([
            ([1, 0], NovikovSeries::one(t.clone())),
            ([0, 0], -&NovikovSeries::q_power(lam, t)),
        ])
        .unwrap();
        let tf = tropicalize(&f);
        assert_eq!(
            tf.terms,
            BTreeMap::from([([1, 0], int(0)), ([0, 0], crate::rational::rat(3, 2))])
        );
    }

    #[test]
    fn zero_coefficient_is_rejected() {
        let t = Exponent::from_int(3);
        assert_eq!(
            LaurentPoly::new([([2, -1], NovikovSeries::zero(t))]),
            Err(TropicalError::ZeroCoefficient(2, -1))
        );
    }

    #[test]
    fn corner_detection() {
        let f = TropicalPolynomial::from_ints(&[([0, 0], 0), ([1, 0], 0), ([0, 1], 0)]);
        assert!(f.is_corner(&[int(0), int(5)]));
        assert!(!f.is_corner(&[int(1), int(5)]));
        assert_eq!(f.eval(&[int(-1), int(-1)]).unwrap().1.len(), 2);
    }
}

use std::collections::BTreeMap;

use crate::novikov::{Exponent, Gaussian, NovikovSeries};
use crate::rational::Rational;

/// A morphism `Σ c_b · b` in `hom(src, tgt)`.
///
/// Every coefficient, stored or absent, is known modulo `q^precision`; absent
/// coefficients are zero to that precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub src: usize,
    pub tgt: usize,
    coeffs: BTreeMap<usize, NovikovSeries>,
    precision: Exponent,
}

impl Morphism {
    pub fn zero(src: usize, tgt: usize, precision: Exponent) -> Self {
        Self {
            src,
            tgt,
            coeffs: BTreeMap::new(),
            precision,
        }
    }

    pub fn basis(src: usize, tgt: usize, b: usize, precision: Exponent) -> Self {
        let one = NovikovSeries::one(precision.clone());
        Self::from_coeffs(src, tgt, [(b, one)], precision)
    }

    /// Repeated indices are summed; the precision drops to the least input truncation.
    pub fn from_coeffs<I>(src: usize, tgt: usize, coeffs: I, precision: Exponent) -> Self
    where
        I: IntoIterator<Item = (usize, NovikovSeries)>,
    {
        let mut acc: BTreeMap<usize, NovikovSeries> = BTreeMap::new();
        let mut prec = precision;
        for (b, c) in coeffs {
            if c.truncation() < &prec {
                prec = c.truncation().clone();
            }
            let slot = acc.remove(&b);
            acc.insert(
                b,
                match slot {
                    Some(s) => &s + &c,
                    None => c,
                },
            );
        }
        let mut m = Self {
            src,
            tgt,
            coeffs: acc,
            precision: prec,
        };
        m.normalize();
        m
    }

    pub fn from_rationals<I>(src: usize, tgt: usize, coeffs: I, precision: Exponent) -> Self
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let p = precision.clone();
        Self::from_coeffs(
            src,
            tgt,
            coeffs
                .into_iter()
                .map(move |(b, r)| (b, NovikovSeries::constant(Gaussian::real(r), p.clone()))),
            precision,
        )
    }

    fn normalize(&mut self) {
        for c in self.coeffs.values_mut() {
            if c.truncation() != &self.precision {
                *c = c.truncated(&self.precision);
            }
        }
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    pub fn precision(&self) -> &Exponent {
        &self.precision
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, NovikovSeries> {
        &self.coeffs
    }

    pub fn coeff(&self, b: usize) -> NovikovSeries {
        self.coeffs
            .get(&b)
            .cloned()
            .unwrap_or_else(|| NovikovSeries::zero(self.precision.clone()))
    }

    pub fn get(&self, b: usize) -> Option<&NovikovSeries> {
        self.coeffs.get(&b)
    }

    /// Zero modulo `q^precision`.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// A lower bound for the valuation of every coefficient.
    pub fn minval(&self) -> Exponent {
        self.coeffs
            .values()
            .map(NovikovSeries::val_floor)
            .chain(std::iter::once(self.precision.clone()))
            .min()
            .expect("nonempty")
    }

    pub fn with_precision(&self, e: &Exponent) -> Self {
        let mut m = self.clone();
        if e < &m.precision {
            m.precision = e.clone();
            m.normalize();
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(
            (self.src, self.tgt),
            (o.src, o.tgt),
            "adding morphisms of different hom spaces"
        );
        let prec = std::cmp::min(&self.precision, &o.precision).clone();
        Self::from_coeffs(
            self.src,
            self.tgt,
            self.coeffs
                .iter()
                .chain(o.coeffs.iter())
                .map(|(b, c)| (*b, c.clone())),
            prec,
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            src: self.src,
            tgt: self.tgt,
            coeffs: self.coeffs.iter().map(|(b, c)| (*b, -c)).collect(),
            precision: self.precision.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// `c · self`; the precision follows the product rule for series.
    pub fn scale(&self, c: &NovikovSeries) -> Self {
        let prec = std::cmp::min(
            &self.precision + &c.val_floor(),
            c.truncation() + &self.minval(),
        );
        Self::from_coeffs(
            self.src,
            self.tgt,
            self.coeffs.iter().map(|(b, x)| (*b, x * c)),
            prec,
        )
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(self.src, self.tgt, self.precision.clone());
        }
        let g = Gaussian::from_int(k);
        Self {
            src: self.src,
            tgt: self.tgt,
            coeffs: self.coeffs.iter().map(|(b, x)| (*b, x.scale(&g))).collect(),
            precision: self.precision.clone(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let g = Gaussian::real(r.clone());
        let mut m = Self {
            src: self.src,
            tgt: self.tgt,
            coeffs: self.coeffs.iter().map(|(b, x)| (*b, x.scale(&g))).collect(),
            precision: self.precision.clone(),
        };
        m.normalize();
        m
    }

    /// Whether both agree below the smaller precision.
    pub fn agrees_with(&self, o: &Self) -> bool {
        (self.src, self.tgt) == (o.src, o.tgt) && self.sub(o).is_zero()
    }
}

/// Guaranteed precision of a multilinear expression `c · x_1 ⋯ x_n`, where
/// `c` ranges over constants of valuation at least `structure_floor`.
pub fn product_precision(inputs: &[&Morphism], structure_floor: &Exponent) -> Exponent {
    let minvals: Vec<Exponent> = inputs.iter().map(|m| m.minval()).collect();
    let total = minvals.iter().fold(Exponent::zero(), |acc, v| &acc + v);
    let best = inputs
        .iter()
        .zip(&minvals)
        .map(|(m, v)| &(&total - v) + m.precision())
        .min()
        .unwrap_or_else(Exponent::zero);
    &best + structure_floor
}

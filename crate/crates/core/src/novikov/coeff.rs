use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{fmt_rat, int, Rational};

/// An exact complex-rational number `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }
}

impl<'a> Add<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn add(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn sub(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn mul(self, o: &Gaussian) -> Gaussian {
        if self.im.is_zero() {
            return o.scale(&self.re);
        }
        if o.im.is_zero() {
            return self.scale(&o.re);
        }
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rat(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", fmt_rat(&self.im))
        } else {
            write!(f, "({}+{}i)", fmt_rat(&self.re), fmt_rat(&self.im))
        }
    }
}

//! Truncated Novikov series with exact Gaussian-rational coefficients.
//!
//! A series is only ever known modulo `q^E`; every operation returns the
//! truncation it can actually guarantee, so comparisons are made with
//! [`NovikovSeries::agrees_with`] rather than assuming infinite precision.

mod coeff;
mod convergence;
mod literal;
mod series;

pub use coeff::Gaussian;
pub use convergence::{polydisc_contains, ConvergenceCertificate, Region, TailBound, TailKind};
pub use literal::{series_from_value, series_to_value};
pub use series::{Exponent, Norm, NovikovSeries, Valuation};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NovikovError {
    #[error("division by the zero series")]
    DivisionByZero,
    #[error("exp requires positive valuation, got {0}")]
    NonPositiveValuation(String),
    #[error("region is unbounded for this certificate")]
    UnboundedRegion,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed series literal: {0}")]
    Literal(String),
}

//! Twisted complexes, homotopy idempotents and point-like detection.
//!
//! [`TwistedCategory`] is generic over its base, so a twisted category over a
//! twisted category is again an A∞ category; the idempotent window uses this.

mod category;
mod endo;
mod idempotent;
mod json;
mod polynomial;

pub use category::{BlockIndex, Summand, TwistedCategory, TwistedObject};
pub use endo::{endomorphism_cohomology, is_point_like, EndoCohomology, ProductEntry};
pub use idempotent::{
    check_idempotent, degree_bound, idempotent_window, window_position, HomotopyIdempotent,
    IdempotentReport, IdempotentWindow, WindowEntry,
};
pub use json::{twisted_from_json, TwistedInput};
pub use polynomial::{mc_polynomial_system, pre_twisted_space, McSystem, Polynomial};

use thiserror::Error;

use crate::ainf::AInfError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistedError {
    #[error("differential entry ({row},{col}) does not raise the filtration level by at least 1")]
    FiltrationOrder { row: usize, col: usize },
    #[error("window of length {n} is too small; need at least {min}")]
    WindowTooSmall { n: usize, min: usize },
    #[error("idempotent component {d} exceeds the degree bound {max}")]
    DegreeBound { d: usize, max: usize },
    #[error("idempotent component {d} has the wrong degree")]
    ComponentDegree { d: usize },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    AInf(#[from] AInfError),
}

impl From<crate::homalg::LinAlgError> for TwistedError {
    fn from(e: crate::homalg::LinAlgError) -> Self {
        TwistedError::AInf(e.into())
    }
}

impl TwistedError {
    pub fn is_undecidable(&self) -> bool {
        matches!(self, TwistedError::AInf(e) if e.is_undecidable())
    }
}

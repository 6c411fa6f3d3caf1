//! Finite filtered A∞ categories and Maurer–Cartan deformation theory.
//!
//! Composition order is forward: `μ^d(a_1, …, a_d)` with `a_1 ∈ hom(X_0, X_1)`.
//! The A∞ relations read
//!
//! ```text
//! Σ (-1)^{✠_n} μ(a_1, …, a_n, μ(a_{n+1}, …, a_{n+m}), a_{n+m+1}, …, a_d) = 0,
//! ✠_n = Σ_{j ≤ n} (|a_j| - 1).
//! ```
//!
//! A dg algebra gives `μ¹(a) = (-1)^{|a|} da` and `μ²(a_1, a_2) = (-1)^{|a_1|} a_2·a_1`.
//! Strict units satisfy `μ²(e, x) = x`, `μ²(x, e) = (-1)^{|x|} x`, and every
//! other `μ^d` with a unit input vanishes.

mod category;
mod cohomology;
mod family;
mod morphism;
mod ops;
mod versal;

pub use category::{coeff_from_value, AInfCategory, BasisElement};
pub use cohomology::{certify_quasi_iso, linear_map_matrix, HomCohomology};
pub use family::{
    multi_indices, series_deformed_mu, series_mu, total_degree, Family, MorphSeries, MultiIndex,
    ScalarSeries,
};
pub use morphism::{product_precision, Morphism};
pub use ops::{check_relations, check_units, deformed_mu, mc_residual, Violation};
pub use versal::{match_residual, versal_match, VersalMatch, VersalMatchProblem};

pub(crate) use category::composable_path;
pub(crate) use ops::distributions;

use thiserror::Error;

use crate::homalg::LinAlgError;
use crate::novikov::{Exponent, NovikovError};
use crate::rational::Rational;

/// A strictly proper A∞ category with finitely many objects.
pub trait AInf {
    fn num_objects(&self) -> usize;
    fn object_name(&self, x: usize) -> String;
    fn hom_dim(&self, x: usize, y: usize) -> usize;
    fn degree(&self, x: usize, y: usize, b: usize) -> i32;
    fn filtration(&self, x: usize, y: usize, b: usize) -> Rational;
    fn basis_name(&self, x: usize, y: usize, b: usize) -> String;
    /// Largest `d` with `μ^d` possibly nonzero.
    fn max_arity(&self) -> usize;
    /// Working precision: results are never claimed beyond `q^E`.
    fn truncation(&self) -> &Exponent;
    /// A lower bound for the valuation of every structure constant.
    fn structure_floor(&self) -> Exponent;
    fn mu(&self, inputs: &[&Morphism]) -> Result<Morphism, AInfError>;
    fn unit(&self, x: usize) -> Option<Morphism>;

    fn zero(&self, x: usize, y: usize) -> Morphism {
        Morphism::zero(x, y, self.truncation().clone())
    }

    fn basis(&self, x: usize, y: usize, b: usize) -> Morphism {
        Morphism::basis(x, y, b, self.truncation().clone())
    }

    /// Basis indices of `hom^k(x, y)`.
    fn degree_basis(&self, x: usize, y: usize, k: i32) -> Vec<usize> {
        (0..self.hom_dim(x, y))
            .filter(|&b| self.degree(x, y, b) == k)
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AInfError {
    #[error("inputs are not composable at position {0}")]
    NotComposable(usize),
    #[error("object index {0} out of range")]
    ObjectOutOfRange(usize),
    #[error("basis index {index} out of range for hom({x},{y})")]
    BasisOutOfRange { x: usize, y: usize, index: usize },
    #[error("mu needs at least one input")]
    EmptyInput,
    #[error("sum diverges: component {0} has filtration < 1 and valuation <= 0")]
    DivergentSum(String),
    #[error("structure map lowers filtration: {0}")]
    FiltrationViolation(String),
    #[error("structure map has wrong degree: {0}")]
    DegreeViolation(String),
    #[error("strict unit axiom fails: {0}")]
    UnitViolation(String),
    #[error("element is not a Maurer-Cartan solution")]
    NotMaurerCartan,
    #[error("source family is not versal")]
    NotVersal,
    #[error("seed morphism is not closed")]
    SeedNotClosed,
    #[error("seed morphism is not a quasi-isomorphism")]
    NotQuasiIso,
    #[error("order-by-order system is inconsistent at multi-index {0:?}")]
    Inconsistent(Vec<u32>),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
}

impl AInfError {
    /// True when the failure is a precision refusal rather than a verdict.
    pub fn is_undecidable(&self) -> bool {
        matches!(self, AInfError::LinAlg(LinAlgError::Undecidable { .. }))
    }
}

//! Exact linear algebra: integer normal forms and lattices, elimination over
//! ℚ and over truncated Novikov series, and cohomology of finite complexes.

mod cohomology;
mod field;
mod integer;

pub use cohomology::{CochainComplex, CohomologyGroup};
pub use field::{
    column_space, kernel, novikov_from_rational, rank, reduce, solve, EntryStatus, Field, Matrix,
    Reduced,
};
pub use integer::{
    hermite_basis, int_vec, int_vec_json, saturation, saturation_index, smith_normal_form,
    subgroup_membership, IntegerMatrix, SmithForm,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("rank undecidable at this truncation (entry valuation >= {floor}{})",
        pivot.as_ref().map(|p| format!(", candidate pivot valuation {p}")).unwrap_or_default())]
    Undecidable {
        floor: String,
        pivot: Option<String>,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not a cocycle")]
    NotClosed,
}

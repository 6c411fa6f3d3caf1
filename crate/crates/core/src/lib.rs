//! Exact algebra kernels for filtered A∞ deformation theory, Mukai lattices,
//! tropical curves over the Novikov field and Lagrangian flux data.

#![allow(clippy::needless_range_loop)]

pub mod ainf;
pub mod fixtures;
pub mod flux;
pub mod homalg;
pub mod mukai;
pub mod novikov;
pub mod rational;
pub mod tropical;
pub mod twisted;

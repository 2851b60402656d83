//! Exact linear algebra over the Gaussian rationals.
//!
//! Everything downstream (cohomology, spectral pages, the filtration lattice) is expressed in
//! terms of [`ExactMatrix`] and [`Subspace`]. Subspaces are kept in reduced row-echelon form so
//! that results are canonical and deterministic.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{ExactMatrix, Rref};
pub use scalar::{GaussRational, Rational};
pub use subspace::{quotient_map, QuotientMap, Subspace};

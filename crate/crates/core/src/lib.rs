//! Exact computation of invariant Dolbeault cohomology with polyvector coefficients,
//! holomorphic Poisson cohomology and the spectral sequence of the Poisson bi-complex on
//! nilpotent Lie algebras with (preferably abelian) complex structures.
//!
//! The pipeline is:
//!
//! 1. an [`AlgebraPresentation`] (real structure constants and `J`), from the [`catalog`], a
//!    JSON file ([`io`]) or built by hand;
//! 2. a [`CalculusContext`], which fixes the frame `v_j`, `ω̄_j` and the operators `∂̄` and the
//!    Schouten bracket on `K• = Λ•(g^{1,0} ⊕ g^{*(0,1)})`;
//! 3. the [`homology`] engine: Dolbeault cohomology, Poisson cohomology, spectral pages and
//!    degeneration verdicts;
//! 4. [`poisson`] tools to find and construct holomorphic Poisson bivectors.

pub mod calculus;
pub mod catalog;
pub mod error;
pub mod exterior;
pub mod homology;
pub mod io;
pub mod lambda;
pub mod lie;
pub mod linalg;
pub mod poisson;

pub use calculus::CalculusContext;
pub use error::{Error, Result};
pub use exterior::{Generator, MixedElement, MixedMonomial};
pub use homology::{BigradedComplex, SpectralPage, Verdict};
pub use lambda::{parse_lambda, LambdaExpr};
pub use lie::{AlgebraPresentation, ComplexFrame, Grading, ValidationReport};
pub use linalg::{ExactMatrix, GaussRational, Rational, Subspace};
pub use poisson::{holomorphic_bivector_space, is_holomorphic_poisson, theorem2_lambda, PoissonCandidate};

//! Exact matrices of every differential on `A^{•,•}`, the cohomology they compute, and the
//! spectral sequence of the filtration `F^p K^n = ⊕_{p' ≥ p} A^{p', n−p'}`.
//!
//! The free functions here take a context and a bivector and assemble a fresh
//! [`BigradedComplex`]; callers asking several questions of one `Λ` should assemble once and
//! use its methods.

mod bicomplex;
mod complex;
mod spectral;

pub use bicomplex::{d_bicomplex_crosscheck, CrosscheckReport, DBicomplex};
pub use complex::{BigradedComplex, Cohomology, TotalDegree};
pub use spectral::{SpectralPage, Verdict};

use crate::calculus::CalculusContext;
use crate::error::Result;
use crate::exterior::MixedElement;

/// `H^q(g^{p,0})`.
pub fn dolbeault_cohomology(ctx: &CalculusContext, p: usize, q: usize) -> Result<Cohomology> {
    Ok(BigradedComplex::assemble(ctx, &MixedElement::zero())?.dolbeault_cohomology(p, q))
}

/// `H^k_Λ`.
pub fn poisson_cohomology(ctx: &CalculusContext, lambda: &MixedElement, k: usize) -> Result<Cohomology> {
    Ok(BigradedComplex::assemble(ctx, lambda)?.poisson_cohomology(k))
}

/// `E_1, …, E_{r_max}`; `r_max` defaults to `n_c + 1`, after which every page equals `E_∞`.
pub fn spectral_pages(ctx: &CalculusContext, lambda: &MixedElement, r_max: Option<usize>) -> Result<Vec<SpectralPage>> {
    let r_max = r_max.unwrap_or(ctx.complex_dim() + 1);
    BigradedComplex::assemble(ctx, lambda)?.spectral_pages(r_max)
}

pub fn degeneration_verdict(ctx: &CalculusContext, lambda: &MixedElement) -> Result<Verdict> {
    BigradedComplex::assemble(ctx, lambda)?.degeneration_verdict()
}

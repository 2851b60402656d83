//! The book chapters, compiled so that every snippet runs as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}

#[doc = include_str!("../../../book/src/calculus.md")]
pub mod calculus {}

#[doc = include_str!("../../../book/src/poisson.md")]
pub mod poisson {}

#[doc = include_str!("../../../book/src/cohomology.md")]
pub mod cohomology {}

#[doc = include_str!("../../../book/src/spectral.md")]
pub mod spectral {}

#[doc = include_str!("../../../book/src/bicomplex.md")]
pub mod bicomplex {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

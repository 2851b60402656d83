//! Lie algebra presentations, complex frames and the filtrations used by the cohomology engine.

mod frame;
mod grading;
mod presentation;

pub use frame::ComplexFrame;
pub use grading::Grading;
pub use presentation::{AlgebraPresentation, BracketRelation, BracketTerms, FrameConvention, StructureConstants, ValidationReport};

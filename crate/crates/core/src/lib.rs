//! Explicit zero-free region constants for Dedekind zeta-functions.
//!
//! The crate evaluates admissible cosine polynomials, the bound tables of the
//! classical region, its constants `(C₁, C₂, C₃, C₄)`, the low-height
//! exceptional-zero constant `R`, and a simulated-annealing search over
//! polynomials.

// `!(x > 0.0)` is used on purpose so that NaN is rejected; oracle literals
// keep every digit they were computed with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod classical;
pub mod error;
pub mod exceptional;
pub mod numeric;
pub mod polysearch;
pub mod reference;
pub mod report;
pub mod reproduce;
pub mod specialfun;
pub mod trigpoly;

pub use classical::{BoundConfig, GammaBoundTable, RegionConstants};
pub use error::{Error, Result};
pub use exceptional::{ExceptionalResult, RegionSplit, SolverConfig};
pub use polysearch::{AnnealConfig, Objective};
pub use trigpoly::{AdmissibilityReport, TrigPoly};

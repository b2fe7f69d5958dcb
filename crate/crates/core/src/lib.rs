//! Quantifier elimination for finite-dimensional C*-algebras in the plain
//! language and its expansions by the minimal-projection and conjugate-pair
//! distance predicates.
//!
//! * [`algebra`]: block-size descriptions and concrete elements.
//! * [`bratteli`]: multiplicity matrices, language filters, enumeration,
//!   realization and DOT export.
//! * [`qe`]: the amalgamation decision, certificates and sweeps.
//! * [`numeric`]: optimizer-backed evaluation of the predicates.

pub mod algebra;
pub mod bratteli;
pub mod error;
pub mod linalg;
pub mod numeric;
pub mod qe;

pub use algebra::{standard_min_projection, BlockSizes, Element, ElementFile, LanguageVariant};
pub use bratteli::{enumerate_embedding_matrices, realize, MultiplicityMatrix};
pub use error::{Error, Result};
pub use qe::{decide_qe, sweep, Certificate, SweepReport, Verdict};

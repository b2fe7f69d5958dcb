//! Unital embeddings between finite-dimensional C*-algebras, encoded as
//! Bratteli multiplicity matrices.

pub mod dot;
pub mod enumerate;
pub mod filter;
pub mod matrix;
pub mod realize;

pub use dot::{to_dot, EdgeStyle};
pub use enumerate::enumerate_embedding_matrices;
pub use filter::{
    filter_for, passes_filter, passes_min_filter, passes_sim_filter, AdmissibilityFilter,
    FilterRegistry, FILTERS,
};
pub use matrix::{MatrixFile, MultiplicityMatrix};
pub use realize::{realize, RealizedEmbedding, Slot};

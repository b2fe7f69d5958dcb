//! Numerical evaluation of the minimal-projection and conjugate-pair distance
//! predicates, used to probe the combinatorial filters on concrete elements.

pub mod optimize;
pub mod predicates;
pub mod preservation;

pub use optimize::{Estimate, OptimizerConfig};
pub use predicates::{
    psi, psi_hermitian_oracle, rank1_distance, rho_min, rho_sim_bounds, SimBounds,
};
pub use preservation::{
    check_preservation, predicate, sample_hermitian, ElementPredicate, PredicateKind,
    PredicateRegistry, PredicateReport, PredicateValue, PREDICATES,
};

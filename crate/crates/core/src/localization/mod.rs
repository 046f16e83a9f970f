//! Localization contributions of fixed-locus graphs and the invariants built
//! from them.

mod contribution;
mod dimension;
mod edge_lemma;
mod invariants;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::gkm::GkmError;
use crate::graph::GraphError;
use crate::schubert::SchubertError;

pub use contribution::{
    contribution, edge_factor, flag_factor, graph_total, insertion_value, inv_euler_class, twist_value, vertex_factor,
    Contribution,
};
pub use dimension::{dimension_check, dimension_check_genus, expected_codimension, DimensionReport};
pub use edge_lemma::{edge_bundle_oracle, line_bundle_weights};
pub use invariants::{
    correspondence_check, gr_invariant, gr_invariant_with, mix_seed, twisted_pp_invariant, twisted_pp_invariant_with,
    u_half, with_reseed, CorrespondenceReport, PreparedSum, TwistedValue, MAX_RESEEDS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("degenerate weights: {0}")]
    DegenerateWeights(String),
    #[error("pole at t = 0")]
    PoleAtZero,
    #[error("operation not defined for this target")]
    WrongTarget,
    #[error("expected {expected} insertions, got {got}")]
    InsertionCount { expected: usize, got: usize },
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("dimension axiom violated: {0}")]
    DimensionViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no generic weights found after {0} attempts")]
    RetriesExhausted(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Target(#[from] GkmError),
    #[error(transparent)]
    Schubert(#[from] SchubertError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

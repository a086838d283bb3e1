//! Discrete belief networks with first-class causal-independence families.
//!
//! A causal-independence family describes how a set of causes jointly drive a
//! single effect: every cause is summarised by a probabilistic "cause summary"
//! over the effect's own state space, and the summaries are merged by a
//! deterministic combination function. This crate provides:
//!
//! * [`model`]: variables, tabular distributions, causal-independence families,
//!   networks and structural validation, plus parameter counting.
//! * [`semantics`]: the exact expansion of a family into a full table, the
//!   nested-decomposition check for a given cause ordering, the interaction
//!   class hierarchy and algebraic checks on combination functions.
//! * [`transform`]: rewriting a family into an explicit chain of two-parent
//!   nodes under a chosen cause ordering and expansion style.
//! * [`inference`]: moralization, triangulation, clique statistics and exact
//!   posteriors by variable elimination.
//! * [`ordering`]: sampling and greedy search over expansion orderings.
//! * [`generators`]: reference networks.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod generators;
pub mod index;
pub mod inference;
pub mod model;
pub mod ordering;
pub mod semantics;
pub mod transform;

pub use error::{Error, Result};
pub use inference::{
    clique_stats, moralize, posterior, triangulate, CliqueReport, Evidence, Heuristic,
    InferenceEngine, Triangulation, UndirectedGraph,
};
pub use model::{
    parameter_count, validate, BinaryTable, CauseLink, CiFamily, Combiner, Family, FunctionTable,
    Network, ParameterModel, TabularCpd, ValidationReport, VarId, Variable, Violation,
};
pub use ordering::{
    greedy_search, sample_orderings, HistogramBucket, OrderingSample, SampleSummary,
};
pub use semantics::{
    check_commutative_associative, check_identity, classify, classify_family,
    decompose_for_ordering, expand_to_cpd, AlgebraProfile, Decomposition, InteractionClass,
    NotDecomposable, StepFunction,
};
pub use transform::{expand_family, transform_network, ExpansionPlan, ExpansionStyle, PlanEntry};

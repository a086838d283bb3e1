//! Meaning of causal-independence families.
//!
//! [`expand_to_cpd`] is the ground truth: it turns a family into the full
//! conditional table by exhaustive enumeration of the cause summaries. The
//! remaining operations characterise the combination function: whether it
//! admits a nested chain of two-argument functions for a cause ordering
//! ([`decompose_for_ordering`]), which interaction class it falls in
//! ([`classify`]), and whether a binary combiner has the required identity and
//! algebraic laws.

mod algebra;
mod classify;
mod decompose;
mod expand;

pub use algebra::{check_commutative_associative, check_identity, AlgebraProfile};
pub use classify::{
    classify, classify_family, family_function, InteractionClass, MAX_CLASSIFY_ARITY,
};
pub(crate) use decompose::is_permutation;
pub use decompose::{decompose_for_ordering, Decomposition, NotDecomposable, StepFunction};
pub use expand::{expand_network, expand_to_cpd};

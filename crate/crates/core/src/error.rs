use alloc::string::String;

/// Errors raised by network operations.
///
/// Structural problems found by [`crate::validate`] are reported as data, not
/// through this type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown variable index {0}")]
    UnknownVariable(usize),

    #[error("variable `{0}` does not carry a causal-independence family")]
    NotCiFamily(String),

    #[error("combination table has arity {found}, family has {expected} arguments")]
    ArityMismatch { expected: usize, found: usize },

    #[error("combiner `{combiner}` is undefined on a {states}-state effect")]
    CombinerDomain { combiner: String, states: usize },

    #[error("combination function of `{effect}` does not decompose in the requested ordering")]
    NotDecomposable { effect: String },

    #[error("ordering for `{effect}` is not a permutation of its {links} links")]
    InvalidOrdering { effect: String, links: usize },

    #[error("variable `{0}` collides with the expansion namespace")]
    NameCollision(String),

    #[error("evidence has zero probability")]
    InconsistentEvidence,

    #[error("state {state} is out of range for `{variable}`")]
    InvalidState { variable: String, state: usize },

    #[error("{0} arguments exceed the enumeration bound of 12")]
    TooManyArguments(usize),

    #[error("parameter counting requires at least one cause and two states")]
    InvalidDimensions,

    #[error("parameter count overflows")]
    Overflow,

    #[error("unsupported model: {0}")]
    Unsupported(&'static str),

    #[error("network has no causal-independence families")]
    NoCiFamilies,

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),
}

pub type Result<T> = core::result::Result<T, Error>;

use alloc::string::String;

/// Errors reported by the algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("transformations must have degree at least 1")]
    EmptyDegree,

    #[error("image {image} out of range for degree {degree}")]
    ImageOutOfRange { image: usize, degree: usize },

    #[error("parse error at column {position}: {reason}")]
    Parse { position: usize, reason: String },

    #[error("{what} is permutational")]
    Permutational { what: String },

    #[error("{what}: n = {n} exceeds the limit {limit}")]
    TooLarge { what: &'static str, n: usize, limit: usize },

    #[error("{what}: n = {n} is below the minimum {min}")]
    TooSmall { what: &'static str, n: usize, min: usize },

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("semigroup was truncated at the closure cap; identity check would be unsound")]
    Truncated,

    #[error("invalid automaton: {0}")]
    InvalidDfa(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("automaton is not reduced")]
    NotReduced,

    #[error("automaton does not recognize a generalized definite language")]
    NotGeneralizedDefinite,

    #[error("states {states:?} do not form a sink")]
    NotASink { states: alloc::vec::Vec<usize> },

    #[error(
        "singleton-sink case: every sink has one state; the construction needs a sink with at \
         least two states (this case relies on an external witness automaton that is not built here)"
    )]
    SingletonSink,

    #[error("transformation alphabet would have {size} symbols, above the limit {limit}")]
    AlphabetTooLarge { size: u128, limit: u128 },

    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

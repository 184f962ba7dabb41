use thiserror::Error;

/// Errors raised by the library. Negative verdicts (not local, not of finite
/// type, ...) are returned as data; these are genuine failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid symbol {0:?}: symbols are nonempty and contain no whitespace")]
    InvalidSymbol(String),

    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(String),

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("unknown state {0:?}")]
    UnknownState(String),

    #[error("duplicate state {0:?}")]
    DuplicateState(String),

    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("automaton is not deterministic: state {state:?} has two edges labeled {symbol:?}")]
    NotDeterministic { state: String, symbol: String },

    #[error("empty shift")]
    EmptyShift,

    #[error("shift is not irreducible")]
    NotIrreducible,

    #[error("automaton is not local")]
    NotLocal,

    #[error("factorization mismatch at ({row}, {col}): expected {expected}, found {found}")]
    Factorization {
        row: usize,
        col: usize,
        expected: String,
        found: String,
    },

    #[error("not a division matrix: {0}")]
    DivisionMatrix(String),

    #[error("invalid bijection: {0}")]
    Bijection(String),

    #[error("alphabets overlap on symbol {0:?}")]
    AlphabetOverlap(String),

    #[error("not bipartite: edge {0:?} violates the partition")]
    NotBipartite(String),

    #[error("block map has no entry for window {0:?}")]
    MissingWindow(String),

    #[error("semigroup exceeds {limit} elements")]
    SemigroupTooLarge { limit: usize },

    #[error("containment violated: {0}")]
    Containment(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("overflow in exact arithmetic")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("simplex {0:?} repeats a vertex")]
    RepeatedVertex(Vec<u32>),

    #[error("cover record {subset:?} is flagged nonempty but its face {face:?} is flagged empty")]
    InconsistentCover { subset: Vec<u32>, face: Vec<u32> },

    #[error("vertex {0} is not in the complex")]
    MissingVertex(u32),

    #[error("unknown catalog entry `{name}`; available: {available}")]
    UnknownCatalog { name: String, available: String },

    #[error("{0:?} is not a simplex of the complex")]
    NotASimplex(Vec<u32>),

    #[error("complex is not a cone with apex {apex}: simplex {missing:?} is missing")]
    NotACone { apex: u32, missing: Vec<u32> },

    #[error("cochain of degree {0} is not a cocycle")]
    NotACocycle(usize),

    #[error("not an element of {group}: {reason}")]
    NotAnElement { group: String, reason: String },

    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("coefficient group {0} is infinite; classes cannot be enumerated")]
    InfiniteGroup(String),

    #[error("enumeration over {0} cochains exceeds the limit of {1}")]
    EnumerationTooLarge(String, u64),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("schema violation at `{path}`: {reason}")]
    Schema { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

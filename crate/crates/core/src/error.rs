use thiserror::Error;

use crate::gens::GenSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced by group construction, coset and expression operations,
/// and the text parsers.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("group has more than {cap} elements (infinite or too large)")]
    CapExceeded { cap: usize },
    #[error("coset types differ: ({left_a}, {right_a}) vs ({left_b}, {right_b})")]
    MismatchedTypes {
        left_a: GenSet,
        right_a: GenSet,
        left_b: GenSet,
        right_b: GenSet,
    },
    #[error("projection target ({target_left}, {target_right}) does not contain ({left}, {right})")]
    NotASuperset {
        left: GenSet,
        right: GenSet,
        target_left: GenSet,
        target_right: GenSet,
    },
    #[error("invalid expression: {0}")]
    InvalidExpression(String),
    #[error("invalid multistep chain: {0}")]
    InvalidChain(String),
    #[error("cannot join expressions: first ends at {end}, second starts at {start}")]
    JunctionMismatch { end: GenSet, start: GenSet },
    #[error("cannot parse {token:?}: {reason}")]
    Parse { token: String, reason: String },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("unknown check {0:?}")]
    UnknownCheckName(String),
}

use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An operation that needs a nonempty word or an in-range position got neither.
    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A constraint was evaluated outside `1..=max`.
    #[error("copy length {x} outside constraint domain 1..={max}")]
    Domain { x: u64, max: u64 },

    /// A classified repeat broke one of the structural facts the taxonomy
    /// relies on. Never expected to fire.
    #[error("taxonomy violation: {0}")]
    TaxonomyViolation(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

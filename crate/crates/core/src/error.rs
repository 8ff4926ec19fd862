//! Error type shared across the crate.

use std::fmt;

/// Everything that can go wrong while validating or processing inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A value failed structural validation (bad shape, bad rational, bad
    /// index, inconsistent dimensions, ...). The message says what and where.
    InvalidInput(String),
    /// An operation that requires a connected graph was given a disconnected
    /// one.
    DisconnectedGraph,
    /// Two functions or clouds that must live on the same underlying graph
    /// do not.
    MismatchedGraphs,
    /// The input is well-formed but outside the supported class (currently:
    /// functions that are constant along a cycle, whose level sets are not
    /// finite unions of points and arcs).
    UnsupportedInput(String),
    /// An operation over a collection was given an empty collection.
    EmptyInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::DisconnectedGraph => write!(f, "graph is not connected"),
            Error::MismatchedGraphs => write!(f, "operands live on different graphs"),
            Error::UnsupportedInput(msg) => write!(f, "unsupported input: {msg}"),
            Error::EmptyInput(msg) => write!(f, "empty input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

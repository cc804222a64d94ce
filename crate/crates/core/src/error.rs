use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point set is empty")]
    EmptySet,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("too large: {what} needs {} candidates, above the cap of {cap}", show_count(*.count))]
    TooLarge { what: String, count: u128, cap: u64 },

    #[error("T must have even cardinality, got |T| = {size}")]
    OddT { size: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("polyhedron is infeasible")]
    Infeasible,

    #[error("coordinate x{} is unbounded in the {} direction", .coordinate + 1, if *.upward { "+" } else { "-" })]
    UnboundedCoordinate { coordinate: usize, upward: bool },

    #[error("separation system is not valid for X: {0}")]
    InvalidSystem(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

fn show_count(count: u128) -> String {
    if count == u128::MAX {
        "at least 2^128".to_string()
    } else {
        count.to_string()
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimMismatch { expected, found })
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument exceeded the exact-arithmetic bound.
    #[error("value {value} out of range (max {max})")]
    Range { value: u64, max: u64 },

    /// Malformed generator text; `pos` is a 0-based byte offset.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A mathematically undefined request (zero module, unit ideal, bad index).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("ideal is not contained in the ambient ideal: generator {0} lies outside")]
    Containment(String),

    /// The request exceeds what enumeration supports.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
}

use thiserror::Error;

use crate::axioms::AxiomReport;

#[derive(Debug, Error)]
pub enum MatroidError {
    #[error("ground set mismatch: {0}")]
    GroundMismatch(String),

    #[error("element {element} is outside the ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("{what} too large: {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: u64,
        cap: u64,
    },

    #[error("set {0} is not independent")]
    NotIndependent(String),

    #[error("set {inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },

    #[error("family is not a matroid: {0}")]
    AxiomViolation(Box<AxiomReport>),

    #[error("invalid construction: {0}")]
    Invalid(String),

    #[error("{0}")]
    Format(String),
}

pub type Result<T, E = MatroidError> = std::result::Result<T, E>;

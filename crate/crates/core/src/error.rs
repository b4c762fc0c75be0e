use thiserror::Error;

use crate::combinat::IntegerPartition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: u64 },

    /// A computed object violated an invariant it must satisfy by
    /// construction, e.g. an orbit partition that is not equitable.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("characteristic polynomial of {context} has a non-integer root factor of degree {residual_degree}")]
    IrrationalSpectrum { context: String, residual_degree: usize },

    #[error("ambiguous eigenvalue assignment for module {module}: candidates {candidates:?}")]
    Ambiguous { module: IntegerPartition, candidates: Vec<String> },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("singular coefficient system at k = {k}")]
    Singular { k: usize },

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

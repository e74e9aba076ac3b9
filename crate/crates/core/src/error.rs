use thiserror::Error;

use crate::driver::LemmaState;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("exact enumeration cap exceeded: {0}")]
    ExactCapExceeded(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("no viable vertex for pattern vertex {vertex} at level {level}")]
    NoViableVertex { vertex: usize, level: usize },
    #[error("no acceptable sample after {attempts} attempts")]
    RetryExhausted { attempts: usize },
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("missing configuration: {0}")]
    ConfigMissing(String),
    #[error("main lemma stalled: {reason}")]
    StallDetected {
        reason: String,
        state: Box<LemmaState>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

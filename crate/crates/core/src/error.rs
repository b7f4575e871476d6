//! Error type shared by all modules.

/// Errors reported by the toolkit.
///
/// `Domain` covers violated numeric preconditions (non-positive resistance,
/// thresholds outside their feasibility interval, infeasible grids, ...).
/// `Config` covers structural problems such as a detector that is missing
/// the threshold set it needs. Messages always name the offending
/// parameter so front ends can surface it directly.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors reported by the library.
///
/// `Validation` covers semantic problems in arenas, profiles, and input
/// documents (the message names the offending element). `Parse` covers
/// document syntax. `Capacity` signals that an enumeration or table would
/// exceed a configured cap; callers can raise the relevant limit if they
/// really want the blow-up.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cost domain error: {0}")]
    CostDomain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

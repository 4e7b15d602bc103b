use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size limit exceeded: {what} = {value} is above the cap {cap}")]
    SizeLimit {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("truncation error: block of size {block} needs a coefficient beyond order {order}")]
    Truncation { block: usize, order: usize },
    #[error("inexact result: {0}")]
    Exactness(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

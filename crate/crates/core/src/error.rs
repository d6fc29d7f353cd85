use thiserror::Error;

/// Errors raised by the library.
///
/// Arithmetic never fails: products that vanish by the algebra's relations
/// produce the zero element. Errors are reserved for malformed input,
/// arguments outside an operation's domain, and explicit size caps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("size limit exceeded: {what} needs {requested}, cap is {cap}")]
    SizeLimit {
        what: &'static str,
        requested: u128,
        cap: u128,
    },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn size(what: &'static str, requested: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::SizeLimit {
            what,
            requested: requested.into(),
            cap: cap.into(),
        }
    }

    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::SizeLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

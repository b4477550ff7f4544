use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} has size {size}, which exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("ideals belong to different rings")]
    MismatchedRing,

    #[error("an independent family needs at least one member")]
    EmptyFamily,

    #[error("family member {0} is a trivial ideal")]
    TrivialMember(usize),

    #[error("the ring has no nontrivial ideals")]
    NoNontrivialIdeals,

    #[error("ring `{0}` is not reduced")]
    NotReduced(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed index sets: {0}")]
    MalformedSubsets(String),

    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

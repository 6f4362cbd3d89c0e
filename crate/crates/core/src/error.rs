use thiserror::Error;

/// Everything that can go wrong while building, checking or transforming a specification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: {{{left}}} vs {{{right}}}")]
    AlphabetMismatch { left: String, right: String },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("duplicate state `{0}`")]
    DuplicateState(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("unknown action `{0}`")]
    UnknownAction(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("must-transition {state} -{action}-> {target} has no matching may-transition")]
    MustNotSupported {
        state: String,
        action: String,
        target: String,
    },

    #[error("not an MTS: {0}")]
    NotAnMts(String),

    #[error("not in normal form: {0}")]
    NotNormalForm(String),

    #[error("size guard: {what} has {size} elements, limit is {limit}")]
    SizeGuard {
        what: String,
        size: usize,
        limit: usize,
    },

    #[error("enumeration bound too large: {0}")]
    BoundTooLarge(String),

    #[error("{line}:{col}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        line: usize,
        col: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn guard(what: impl Into<String>, size: usize, limit: usize) -> Self {
        Error::SizeGuard {
            what: what.into(),
            size,
            limit,
        }
    }
}

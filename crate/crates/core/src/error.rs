use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The quantity has no decision procedure for this input (e.g. cd of a
    /// non-monomial ideal).
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    /// `M = aM`: the module is killed by the ideal and cd is −∞.
    #[error("degenerate module: M = aM (a + Ann M is the unit ideal)")]
    Degenerate,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("sequence has length {found}, expected cd = {expected}")]
    WrongLength { expected: usize, found: usize },

    #[error("sequence element {index} is not in the ideal")]
    NotInIdeal { index: usize },

    #[error("operands live in different contexts")]
    ContextMismatch,

    #[error("determinant of the transition matrix is zero")]
    Singular,

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    /// Two independent computations of the same fact disagree.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;

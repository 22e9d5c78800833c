use thiserror::Error;

/// Errors raised by the word, measure, coding and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyckError {
    #[error("alphabet size m = {m} is not allowed (need m >= 2, or the degenerate m = 1 flag)")]
    InvalidAlphabet { m: u32 },

    #[error("malformed token `{token}` at byte {offset}; expected a<i> or b<i>")]
    MalformedToken { token: String, offset: usize },

    #[error("bracket index {index} at byte {offset} is outside [1, {m}]")]
    IndexOutOfRange { index: u64, m: u32, offset: usize },

    #[error("word `{0}` is not in the Dyck language (it reduces to 0)")]
    NotInLanguage(String),

    #[error("word `{0}` is not balanced (it does not reduce to the identity)")]
    NotBalanced(String),

    #[error("enumeration budget exceeded: {what}")]
    BudgetExceeded { what: String },

    #[error("window [{lo}, {hi}] does not contain coordinate 0")]
    WindowExcludesOrigin { lo: i64, hi: i64 },

    #[error("coordinate {index} is outside the window [{lo}, {hi}]")]
    OutOfWindow { index: i64, lo: i64, hi: i64 },

    #[error("a bracket match lies left of the window; more left context is needed")]
    NeedMoreLeft,

    #[error("a bracket match lies right of the window; more right context is needed")]
    NeedMoreRight,

    #[error("the index window does not cover the type coordinate {0}")]
    IndexCoverage(i64),

    #[error("window of length {expected} expected, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("window content is not a Dyck word: {0}")]
    InvalidWindow(String),

    #[error("holonomy domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("holonomy words are not equivalent or differ in length: {0}")]
    InvalidHolonomy(String),

    #[error("collapsed letter does not belong to the {0} alphabet")]
    WrongCollapsedAlphabet(&'static str),

    #[error("no resolved samples for the requested event")]
    InsufficientSamples,

    #[error(
        "measure `{0}` has no exact cylinder formula; use the `sample` command to estimate it"
    )]
    SamplingOnly(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, DyckError>;

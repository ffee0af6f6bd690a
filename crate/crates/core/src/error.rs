use thiserror::Error;

/// Errors produced by the core library.
///
/// Parse problems and precondition violations are kept apart so callers
/// (the CLI in particular) can map them onto different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    Empty,
    #[error("invalid token {0:?}")]
    InvalidToken(String),
    #[error("letters must be positive, found {0}")]
    NonPositive(String),
    #[error("letter {0} appears more than once")]
    Duplicate(u32),
    #[error("value {missing} is missing from a permutation of length {len}")]
    Gap { missing: u32, len: usize },
    #[error("compact digit form is only accepted for length at most 9; use delimiters")]
    CompactTooLong,
    #[error("letter {0} is too large")]
    LetterTooLarge(u64),

    #[error("value {value} is out of range for a permutation of length {len}")]
    ValueOutOfRange { value: u32, len: usize },
    #[error("operation requires length at least {min}, got {len}")]
    TooShort { min: usize, len: usize },
    #[error("interval of rank {rank} is too small; rank at least {min} required")]
    RankTooSmall { rank: usize, min: usize },
    #[error("{pattern} is not contained in {host}")]
    NotContained { pattern: String, host: String },
    #[error("descent counts differ: {bottom} has {bottom_descents}, {top} has {top_descents}")]
    DescentMismatch {
        bottom: String,
        bottom_descents: usize,
        top: String,
        top_descents: usize,
    },
    #[error("{perm} must have exactly {expected} descent(s), it has {found}")]
    WrongDescentCount {
        perm: String,
        expected: usize,
        found: usize,
    },
    #[error("word {0} does not satisfy the rightmost-occurrence conditions")]
    NotInAhat(String),
    #[error("{what} of length {len} exceeds the configured limit {limit}")]
    SizeLimit {
        what: &'static str,
        len: usize,
        limit: usize,
    },
    #[error("host of length {0} is too long for a zero-set mask")]
    HostTooLong(usize),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

impl Error {
    /// True for malformed input, as opposed to well-formed input that
    /// violates an operation's precondition.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Empty
                | Error::InvalidToken(_)
                | Error::NonPositive(_)
                | Error::Duplicate(_)
                | Error::Gap { .. }
                | Error::CompactTooLong
                | Error::LetterTooLarge(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

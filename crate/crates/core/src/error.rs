use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {0} is not rational")]
    NotRational(String),
    #[error("surd radicands differ: sqrt({0}) vs sqrt({1})")]
    RadicandMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite complex component")]
    NonFinite,
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error("complex power undefined: {0}")]
    BranchUndefined(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("expansion cannot converge: |target - X_{step}| exceeds the remaining tail")]
    NonConvergent { step: usize },
    #[error("comparison undecided at step {step} after {bits} bits")]
    PrecisionExhausted { step: usize, bits: u32 },
    #[error("regrouping needs at least {needed} terms, expansion has {available}")]
    InsufficientTerms { needed: usize, available: usize },
    #[error("mass system is empty")]
    EmptySystem,
    #[error("no cluster with positive mass on the target side of {0}")]
    NoBracketCluster(String),
    #[error("invalid indices n={n}, m={m}: {reason}")]
    InvalidIndices { n: i64, m: i64, reason: &'static str },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: expected index {expected}, found {found}")]
    NonConsecutiveIndex { line: usize, expected: i64, found: i64 },
    #[error("family `{0}` has no generator to verify against")]
    UnknownFamily(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("{0} is outside [0, 1]")]
    Range(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of the mathematics (as opposed to malformed input).
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::NotRational(_)
                | Error::DivisionByZero
                | Error::NonFinite
                | Error::DegenerateParams(_)
                | Error::BranchUndefined(_)
                | Error::NonConvergent { .. }
                | Error::PrecisionExhausted { .. }
                | Error::InsufficientTerms { .. }
                | Error::EmptySystem
                | Error::NoBracketCluster(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

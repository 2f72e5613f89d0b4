use num_bigint::BigUint;

/// Errors produced by poset construction, enumeration guards, and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("relations contain a cycle through `{0}`")]
    CycleDetected(String),

    #[error("element index {index} out of range for a poset with {n} elements")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("size {n} exceeds the supported maximum of {max}")]
    SizeTooLarge { n: usize, max: usize },

    #[error("poset has {count} maximal chains, more than the cap of {cap}")]
    TooManyChains { count: BigUint, cap: u64 },

    #[error("poset has more than {cap} maximal antichains")]
    TooManyAntichains { cap: usize },

    #[error("element `{0}` is not minimal")]
    NotMinimal(String),

    #[error("element `{0}` is isolated (both minimal and maximal)")]
    IsIsolated(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

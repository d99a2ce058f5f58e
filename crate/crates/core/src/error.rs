use std::fmt;

use thiserror::Error;

/// Resource guards that bound exponential work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guard {
    /// Materializing all `2^d` members of a subspace.
    Enumeration,
    /// The `2^r` linear-system sweep of the coset method.
    Rank,
    /// The `2^n`-entry spectrum table.
    Spectrum,
    /// The naive `2^n` oracle scan.
    Oracle,
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::Enumeration => f.write_str("enumeration guard"),
            Guard::Rank => f.write_str("rank guard (raise with --max-rank, or use --method spectrum)"),
            Guard::Spectrum => f.write_str("spectrum guard (raise with --max-spectrum-n)"),
            Guard::Oracle => f.write_str("oracle guard (n <= 20)"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vector width {0} is outside 1..=64")]
    WidthOutOfRange(usize),
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: u32, found: u32 },
    #[error("index {index} out of range for width {width}")]
    IndexOutOfRange { index: u64, width: u32 },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid binary string {0:?}")]
    InvalidBits(String),
    #[error("the set is empty")]
    EmptySet,
    #[error("duplicate member {0} (use multiset input to count repeats)")]
    DuplicateMember(String),
    #[error("the zero vector does not define a balance test")]
    ZeroVector,
    #[error("the set must contain the zero vector")]
    MissingZero,
    #[error("{guard} exceeded: {value} > {limit}")]
    GuardExceeded { guard: Guard, value: u64, limit: u64 },
    #[error("transform length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("total multiplicity exceeds 2^62")]
    MultiplicityOverflow,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

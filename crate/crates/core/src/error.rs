use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// A structural hypothesis that an input failed to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    NotMonotone,
    NotAntiMonge,
    NotNormalForm,
    UnequalBlocks,
    /// The pair fails `p_rr > p_rs` or `p_ss > p_rs`.
    NotHeavyPair {
        r: usize,
        s: usize,
    },
    NoVeryBadEnsemble,
    PatternNotCertified,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::NotMonotone => f.write_str("matrix is not monotone"),
            Hypothesis::NotAntiMonge => f.write_str("matrix is not anti-Monge"),
            Hypothesis::NotNormalForm => f.write_str("multi-cut block sizes are not in non-decreasing order"),
            Hypothesis::UnequalBlocks => f.write_str("multi-cut blocks are not all of equal size"),
            Hypothesis::NotHeavyPair { r, s } => {
                write!(f, "pair ({}, {}) violates p_rr > p_rs and p_ss > p_rs", r + 1, s + 1)
            }
            Hypothesis::NoVeryBadEnsemble => f.write_str("pattern has no pair with p_rr > p_rs and p_ss > p_rs"),
            Hypothesis::PatternNotCertified => f.write_str(
                "pattern is not certified free of bad ensembles; \
                 the result would only be optimal among separable assignments",
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    /// A matrix with zero rows.
    Empty,
    NotSquare {
        row: usize,
        len: usize,
        n: usize,
    },
    NotSymmetric {
        row: usize,
        col: usize,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    InvalidPermutation(String),
    /// Input violates a documented precondition.
    Rejected(String),
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    Hypothesis(Hypothesis),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Empty => f.write_str("matrix must have at least one row"),
            Error::NotSquare { row, len, n } => {
                write!(f, "row {} has {} entries, expected {}", row + 1, len, n)
            }
            Error::NotSymmetric { row, col } => write!(f, "matrix is not symmetric at ({}, {})", row + 1, col + 1),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidPermutation(msg) => write!(f, "invalid permutation: {msg}"),
            Error::Rejected(msg) => write!(f, "rejected input: {msg}"),
            Error::TooLarge { what, size, cap } => {
                write!(f, "{what} {size} exceeds the cap of {cap}")
            }
            Error::Hypothesis(h) => write!(f, "hypothesis failed: {h}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<Hypothesis> for Error {
    fn from(h: Hypothesis) -> Self {
        Error::Hypothesis(h)
    }
}

macro_rules! reject {
    ($($arg:tt)*) => {
        return Err($crate::Error::Rejected(alloc::format!($($arg)*)))
    };
}
pub(crate) use reject;

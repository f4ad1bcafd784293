//! Crate-wide error type.

use core::fmt;

/// Errors shared by the sequence, tree, stats, and mining layers.
#[derive(Debug, Clone, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    /// An operation that needs at least one element received none.
    EmptyInput,
    /// A numeric sample was NaN or infinite; the index is the offending
    /// position in the input slice.
    InvalidValue { index: usize },
    /// More distinct symbols than an alphabet can hold (256).
    AlphabetOverflow { distinct: usize },
    /// A requested bin count cannot produce a valid alphabet.
    InvalidBinCount { bins: usize },
    /// Tree constraints are inconsistent with the sequence they are applied
    /// to (level cap of zero, cap longer than the sequence, zero support).
    InvalidConstraints(&'static str),
    /// Pattern arguments must be non-empty and within the level cap.
    InvalidPattern(&'static str),
    /// A periodic-segment query with an inverted or too-short span.
    InvalidSegment(&'static str),
    /// Statistics arguments out of range (non-positive mean, bad MAD scale).
    InvalidStats(&'static str),
    /// A mining configuration field is out of its documented range.
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInput => write!(f, "empty input"),
            Error::InvalidValue { index } => {
                write!(f, "non-finite value at index {index}")
            }
            Error::AlphabetOverflow { distinct } => {
                write!(f, "{distinct} distinct symbols exceed the 256-symbol alphabet limit")
            }
            Error::InvalidBinCount { bins } => write!(f, "invalid bin count {bins}"),
            Error::InvalidConstraints(why) => write!(f, "invalid tree constraints: {why}"),
            Error::InvalidPattern(why) => write!(f, "invalid pattern: {why}"),
            Error::InvalidSegment(why) => write!(f, "invalid segment: {why}"),
            Error::InvalidStats(why) => write!(f, "invalid statistics input: {why}"),
            Error::InvalidConfig(why) => write!(f, "invalid mining config: {why}"),
        }
    }
}

impl core::error::Error for Error {}

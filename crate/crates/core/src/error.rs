use thiserror::Error;

/// Errors raised while building tables, masks and reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count {n} outside supported range {min}..={max}")]
    VariableCount { n: u32, min: u32, max: u32 },

    #[error("length mismatch: expected {expected} {unit}, got {actual}")]
    Length {
        expected: usize,
        actual: usize,
        unit: &'static str,
    },

    #[error("value {value} at index {index} is not a bit (expected 0 or 1)")]
    NotABit { index: usize, value: u8 },

    #[error("bits set above position 2^{n} in a table of {n} variables")]
    UnusedBitsSet { n: u32 },

    #[error("degree {k} outside 0..={n}")]
    DegreeOutOfRange { n: u32, k: u32 },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("workload of {words} words holds no complete function of {n} variables")]
    InsufficientWords { words: usize, n: u32 },

    #[error("a report needs at least one row")]
    EmptyReport,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(n: u32, min: u32, max: u32) -> Result<()> {
    if n < min || n > max {
        return Err(Error::VariableCount { n, min, max });
    }
    Ok(())
}

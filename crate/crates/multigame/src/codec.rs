//! Positional base-q encoding of recent outcome symbols into table indices.
//!
//! A lookup strategy keeps one entry per possible window of the last `m`
//! outcome symbols. With `q` choices per round there are `q^m` windows, and
//! each maps to a unique index by reading its symbols as the digits of a
//! base-`q` numeral. The oldest symbol is the most significant digit, so the
//! binary window `[0, 1, 0]` reads as the numeral `010` and encodes to 2,
//! and the ternary window `[2, 2, 2]` encodes to 26.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Choice;

/// Largest strategy table a configuration may request: `q^m` entries at most.
///
/// Enforced when plans are validated, so oversized tables are rejected
/// before play ever starts.
pub const MAX_TABLE_LEN: u64 = i64::MAX as u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: Choice, base: u32 },
    #[error("table of {base}^{memory} entries does not fit in 64 bits")]
    TableTooLarge { base: u32, memory: usize },
    #[error("index {index} out of range for table of length {len}")]
    IndexOutOfRange { index: u64, len: u64 },
    #[error("base must be at least 2, got {base}")]
    BaseTooSmall { base: u32 },
    #[error("memory length must be at least 1")]
    ZeroMemory,
}

/// The last `m` outcome symbols of a game, oldest first, as base-`q` digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryWindow {
    digits: Vec<Choice>,
    base: u32,
}

impl HistoryWindow {
    /// Build a window, checking that every digit is in `[0, base)`.
    pub fn new(digits: Vec<Choice>, base: u32) -> Result<Self, CodecError> {
        if base < 2 {
            return Err(CodecError::BaseTooSmall { base });
        }
        if digits.is_empty() {
            return Err(CodecError::ZeroMemory);
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= base) {
            return Err(CodecError::DigitOutOfRange { digit, base });
        }
        Ok(HistoryWindow { digits, base })
    }

    /// The digits, oldest symbol first.
    pub fn digits(&self) -> &[Choice] {
        &self.digits
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// The memory length `m`.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

/// Number of table entries needed for memory `m` in a `q`-choice game: `q^m`.
///
/// Fails instead of silently wrapping when `q^m` does not fit in a `u64`.
pub fn table_length(q: u32, m: usize) -> Result<u64, CodecError> {
    if q < 2 {
        return Err(CodecError::BaseTooSmall { base: q });
    }
    if m == 0 {
        return Err(CodecError::ZeroMemory);
    }
    let exp = u32::try_from(m).map_err(|_| CodecError::TableTooLarge { base: q, memory: m })?;
    (q as u64)
        .checked_pow(exp)
        .ok_or(CodecError::TableTooLarge { base: q, memory: m })
}

/// Encode a window into its table index in `[0, q^m)`.
///
/// The oldest symbol is the most significant digit and the most recent the
/// least significant, so the index is `sum(digits[i] * q^(m-1-i))`.
pub fn encode_history(window: &HistoryWindow) -> Result<u64, CodecError> {
    // Guarantees the Horner accumulation below stays within u64.
    table_length(window.base, window.digits.len())?;
    let q = window.base as u64;
    Ok(window
        .digits
        .iter()
        .fold(0u64, |acc, &d| acc * q + d as u64))
}

/// Inverse of [`encode_history`]: recover the window for a table index.
pub fn decode_index(index: u64, q: u32, m: usize) -> Result<HistoryWindow, CodecError> {
    let len = table_length(q, m)?;
    if index >= len {
        return Err(CodecError::IndexOutOfRange { index, len });
    }
    let mut digits = vec![0 as Choice; m];
    let mut rest = index;
    for slot in digits.iter_mut().rev() {
        *slot = (rest % q as u64) as Choice;
        rest /= q as u64;
    }
    HistoryWindow::new(digits, q)
}

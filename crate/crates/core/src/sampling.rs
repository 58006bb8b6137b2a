//! Cuts a token stream into adjacent, non-overlapping windows of exactly W
//! tokens. The trailing remainder shorter than W is discarded so every
//! sample stays statistically comparable.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SamplingError {
    ZeroWindow,
}

impl fmt::Display for SamplingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroWindow => write!(f, "window size must be at least 1"),
        }
    }
}

impl core::error::Error for SamplingError {}

/// A contiguous window of a token stream. `index` is the 0-based position of
/// the window within its stream; `window` is the nominal W it was cut with
/// (equal to `tokens.len()` unless the raw-token convention shrank it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtext {
    pub tokens: Vec<String>,
    pub index: usize,
    pub window: usize,
}

/// Splits `tokens` into `floor(len / window)` disjoint subtexts; the k-th
/// covers positions `[k*window, (k+1)*window)`. A stream shorter than the
/// window yields an empty list with a warning rather than an error, so
/// corpus-wide sweeps do not abort on short books.
pub fn split_subtexts(tokens: &[String], window: usize) -> Result<Vec<Subtext>, SamplingError> {
    if window == 0 {
        return Err(SamplingError::ZeroWindow);
    }
    if tokens.len() < window {
        log::warn!(
            "stream of {} tokens is shorter than window {window}; no subtexts produced",
            tokens.len()
        );
        return Ok(Vec::new());
    }
    Ok(tokens
        .chunks_exact(window)
        .enumerate()
        .map(|(index, chunk)| Subtext { tokens: chunk.to_vec(), index, window })
        .collect())
}

/// How a sweep names its window sizes: an absolute token count, or a
/// fraction of each book's own length (full text, thirds, quarters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowSpec {
    Fixed(usize),
    /// Denominator of the per-book split: 1 = full text, 3 = thirds,
    /// 4 = quarters.
    Fraction(u8),
}

impl WindowSpec {
    pub const FULL: WindowSpec = WindowSpec::Fraction(1);
    pub const THIRDS: WindowSpec = WindowSpec::Fraction(3);
    pub const QUARTERS: WindowSpec = WindowSpec::Fraction(4);

    /// Effective W for a stream of `stream_len` tokens.
    pub fn resolve(&self, stream_len: usize) -> usize {
        match self {
            WindowSpec::Fixed(w) => *w,
            WindowSpec::Fraction(k) => stream_len / usize::from(*k),
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "full" => Some(Self::FULL),
            "thirds" => Some(Self::THIRDS),
            "quarters" => Some(Self::QUARTERS),
            other => other.parse::<usize>().ok().filter(|w| *w > 0).map(WindowSpec::Fixed),
        }
    }

    pub fn label(&self) -> String {
        use alloc::string::ToString;
        match self {
            WindowSpec::Fixed(w) => w.to_string(),
            WindowSpec::Fraction(1) => "full".to_string(),
            WindowSpec::Fraction(3) => "thirds".to_string(),
            WindowSpec::Fraction(4) => "quarters".to_string(),
            WindowSpec::Fraction(k) => alloc::format!("1/{k}"),
        }
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self, WindowSpec::Fixed(_))
    }

    // Sort key: fixed windows ascending, then quarters < thirds < full
    // (ascending effective sample length, matching the report row order).
    fn sort_key(&self) -> (u8, i64) {
        match self {
            WindowSpec::Fixed(w) => (0, *w as i64),
            WindowSpec::Fraction(k) => (1, -i64::from(*k)),
        }
    }
}

impl PartialOrd for WindowSpec {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WindowSpec {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for WindowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

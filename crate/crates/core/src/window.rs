//! Finite coordinate windows of bi-infinite sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{parse_word, AlphabetParams, Symbol, Word};
use crate::error::{DyckError, Result};
use crate::monoid::is_in_language;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerId {
    Tilde,
    Plus,
    Minus,
    Manual,
}

impl fmt::Display for SamplerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplerId::Tilde => "tilde",
            SamplerId::Plus => "plus",
            SamplerId::Minus => "minus",
            SamplerId::Manual => "manual",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub sampler: SamplerId,
    pub seed: Option<u64>,
    /// Position of the sample in its stream.
    pub sample: Option<u64>,
    /// Some letter needed more left context than the extension cap allowed.
    pub truncated: bool,
}

impl Provenance {
    pub fn manual() -> Self {
        Self {
            sampler: SamplerId::Manual,
            seed: None,
            sample: None,
            truncated: false,
        }
    }
}

/// Letters `x_lo … x_hi` of a point of the Dyck shift.
///
/// Construction checks that the window word is in the language; every
/// sub-block then is too, since a zero factor makes the whole word zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointWindow {
    lo: i64,
    symbols: Vec<Symbol>,
    provenance: Provenance,
}

impl PointWindow {
    pub fn new(lo: i64, symbols: Vec<Symbol>, provenance: Provenance) -> Result<Self> {
        if symbols.is_empty() {
            return Err(DyckError::InvalidArgument("empty window".into()));
        }
        let word = Word::new(symbols);
        if !is_in_language(&word) {
            return Err(DyckError::InvalidWindow(word.to_string()));
        }
        Ok(Self {
            lo,
            symbols: word.into_symbols(),
            provenance,
        })
    }

    /// Window starting at `lo` holding `w`, with manual provenance.
    pub fn from_word(lo: i64, w: &Word) -> Result<Self> {
        Self::new(lo, w.symbols().to_vec(), Provenance::manual())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.symbols.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_truncated(&self) -> bool {
        self.provenance.truncated
    }

    /// `x_i`.
    pub fn at(&self, i: i64) -> Option<Symbol> {
        self.contains(i)
            .then(|| self.symbols[(i - self.lo) as usize])
    }

    /// The letters on `[start, start + len)`, if inside the window.
    pub fn block(&self, start: i64, len: usize) -> Option<&[Symbol]> {
        if len == 0 {
            return Some(&[]);
        }
        let end = start + len as i64 - 1;
        if !self.contains(start) || !self.contains(end) {
            return None;
        }
        let s = (start - self.lo) as usize;
        Some(&self.symbols[s..s + len])
    }

    pub fn word(&self) -> Word {
        Word::from(self.symbols.as_slice())
    }

    /// One dump line: `lo hi <word-text>`, with ` T` appended when truncated.
    pub fn dump_line(&self) -> String {
        let mut s = format!("{} {} {}", self.lo, self.hi(), self.word());
        if self.is_truncated() {
            s.push_str(" T");
        }
        s
    }

    /// Parses a dump line back. The provenance records only the truncation
    /// flag.
    pub fn parse_dump_line(line: &str, params: &AlphabetParams) -> Result<Self> {
        let mut parts = line.split_whitespace();
        let bad = || DyckError::InvalidArgument(format!("bad dump line `{line}`"));
        let lo: i64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let hi: i64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let rest: Vec<&str> = parts.collect();
        let (tokens, truncated) = match rest.split_last() {
            Some((&"T", head)) => (head, true),
            _ => (rest.as_slice(), false),
        };
        let word = parse_word(&tokens.join(" "), params)?;
        if hi < lo || word.len() as i64 != hi - lo + 1 {
            return Err(DyckError::LengthMismatch {
                expected: (hi - lo + 1).max(0) as usize,
                got: word.len(),
            });
        }
        let provenance = Provenance {
            truncated,
            ..Provenance::manual()
        };
        Self::new(lo, word.into_symbols(), provenance)
    }

    /// Same window, replacing `[start, start + w.len())` by `w`; the result is
    /// checked for validity.
    pub(crate) fn with_block(&self, start: i64, w: &[Symbol]) -> Result<Self> {
        let mut symbols = self.symbols.clone();
        let s = (start - self.lo) as usize;
        symbols[s..s + w.len()].copy_from_slice(w);
        Self::new(self.lo, symbols, self.provenance)
    }
}

/// Bits `z_lo … z_hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinaryWindow {
    lo: i64,
    bits: Vec<u8>,
}

impl BinaryWindow {
    pub fn new(lo: i64, bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(DyckError::InvalidArgument("bits must be 0 or 1".into()));
        }
        Ok(Self { lo, bits })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.bits.len() as i64 - 1
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi()
    }

    pub fn at(&self, i: i64) -> Option<u8> {
        self.contains(i).then(|| self.bits[(i - self.lo) as usize])
    }

    /// Prepends `left` so the window starts at `lo - left.len()`.
    pub fn extend_left(&mut self, left: &[u8]) {
        let mut bits = Vec::with_capacity(left.len() + self.bits.len());
        bits.extend_from_slice(left);
        bits.extend_from_slice(&self.bits);
        self.bits = bits;
        self.lo -= left.len() as i64;
    }
}

/// Types `a_lo … a_hi`, each in `[1, m]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexWindow {
    lo: i64,
    indices: Vec<u32>,
}

impl IndexWindow {
    pub fn new(lo: i64, indices: Vec<u32>, params: &AlphabetParams) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > params.m()) {
            return Err(DyckError::IndexOutOfRange {
                index: u64::from(bad),
                m: params.m(),
                offset: 0,
            });
        }
        Ok(Self { lo, indices })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.indices.len() as i64 - 1
    }

    pub fn at(&self, i: i64) -> Option<u32> {
        (self.lo <= i && i <= self.hi()).then(|| self.indices[(i - self.lo) as usize])
    }
}

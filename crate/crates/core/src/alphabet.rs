//! Letters `α_i`, `β_i` over a run-time number of bracket types, and finite
//! words with the `a<i>` / `b<i>` text format.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{DyckError, Result};

/// Number of bracket types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlphabetParams {
    m: u32,
}

impl AlphabetParams {
    /// Bracket alphabet with `m >= 2` types.
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(DyckError::InvalidAlphabet { m });
        }
        Ok(Self { m })
    }

    /// Like [`AlphabetParams::new`] but also admits `m = 1`, where the shift
    /// degenerates to the full 2-shift.
    pub fn with_degenerate(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(DyckError::InvalidAlphabet { m });
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Size of the alphabet, `2m`.
    pub fn letters(&self) -> usize {
        2 * self.m as usize
    }

    /// All letters in enumeration order `α1 < … < αm < β1 < … < βm`.
    pub fn alphabet(&self) -> Vec<Symbol> {
        (1..=self.m)
            .map(Symbol::alpha)
            .chain((1..=self.m).map(Symbol::beta))
            .collect()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (1..=self.m).contains(&s.index)
    }
}

impl Default for AlphabetParams {
    fn default() -> Self {
        Self { m: 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Alpha,
    Beta,
}

/// One letter. The derived order is the declared enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    pub kind: Kind,
    pub index: u32,
}

impl Symbol {
    pub const fn alpha(index: u32) -> Self {
        Self {
            kind: Kind::Alpha,
            index,
        }
    }

    pub const fn beta(index: u32) -> Self {
        Self {
            kind: Kind::Beta,
            index,
        }
    }

    pub fn is_alpha(self) -> bool {
        self.kind == Kind::Alpha
    }

    pub fn is_beta(self) -> bool {
        self.kind == Kind::Beta
    }

    /// The letter of the opposite kind with the same index.
    pub fn swapped(self) -> Self {
        match self.kind {
            Kind::Alpha => Self::beta(self.index),
            Kind::Beta => Self::alpha(self.index),
        }
    }

    /// Height increment: `+1` for an opening letter, `-1` for a closing one.
    pub fn step(self) -> i64 {
        match self.kind {
            Kind::Alpha => 1,
            Kind::Beta => -1,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Alpha => write!(f, "a{}", self.index),
            Kind::Beta => write!(f, "b{}", self.index),
        }
    }
}

/// A finite word. Displays as space-separated tokens; the empty word
/// displays as the empty string.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Self(symbols)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    /// `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Largest bracket index used, 0 for the empty word.
    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|s| s.index).max().unwrap_or(0)
    }
}

impl Index<usize> for Word {
    type Output = Symbol;

    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.0)
    }
}

pub(crate) fn write_symbols(f: &mut fmt::Formatter<'_>, symbols: &[Symbol]) -> fmt::Result {
    for (i, s) in symbols.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

/// Parses whitespace-separated `a<i>` / `b<i>` tokens, `1 <= i <= m`.
///
/// Indices follow `[1-9][0-9]*`; leading zeros are rejected so that every
/// word has exactly one spelling.
pub fn parse_word(text: &str, params: &AlphabetParams) -> Result<Word> {
    let mut symbols = Vec::new();
    for (offset, token) in tokens(text) {
        symbols.push(parse_token(token, offset, params)?);
    }
    Ok(Word(symbols))
}

/// Non-empty whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

fn parse_token(token: &str, offset: usize, params: &AlphabetParams) -> Result<Symbol> {
    let malformed = || DyckError::MalformedToken {
        token: token.to_string(),
        offset,
    };
    let mut chars = token.chars();
    let kind = match chars.next() {
        Some('a') => Kind::Alpha,
        Some('b') => Kind::Beta,
        _ => return Err(malformed()),
    };
    let digits = chars.as_str();
    let well_formed = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && !digits.starts_with('0');
    if !well_formed {
        return Err(malformed());
    }
    let index: u64 = digits.parse().map_err(|_| malformed())?;
    if index > u64::from(params.m()) {
        return Err(DyckError::IndexOutOfRange {
            index,
            m: params.m(),
            offset,
        });
    }
    Ok(Symbol {
        kind,
        index: index as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> AlphabetParams {
        AlphabetParams::new(2).unwrap()
    }

    #[test]
    fn parses_simple_words() {
        let w = parse_word("a1 b1", &m2()).unwrap();
        assert_eq!(w.symbols(), &[Symbol::alpha(1), Symbol::beta(1)]);
        assert!(parse_word("", &m2()).unwrap().is_empty());
        assert!(parse_word("  \t ", &m2()).unwrap().is_empty());
    }

    #[test]
    fn rejects_out_of_range_index() {
        let err = parse_word("b3", &m2()).unwrap_err();
        assert_eq!(
            err,
            DyckError::IndexOutOfRange {
                index: 3,
                m: 2,
                offset: 0
            }
        );
    }

    #[test]
    fn rejects_malformed_tokens() {
        for bad in ["a0", "a01", "c1", "a", "b-1", "A1", "a1b1"] {
            assert!(
                matches!(
                    parse_word(bad, &m2()),
                    Err(DyckError::MalformedToken { .. })
                ),
                "{bad}"
            );
        }
        match parse_word("a1  x2", &m2()) {
            Err(DyckError::MalformedToken { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn large_m_round_trips() {
        let p = AlphabetParams::new(12).unwrap();
        let w = parse_word("a12 b10 a1", &p).unwrap();
        assert_eq!(w.to_string(), "a12 b10 a1");
    }

    #[test]
    fn alphabet_order() {
        let letters = m2().alphabet();
        let mut sorted = letters.clone();
        sorted.sort();
        assert_eq!(letters, sorted);
        assert_eq!(letters[0], Symbol::alpha(1));
        assert_eq!(letters[3], Symbol::beta(2));
    }

    #[test]
    fn degenerate_alphabet_needs_flag() {
        assert!(AlphabetParams::new(1).is_err());
        assert_eq!(AlphabetParams::with_degenerate(1).unwrap().m(), 1);
        assert!(AlphabetParams::with_degenerate(0).is_err());
    }
}

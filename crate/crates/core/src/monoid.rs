//! Reduction in the Dyck monoid: `α_j β_j ≡ 1` and `α_i β_j ≡ 0` for `i ≠ j`.
//!
//! Every word reduces to `0` or to a unique irreducible element
//! `β_{i1}…β_{ik} α_{j1}…α_{jl}`. The reduction here is a single left-to-right
//! pass keeping the open `α`s on a stack; [`Reducer`] exposes the same pass
//! incrementally, with undo, for the enumerators.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::alphabet::{Kind, Symbol, Word};
use crate::error::{DyckError, Result};

/// Irreducible monoid element of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalForm {
    Zero,
    /// `β_{beta_run[0]} … β_{beta_run[k-1]} α_{alpha_run[0]} … α_{alpha_run[l-1]}`.
    /// Both runs empty is the identity `Λ`.
    Reduced {
        beta_run: Vec<u32>,
        alpha_run: Vec<u32>,
    },
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm::Reduced {
            beta_run: Vec::new(),
            alpha_run: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NormalForm::Zero)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, NormalForm::Reduced { beta_run, alpha_run } if beta_run.is_empty() && alpha_run.is_empty())
    }

    /// The representing word, `None` for zero.
    pub fn to_word(&self) -> Option<Word> {
        match self {
            NormalForm::Zero => None,
            NormalForm::Reduced {
                beta_run,
                alpha_run,
            } => Some(
                beta_run
                    .iter()
                    .map(|&i| Symbol::beta(i))
                    .chain(alpha_run.iter().map(|&i| Symbol::alpha(i)))
                    .collect(),
            ),
        }
    }

    /// Number of unmatched letters, `None` for zero.
    pub fn unmatched(&self) -> Option<usize> {
        match self {
            NormalForm::Zero => None,
            NormalForm::Reduced {
                beta_run,
                alpha_run,
            } => Some(beta_run.len() + alpha_run.len()),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_word() {
            None => f.write_str("0"),
            Some(w) if w.is_empty() => f.write_str("Λ"),
            Some(w) => write!(f, "{w}"),
        }
    }
}

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// What a single [`Reducer::push`] did; feed it back to [`Reducer::undo`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// An `α` was pushed on the open stack.
    Opened,
    /// A `β` cancelled the open `α` of the same index.
    Closed(u32),
    /// A `β` arrived with no open `α` and joined the leading `β`-run.
    Unmatched,
    /// A `β` met an open `α` of another index; the word is now zero.
    Annihilated,
    /// The word was already zero.
    Absorbed,
}

/// Incremental left-to-right reduction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Reducer {
    beta_run: Vec<u32>,
    open: Vec<u32>,
    len: usize,
    matched: usize,
    zero: bool,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, s: Symbol) -> Step {
        self.len += 1;
        if self.zero {
            return Step::Absorbed;
        }
        match s.kind {
            Kind::Alpha => {
                self.open.push(s.index);
                Step::Opened
            }
            Kind::Beta => match self.open.last() {
                None => {
                    self.beta_run.push(s.index);
                    Step::Unmatched
                }
                Some(&top) if top == s.index => {
                    self.open.pop();
                    self.matched += 1;
                    Step::Closed(top)
                }
                Some(_) => {
                    self.zero = true;
                    Step::Annihilated
                }
            },
        }
    }

    /// Reverts the most recent push, which must have returned `step`.
    pub fn undo(&mut self, step: Step) {
        self.len -= 1;
        match step {
            Step::Opened => {
                self.open.pop();
            }
            Step::Closed(i) => {
                self.open.push(i);
                self.matched -= 1;
            }
            Step::Unmatched => {
                self.beta_run.pop();
            }
            Step::Annihilated => self.zero = false,
            Step::Absorbed => {}
        }
    }

    pub fn feed<'a>(&mut self, symbols: impl IntoIterator<Item = &'a Symbol>) -> &mut Self {
        for &s in symbols {
            self.push(s);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Letters consumed so far.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Matched `α·β` pairs so far (meaningful only while nonzero).
    pub fn matched(&self) -> usize {
        self.matched
    }

    /// Unmatched letters so far (meaningful only while nonzero).
    pub fn unmatched(&self) -> usize {
        self.beta_run.len() + self.open.len()
    }

    /// Indices of the currently open `α`s, outermost first.
    pub fn open_alphas(&self) -> &[u32] {
        &self.open
    }

    pub fn unmatched_betas(&self) -> &[u32] {
        &self.beta_run
    }

    pub fn normal_form(&self) -> NormalForm {
        if self.zero {
            NormalForm::Zero
        } else {
            NormalForm::Reduced {
                beta_run: self.beta_run.clone(),
                alpha_run: self.open.clone(),
            }
        }
    }
}

pub fn reduce(w: &Word) -> NormalForm {
    Reducer::new().feed(w).normal_form()
}

pub fn is_in_language(w: &Word) -> bool {
    !Reducer::new().feed(w).is_zero()
}

/// True when `w ≡ 1`.
pub fn is_balanced(w: &Word) -> bool {
    let mut r = Reducer::new();
    r.feed(w);
    !r.is_zero() && r.unmatched() == 0
}

/// Equality as nonzero monoid elements.
pub fn are_equivalent(w: &Word, other: &Word) -> Result<bool> {
    let a = reduce(w);
    if a.is_zero() {
        return Err(DyckError::NotInLanguage(w.to_string()));
    }
    let b = reduce(other);
    if b.is_zero() {
        return Err(DyckError::NotInLanguage(other.to_string()));
    }
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{parse_word, AlphabetParams};

    fn w(text: &str) -> Word {
        parse_word(text, &AlphabetParams::new(3).unwrap()).unwrap()
    }

    #[test]
    fn relations() {
        assert!(reduce(&w("a1 b1")).is_identity());
        assert_eq!(reduce(&w("a1 b2")), NormalForm::Zero);
        assert_eq!(
            reduce(&w("b2 a1")),
            NormalForm::Reduced {
                beta_run: vec![2],
                alpha_run: vec![1]
            }
        );
        assert_eq!(
            reduce(&w("a1 a2 b2 b1 a3")),
            NormalForm::Reduced {
                beta_run: vec![],
                alpha_run: vec![3]
            }
        );
    }

    #[test]
    fn membership() {
        assert!(is_in_language(&Word::empty()));
        assert!(!is_in_language(&w("a1 b2")));
        assert!(is_in_language(&w("b1 a1")));
        // zero is absorbing
        assert!(!is_in_language(&w("a1 b2 a1 b1")));
    }

    #[test]
    fn display() {
        assert_eq!(reduce(&w("a1 b1")).to_string(), "Λ");
        assert_eq!(reduce(&w("a1 b2")).to_string(), "0");
        assert_eq!(reduce(&w("a2 b2 b3 a1 a2 b2")).to_string(), "b3 a1");
    }

    #[test]
    fn equivalence() {
        assert!(are_equivalent(&w("a1 b1"), &w("a2 b2")).unwrap());
        assert!(!are_equivalent(&w("a1"), &w("a2")).unwrap());
        assert!(are_equivalent(&w("a1 a2 b2"), &w("a1 a1 b1")).unwrap());
        assert!(matches!(
            are_equivalent(&w("a1 b2"), &w("a1")),
            Err(DyckError::NotInLanguage(_))
        ));
    }

    #[test]
    fn undo_restores_state() {
        let word = w("b2 a1 a3 b3 b2 a1 b1 b1");
        let mut r = Reducer::new();
        let mut snapshots = vec![r.clone()];
        let mut steps = Vec::new();
        for &s in word.iter() {
            steps.push(r.push(s));
            snapshots.push(r.clone());
        }
        while let Some(step) = steps.pop() {
            snapshots.pop();
            r.undo(step);
            assert_eq!(&r, snapshots.last().unwrap());
        }
    }
}

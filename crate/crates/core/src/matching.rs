//! Bracket heights and matched / unmatched positions of a word.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::alphabet::{Kind, Word};
use crate::error::{DyckError, Result};

/// Heights of all prefixes: `profile[0] = 0`, `+1` per `α`, `-1` per `β`.
pub fn height_profile(w: &Word) -> Vec<i64> {
    let mut out = Vec::with_capacity(w.len() + 1);
    let mut h = 0i64;
    out.push(h);
    for s in w {
        h += s.step();
        out.push(h);
    }
    out
}

/// Number of `α`s minus number of `β`s.
pub fn height(w: &Word) -> i64 {
    w.iter().map(|s| s.step()).sum()
}

/// Minimum over `k` of the height of `a_1 … a_k`, including the empty `k = 0`
/// term, so the result is never positive. The argument lists the past most
/// recent first: `a_1 = x_{-1}`, `a_2 = x_{-2}`, …
pub fn varpi(past: &Word) -> i64 {
    let mut h = 0i64;
    let mut min = 0i64;
    for s in past {
        h += s.step();
        min = min.min(h);
    }
    min
}

/// Matching of a word of the language. Positions are 0-based offsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchAnnotation {
    pub matched_pairs: BTreeSet<(usize, usize)>,
    pub unmatched_alpha: BTreeSet<usize>,
    pub unmatched_beta: BTreeSet<usize>,
    /// Paired `α`s.
    pub n1: usize,
    /// Unpaired `α`s and `β`s.
    pub n2: usize,
}

/// Stack matching: each `β` closes the most recent open `α`.
pub fn match_annotate(w: &Word) -> Result<MatchAnnotation> {
    let mut open: Vec<usize> = Vec::new();
    let mut matched_pairs = BTreeSet::new();
    let mut unmatched_beta = BTreeSet::new();
    for (j, s) in w.iter().enumerate() {
        match s.kind {
            Kind::Alpha => open.push(j),
            Kind::Beta => match open.pop() {
                Some(i) if w[i].index == s.index => {
                    matched_pairs.insert((i, j));
                }
                Some(_) => return Err(DyckError::NotInLanguage(w.to_string())),
                None => {
                    unmatched_beta.insert(j);
                }
            },
        }
    }
    let unmatched_alpha: BTreeSet<usize> = open.into_iter().collect();
    let n1 = matched_pairs.len();
    let n2 = unmatched_alpha.len() + unmatched_beta.len();
    Ok(MatchAnnotation {
        matched_pairs,
        unmatched_alpha,
        unmatched_beta,
        n1,
        n2,
    })
}

//! Holonomies `g_{w,w',k}`: swap an equivalent block of equal length at
//! coordinate `k` and leave everything else alone.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::alphabet::{AlphabetParams, Symbol, Word};
use crate::error::{DyckError, Result};
use crate::language::{equivalence_classes, LanguageWalk};
use crate::measure::{mu_tilde_monomial, Monomial};
use crate::monoid::{are_equivalent, NormalForm, Reducer};
use crate::window::PointWindow;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Holonomy {
    w: Word,
    w_prime: Word,
    k: i64,
}

impl Holonomy {
    pub fn new(w: Word, w_prime: Word, k: i64) -> Result<Self> {
        if w.len() != w_prime.len() {
            return Err(DyckError::InvalidHolonomy(format!(
                "`{w}` and `{w_prime}` have lengths {} and {}",
                w.len(),
                w_prime.len()
            )));
        }
        if !are_equivalent(&w, &w_prime)? {
            return Err(DyckError::InvalidHolonomy(format!(
                "`{w}` and `{w_prime}` reduce differently"
            )));
        }
        Ok(Self { w, w_prime, k })
    }

    pub fn w(&self) -> &Word {
        &self.w
    }

    pub fn w_prime(&self) -> &Word {
        &self.w_prime
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            w: self.w_prime.clone(),
            w_prime: self.w.clone(),
            k: self.k,
        }
    }

    /// Whether `x` carries `w` at `k`.
    pub fn in_domain(&self, x: &PointWindow) -> bool {
        x.block(self.k, self.len()) == Some(self.w.symbols())
    }
}

/// `g_{w,w',k}(x)`.
pub fn holonomy_apply(h: &Holonomy, x: &PointWindow) -> Result<PointWindow> {
    if h.is_empty() {
        return Ok(x.clone());
    }
    let end = h.k + h.len() as i64 - 1;
    for i in [h.k, end] {
        if !x.contains(i) {
            return Err(DyckError::OutOfWindow {
                index: i,
                lo: x.lo(),
                hi: x.hi(),
            });
        }
    }
    if !h.in_domain(x) {
        let found = Word::from(x.block(h.k, h.len()).unwrap_or(&[]));
        return Err(DyckError::DomainMismatch(format!(
            "expected `{}` at {}, found `{found}`",
            h.w, h.k
        )));
    }
    x.with_block(h.k, h.w_prime.symbols())
}

/// Outcome of [`holonomy_invariance_exact`].
#[derive(Debug, Clone, Default, Serialize)]
pub struct InvarianceReport {
    /// Equivalence classes with at least two words.
    pub classes: usize,
    /// Ordered pairs `(w, w')` with `w != w'`.
    pub pairs: u64,
    /// Context pairs `(s, t)` visited per class, summed.
    pub contexts: u64,
    /// `μ̃([s w t]) = μ̃([s w' t])` comparisons performed.
    pub comparisons: u64,
    /// First few violations, as `s | w | w' | t`.
    pub violations: Vec<String>,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

const MAX_REPORTED: usize = 8;

/// For every pair `w ≡ w'` with `|w| = |w'| <= max_word` and every `s`, `t`
/// with `|s|, |t| <= max_context`, checks `μ̃([s w t]) = μ̃([s w' t])` by
/// exact evaluation.
///
/// Words of one class are fed in lockstep: each context letter is pushed onto
/// all of their reduction states at once and the monomials compared, so a
/// check costs one push per word. Contexts `s` outside the language give the
/// empty cylinder for every word and are skipped.
pub fn holonomy_invariance_exact(
    max_word: usize,
    max_context: usize,
    params: &AlphabetParams,
) -> InvarianceReport {
    let classes: Vec<((usize, NormalForm), Vec<Word>)> = equivalence_classes(max_word, params)
        .into_iter()
        .filter(|(_, words)| words.len() > 1)
        .collect();
    let mut report = InvarianceReport {
        classes: classes.len(),
        pairs: classes
            .iter()
            .map(|(_, ws)| (ws.len() * (ws.len() - 1)) as u64)
            .sum(),
        ..InvarianceReport::default()
    };
    let alphabet = params.alphabet();
    for s_len in 0..=max_context {
        let mut walk = LanguageWalk::new(s_len, params);
        while walk.advance() {
            let s = walk.word().to_vec();
            for (_, words) in &classes {
                let mut states: Vec<Reducer> = words
                    .iter()
                    .map(|w| {
                        let mut r = Reducer::new();
                        r.feed(&s).feed(w);
                        r
                    })
                    .collect();
                let mut t = Vec::with_capacity(max_context);
                lockstep(
                    &mut states,
                    words,
                    &s,
                    &mut t,
                    max_context,
                    &alphabet,
                    &mut report,
                );
            }
        }
    }
    report
}

fn lockstep(
    states: &mut [Reducer],
    words: &[Word],
    s: &[Symbol],
    t: &mut Vec<Symbol>,
    max_context: usize,
    alphabet: &[Symbol],
    report: &mut InvarianceReport,
) {
    report.contexts += 1;
    let monomials: Vec<Option<Monomial>> = states.iter().map(mu_tilde_monomial).collect();
    report.comparisons += (states.len() - 1) as u64;
    if let Some(i) = (1..states.len()).find(|&i| monomials[i] != monomials[0]) {
        if report.violations.len() < MAX_REPORTED {
            report.violations.push(format!(
                "{} | {} | {} | {}",
                Word::from(s),
                words[0],
                words[i],
                Word::from(t.as_slice())
            ));
        }
    }
    // every class member is zero or none is, so further letters change nothing
    if t.len() == max_context || monomials.iter().all(Option::is_none) {
        return;
    }
    for &letter in alphabet {
        let steps: Vec<_> = states.iter_mut().map(|r| r.push(letter)).collect();
        t.push(letter);
        lockstep(states, words, s, t, max_context, alphabet, report);
        t.pop();
        for (r, step) in states.iter_mut().zip(steps) {
            r.undo(step);
        }
    }
}

/// Equivalent pairs `(w, w')`, `w != w'`, of each length up to `max_len`.
pub fn equivalent_pairs(max_len: usize, params: &AlphabetParams) -> Vec<(Word, Word)> {
    let classes: BTreeMap<_, _> = equivalence_classes(max_len, params);
    let mut out = Vec::new();
    for words in classes.values() {
        for a in words {
            for b in words {
                if a != b {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

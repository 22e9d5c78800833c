//! Enumeration and counting of Dyck-language words, equivalence classes,
//! and minimal balanced extensions.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::alphabet::{AlphabetParams, Symbol, Word};
use crate::error::{DyckError, Result};
use crate::monoid::{reduce, NormalForm, Reducer, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WalkState {
    Start,
    Running,
    Done,
}

/// Depth-first walk over the words of length `n` in the language, in
/// lexicographic order. Prefixes that reduce to zero are never extended.
///
/// This is a lending cursor: call [`LanguageWalk::advance`] and then read
/// [`LanguageWalk::word`] / [`LanguageWalk::reducer`] without allocating.
#[derive(Debug, Clone)]
pub struct LanguageWalk {
    n: usize,
    alphabet: Vec<Symbol>,
    prefix: Vec<Symbol>,
    steps: Vec<Step>,
    choice: Vec<usize>,
    reducer: Reducer,
    state: WalkState,
}

impl LanguageWalk {
    pub fn new(n: usize, params: &AlphabetParams) -> Self {
        Self {
            n,
            alphabet: params.alphabet(),
            prefix: Vec::with_capacity(n),
            steps: Vec::with_capacity(n),
            choice: vec![0; n + 1],
            reducer: Reducer::new(),
            state: WalkState::Start,
        }
    }

    /// Moves to the next word; false once the walk is exhausted.
    pub fn advance(&mut self) -> bool {
        match self.state {
            WalkState::Done => return false,
            WalkState::Start => {
                self.state = WalkState::Running;
                if self.n == 0 {
                    self.state = WalkState::Done;
                    return true;
                }
            }
            WalkState::Running => {
                if self.n == 0 {
                    return false;
                }
                self.pop();
            }
        }
        loop {
            let d = self.prefix.len();
            if self.choice[d] == self.alphabet.len() {
                self.choice[d] = 0;
                if d == 0 {
                    self.state = WalkState::Done;
                    return false;
                }
                self.pop();
                continue;
            }
            let s = self.alphabet[self.choice[d]];
            self.choice[d] += 1;
            let step = self.reducer.push(s);
            if step == Step::Annihilated {
                self.reducer.undo(step);
                continue;
            }
            self.prefix.push(s);
            self.steps.push(step);
            if self.prefix.len() == self.n {
                return true;
            }
        }
    }

    fn pop(&mut self) {
        if let Some(step) = self.steps.pop() {
            self.prefix.pop();
            self.reducer.undo(step);
        }
    }

    /// The current word (valid after `advance` returned true).
    pub fn word(&self) -> &[Symbol] {
        &self.prefix
    }

    /// Reduction state of the current word.
    pub fn reducer(&self) -> &Reducer {
        &self.reducer
    }
}

/// Owning iterator over [`LanguageWalk`].
#[derive(Debug, Clone)]
pub struct LanguageIter(LanguageWalk);

impl Iterator for LanguageIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        self.0.advance().then(|| Word::from(self.0.word()))
    }
}

/// All words of the language of length `n`, lexicographic, each once.
pub fn enumerate_language(n: usize, params: &AlphabetParams) -> LanguageIter {
    LanguageIter(LanguageWalk::new(n, params))
}

/// `|L(n)|`, by the same walk.
pub fn count_language(n: usize, params: &AlphabetParams) -> u64 {
    let mut walk = LanguageWalk::new(n, params);
    let mut count = 0u64;
    while walk.advance() {
        count += 1;
    }
    count
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// Number of balanced words of length `2N`: `Catalan(N) · m^N`.
pub fn count_balanced(half_len: u64, params: &AlphabetParams) -> BigUint {
    catalan(half_len) * BigUint::from(params.m()).pow(half_len as u32)
}

/// Balanced words of length exactly `len`, lexicographic.
pub fn balanced_words(len: usize, params: &AlphabetParams) -> Vec<Word> {
    if len % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut walk = LanguageWalk::new(len, params);
    while walk.advance() {
        if walk.reducer().unmatched() == 0 {
            out.push(Word::from(walk.word()));
        }
    }
    out
}

/// Nonzero words of length `<= max_len`, bucketed by `(length, normal form)`.
/// Two words in one bucket are exactly the equal-length equivalent pairs.
pub fn equivalence_classes(
    max_len: usize,
    params: &AlphabetParams,
) -> BTreeMap<(usize, NormalForm), Vec<Word>> {
    let mut classes: BTreeMap<(usize, NormalForm), Vec<Word>> = BTreeMap::new();
    for n in 0..=max_len {
        let mut walk = LanguageWalk::new(n, params);
        while walk.advance() {
            classes
                .entry((n, walk.reducer().normal_form()))
                .or_default()
                .push(Word::from(walk.word()));
        }
    }
    classes
}

/// A two-sided context `(left, right)` with `left · a · right ≡ 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Extension {
    pub left: Word,
    pub right: Word,
}

impl Extension {
    pub fn total_len(&self, core: &Word) -> usize {
        self.left.len() + core.len() + self.right.len()
    }

    pub fn apply(&self, core: &Word) -> Word {
        self.left.concat(core).concat(&self.right)
    }
}

/// Minimal balanced extensions of `a` with `|l·a·r| <= max_len`.
///
/// Writing the normal form of `a` as `β_{j1}…β_{jk} α_{i1}…α_{il}`, a minimal
/// extension is exactly
/// `l = α_{jk} v_{k-1} α_{j(k-1)} … α_{j1} v_0` and
/// `r = u_0 β_{il} u_1 … u_{l-1} β_{i1}` with every `v`, `u` balanced: the
/// outermost letters of `l` and `r` must be the partners of the outermost
/// unmatched letters of `a`, otherwise a strictly smaller balanced
/// sub-context exists. Sorted by total length, then `(l, r)`.
pub fn minimal_balanced_extensions(
    a: &Word,
    max_len: usize,
    params: &AlphabetParams,
) -> Result<Vec<Extension>> {
    let (betas, alphas) = match reduce(a) {
        NormalForm::Zero => return Err(DyckError::NotInLanguage(a.to_string())),
        NormalForm::Reduced {
            beta_run,
            alpha_run,
        } => (beta_run, alpha_run),
    };
    let slots = betas.len() + alphas.len();
    let fixed = a.len() + slots;
    if max_len < fixed {
        return Ok(Vec::new());
    }
    let budget = max_len - fixed;
    let by_len: Vec<Vec<Word>> = (0..=budget).map(|n| balanced_words(n, params)).collect();

    let mut fills = Vec::new();
    fill_slots(slots, budget, &by_len, &mut Vec::new(), &mut fills);

    let mut out: Vec<Extension> = fills
        .into_iter()
        .map(|fill| {
            let (vs, us) = fill.split_at(betas.len());
            let mut left = Word::empty();
            // v slots are taken as v_{k-1}, …, v_0 in word order.
            for (t, v) in betas.iter().rev().zip(vs) {
                left.push(Symbol::alpha(*t));
                left = left.concat(v);
            }
            let mut right = Word::empty();
            for (s, u) in alphas.iter().rev().zip(us) {
                right = right.concat(u);
                right.push(Symbol::beta(*s));
            }
            Extension { left, right }
        })
        .collect();
    out.sort_by(|x, y| (x.left.len() + x.right.len(), x).cmp(&(y.left.len() + y.right.len(), y)));
    Ok(out)
}

fn fill_slots(
    remaining: usize,
    budget: usize,
    by_len: &[Vec<Word>],
    current: &mut Vec<Word>,
    out: &mut Vec<Vec<Word>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for len in (0..=budget).step_by(2) {
        for w in &by_len[len] {
            current.push(w.clone());
            fill_slots(remaining - 1, budget - len, by_len, current, out);
            current.pop();
        }
    }
}

/// Number of minimal balanced extensions of a word with `unmatched`
/// unmatched letters whose balanced filling has total length `2 * half`:
/// the ballot number `r/(2K+r) · C(2K+r, K)` times `m^K` (`r` = unmatched,
/// `K` = half), i.e. the coefficient of `x^{2K}` in `B(x)^r` where `B` counts
/// balanced words.
pub fn extension_count(unmatched: usize, half: u64, params: &AlphabetParams) -> BigUint {
    let m_pow = BigUint::from(params.m()).pow(half as u32);
    if unmatched == 0 {
        return if half == 0 {
            BigUint::one()
        } else {
            BigUint::default()
        };
    }
    let r = unmatched as u64;
    binomial(2 * half + r, half) * r / (2 * half + r) * m_pow
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::parse_word;

    fn m2() -> AlphabetParams {
        AlphabetParams::new(2).unwrap()
    }

    #[test]
    fn small_enumerations() {
        let p = m2();
        let l0: Vec<Word> = enumerate_language(0, &p).collect();
        assert_eq!(l0, vec![Word::empty()]);
        assert_eq!(enumerate_language(1, &p).count(), 4);
        let l2: Vec<Word> = enumerate_language(2, &p).collect();
        assert_eq!(l2.len(), 14);
        assert!(!l2.contains(&parse_word("a1 b2", &p).unwrap()));
        assert!(!l2.contains(&parse_word("a2 b1", &p).unwrap()));
        let mut sorted = l2.clone();
        sorted.sort();
        assert_eq!(l2, sorted);
    }

    #[test]
    fn walk_is_exhausted_cleanly() {
        let mut walk = LanguageWalk::new(0, &m2());
        assert!(walk.advance());
        assert!(!walk.advance());
        assert!(!walk.advance());
        let mut walk = LanguageWalk::new(3, &m2());
        while walk.advance() {}
        assert!(!walk.advance());
    }

    #[test]
    fn balanced_counts() {
        let p = m2();
        assert_eq!(count_balanced(0, &p), BigUint::from(1u32));
        assert_eq!(count_balanced(1, &p), BigUint::from(2u32));
        assert_eq!(count_balanced(2, &p), BigUint::from(8u32));
        assert_eq!(count_balanced(3, &p), BigUint::from(40u32));
        assert_eq!(catalan(10), BigUint::from(16796u32));
    }

    #[test]
    fn extensions_of_balanced_word() {
        let p = m2();
        let a = parse_word("a1 b1", &p).unwrap();
        for max_len in [2, 4, 6] {
            let ext = minimal_balanced_extensions(&a, max_len, &p).unwrap();
            assert_eq!(
                ext,
                vec![Extension {
                    left: Word::empty(),
                    right: Word::empty()
                }]
            );
        }
    }

    #[test]
    fn extensions_of_single_alpha() {
        let p = m2();
        let a = parse_word("a1", &p).unwrap();
        let ext = minimal_balanced_extensions(&a, 2, &p).unwrap();
        assert_eq!(
            ext,
            vec![Extension {
                left: Word::empty(),
                right: parse_word("b1", &p).unwrap()
            }]
        );
        assert!(minimal_balanced_extensions(&a, 1, &p).unwrap().is_empty());
        assert!(minimal_balanced_extensions(&parse_word("a1 b2", &p).unwrap(), 4, &p).is_err());
    }

    #[test]
    fn extension_count_matches_generator() {
        let p = m2();
        for text in ["a1", "b2", "a1 a2", "b1 a2", "b1 b2 a1"] {
            let a = parse_word(text, &p).unwrap();
            let r = reduce(&a).unmatched().unwrap();
            let ext = minimal_balanced_extensions(&a, a.len() + r + 6, &p).unwrap();
            for half in 0..=3u64 {
                let len = a.len() + r + 2 * half as usize;
                let n = ext.iter().filter(|e| e.total_len(&a) == len).count();
                assert_eq!(
                    BigUint::from(n),
                    extension_count(r, half, &p),
                    "{text} {half}"
                );
            }
        }
    }
}

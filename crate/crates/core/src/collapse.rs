//! Collapse maps onto the alphabets `Ω = {α_1, …, α_m, β}` and
//! `Θ = {β_1, …, β_m, α}` and their windowed inverses.
//!
//! `g_+` forgets the index of every closing letter, `g_-` the index of every
//! opening letter. On points where every bracket is eventually matched the
//! forgotten index is recovered from the partner.

use std::fmt;

use serde::Serialize;

use crate::alphabet::{Kind, Symbol};
use crate::error::{DyckError, Result};
use crate::window::{PointWindow, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CollapseVariant {
    /// Letters `α_1 … α_m` and a bare `β`.
    OmegaPlusMinus,
    /// Letters `β_1 … β_m` and a bare `α`.
    ThetaMinusPlus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CollapsedLetter {
    Typed(Symbol),
    Bare(Kind),
}

impl CollapsedLetter {
    pub fn kind(self) -> Kind {
        match self {
            CollapsedLetter::Typed(s) => s.kind,
            CollapsedLetter::Bare(k) => k,
        }
    }

    fn fits(self, variant: CollapseVariant) -> bool {
        matches!(
            (variant, self),
            (
                CollapseVariant::OmegaPlusMinus,
                CollapsedLetter::Typed(Symbol {
                    kind: Kind::Alpha,
                    ..
                })
            ) | (
                CollapseVariant::OmegaPlusMinus,
                CollapsedLetter::Bare(Kind::Beta)
            ) | (
                CollapseVariant::ThetaMinusPlus,
                CollapsedLetter::Typed(Symbol {
                    kind: Kind::Beta,
                    ..
                })
            ) | (
                CollapseVariant::ThetaMinusPlus,
                CollapsedLetter::Bare(Kind::Alpha)
            )
        )
    }
}

impl fmt::Display for CollapsedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollapsedLetter::Typed(s) => write!(f, "{s}"),
            CollapsedLetter::Bare(Kind::Alpha) => f.write_str("a"),
            CollapsedLetter::Bare(Kind::Beta) => f.write_str("b"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapsedWindow {
    lo: i64,
    letters: Vec<CollapsedLetter>,
    variant: CollapseVariant,
}

impl CollapsedWindow {
    pub fn new(lo: i64, letters: Vec<CollapsedLetter>, variant: CollapseVariant) -> Result<Self> {
        if letters.iter().any(|l| !l.fits(variant)) {
            return Err(DyckError::WrongCollapsedAlphabet(match variant {
                CollapseVariant::OmegaPlusMinus => "Ω",
                CollapseVariant::ThetaMinusPlus => "Θ",
            }));
        }
        Ok(Self {
            lo,
            letters,
            variant,
        })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.letters.len() as i64 - 1
    }

    pub fn letters(&self) -> &[CollapsedLetter] {
        &self.letters
    }

    pub fn variant(&self) -> CollapseVariant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub(crate) fn extend_left(&mut self, left: Vec<CollapsedLetter>) {
        let mut letters = left;
        self.lo -= letters.len() as i64;
        letters.extend_from_slice(&self.letters);
        self.letters = letters;
    }
}

impl fmt::Display for CollapsedWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `g_+`: `α_j ↦ α_j`, every `β_j ↦ β`.
pub fn collapse_plus(x: &PointWindow) -> CollapsedWindow {
    collapse_plus_letters(x.lo(), x.symbols())
}

/// `g_-`: `β_j ↦ β_j`, every `α_j ↦ α`.
pub fn collapse_minus(x: &PointWindow) -> CollapsedWindow {
    collapse_minus_letters(x.lo(), x.symbols())
}

/// [`collapse_plus`] on an arbitrary letter sequence starting at `lo`; the
/// map is letterwise and needs no language check.
pub fn collapse_plus_letters(lo: i64, symbols: &[Symbol]) -> CollapsedWindow {
    let letters = symbols
        .iter()
        .map(|&s| match s.kind {
            Kind::Alpha => CollapsedLetter::Typed(s),
            Kind::Beta => CollapsedLetter::Bare(Kind::Beta),
        })
        .collect();
    CollapsedWindow {
        lo,
        letters,
        variant: CollapseVariant::OmegaPlusMinus,
    }
}

/// [`collapse_minus`] on an arbitrary letter sequence starting at `lo`.
pub fn collapse_minus_letters(lo: i64, symbols: &[Symbol]) -> CollapsedWindow {
    let letters = symbols
        .iter()
        .map(|&s| match s.kind {
            Kind::Beta => CollapsedLetter::Typed(s),
            Kind::Alpha => CollapsedLetter::Bare(Kind::Alpha),
        })
        .collect();
    CollapsedWindow {
        lo,
        letters,
        variant: CollapseVariant::ThetaMinusPlus,
    }
}

/// Cocycle of a collapsed window: `+1` per opening letter, `-1` per closing
/// letter, with the same two-branch convention as the height cocycle.
/// Returns the values at `lo ..= hi + 1`.
pub fn collapsed_cocycle(w: &CollapsedWindow) -> Result<Vec<i64>> {
    if w.lo() > 0 || w.hi() < 0 {
        return Err(DyckError::WindowExcludesOrigin {
            lo: w.lo(),
            hi: w.hi(),
        });
    }
    let step = |k: Kind| if k == Kind::Alpha { 1 } else { -1 };
    let origin = (-w.lo()) as usize;
    let mut out = vec![0i64; w.len() + 1];
    for i in origin..w.len() {
        out[i + 1] = out[i] + step(w.letters[i].kind());
    }
    for i in (0..origin).rev() {
        out[i] = out[i + 1] - step(w.letters[i].kind());
    }
    Ok(out)
}

/// Partner of every closing letter, by stack matching (`None` when it lies
/// left of the window or for opening letters).
fn closing_partners(w: &CollapsedWindow) -> Vec<Option<usize>> {
    let mut open = Vec::new();
    let mut out = vec![None; w.len()];
    for (i, l) in w.letters.iter().enumerate() {
        match l.kind() {
            Kind::Alpha => open.push(i),
            Kind::Beta => out[i] = open.pop(),
        }
    }
    out
}

/// Number of bare `β`s in `[out_lo, out_hi]` whose partner lies left of the
/// window.
pub(crate) fn unresolved_plus(w: &CollapsedWindow, out_lo: i64, out_hi: i64) -> usize {
    let partners = closing_partners(w);
    (out_lo..=out_hi)
        .filter(|&n| {
            let i = (n - w.lo) as usize;
            w.letters[i].kind() == Kind::Beta && partners[i].is_none()
        })
        .count()
}

pub(crate) fn invert_plus_with(
    w: &CollapsedWindow,
    out_lo: i64,
    out_hi: i64,
    provenance: Provenance,
    mut fresh: impl FnMut() -> Option<u32>,
) -> Result<PointWindow> {
    if w.variant != CollapseVariant::OmegaPlusMinus {
        return Err(DyckError::WrongCollapsedAlphabet("Ω"));
    }
    if out_lo > out_hi || out_lo < w.lo() || out_hi > w.hi() {
        return Err(DyckError::OutOfWindow {
            index: if out_lo < w.lo() { out_lo } else { out_hi },
            lo: w.lo(),
            hi: w.hi(),
        });
    }
    let partners = closing_partners(w);
    let mut symbols = Vec::with_capacity((out_hi - out_lo + 1) as usize);
    for n in out_lo..=out_hi {
        let i = (n - w.lo) as usize;
        let s = match w.letters[i] {
            CollapsedLetter::Typed(s) => s,
            CollapsedLetter::Bare(_) => {
                let index = match partners[i] {
                    Some(p) => match w.letters[p] {
                        CollapsedLetter::Typed(a) => a.index,
                        CollapsedLetter::Bare(_) => unreachable!("Ω openers are typed"),
                    },
                    None => fresh().ok_or(DyckError::NeedMoreLeft)?,
                };
                Symbol::beta(index)
            }
        };
        symbols.push(s);
    }
    PointWindow::new(out_lo, symbols, provenance)
}

/// `g_+^{-1}` on the whole window: each bare `β` takes the index of the `α`
/// it closes.
pub fn invert_collapse_plus(w: &CollapsedWindow) -> Result<PointWindow> {
    invert_plus_with(w, w.lo(), w.hi(), Provenance::manual(), || None)
}

/// Like [`invert_collapse_plus`], recovering only `[out_lo, out_hi]`.
pub fn invert_collapse_plus_range(
    w: &CollapsedWindow,
    out_lo: i64,
    out_hi: i64,
) -> Result<PointWindow> {
    invert_plus_with(w, out_lo, out_hi, Provenance::manual(), || None)
}

/// Mirror image `n ↦ -n` with `α_j ↔ β_j`, which maps `Θ` windows to `Ω`
/// windows and back.
pub fn reflect_collapsed(w: &CollapsedWindow) -> CollapsedWindow {
    let letters = w
        .letters
        .iter()
        .rev()
        .map(|l| match *l {
            CollapsedLetter::Typed(s) => CollapsedLetter::Typed(s.swapped()),
            CollapsedLetter::Bare(Kind::Alpha) => CollapsedLetter::Bare(Kind::Beta),
            CollapsedLetter::Bare(Kind::Beta) => CollapsedLetter::Bare(Kind::Alpha),
        })
        .collect();
    let variant = match w.variant {
        CollapseVariant::OmegaPlusMinus => CollapseVariant::ThetaMinusPlus,
        CollapseVariant::ThetaMinusPlus => CollapseVariant::OmegaPlusMinus,
    };
    CollapsedWindow {
        lo: -w.hi(),
        letters,
        variant,
    }
}

/// `g_-^{-1}` on the whole window: each bare `α` takes the index of the `β`
/// that closes it, which lies to its right.
pub fn invert_collapse_minus(w: &CollapsedWindow) -> Result<PointWindow> {
    if w.variant != CollapseVariant::ThetaMinusPlus {
        return Err(DyckError::WrongCollapsedAlphabet("Θ"));
    }
    let mirrored = reflect_collapsed(w);
    match invert_collapse_plus(&mirrored) {
        Ok(x) => Ok(reflect_point(&x)),
        Err(DyckError::NeedMoreLeft) => Err(DyckError::NeedMoreRight),
        Err(e) => Err(e),
    }
}

/// Mirror image `x'_n = swap(x_{-n})` of a point window; bracket matching is
/// preserved, so the result is again valid.
pub fn reflect_point(x: &PointWindow) -> PointWindow {
    let symbols = x.symbols().iter().rev().map(|s| s.swapped()).collect();
    PointWindow::new(-x.hi(), symbols, *x.provenance()).expect("reflection preserves the language")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{parse_word, AlphabetParams};

    fn p() -> AlphabetParams {
        AlphabetParams::new(3).unwrap()
    }

    fn window(lo: i64, text: &str) -> PointWindow {
        PointWindow::from_word(lo, &parse_word(text, &p()).unwrap()).unwrap()
    }

    fn omega(lo: i64, letters: &[CollapsedLetter]) -> CollapsedWindow {
        CollapsedWindow::new(lo, letters.to_vec(), CollapseVariant::OmegaPlusMinus).unwrap()
    }

    const B: CollapsedLetter = CollapsedLetter::Bare(Kind::Beta);

    fn a(i: u32) -> CollapsedLetter {
        CollapsedLetter::Typed(Symbol::alpha(i))
    }

    #[test]
    fn collapse_examples() {
        let raw = parse_word("a1 b2 b1", &p()).unwrap();
        assert_eq!(
            collapse_plus_letters(0, raw.symbols()).to_string(),
            "a1 b b"
        );
        assert_eq!(collapse_plus(&window(0, "a1 b1 b1")).to_string(), "a1 b b");
        assert_eq!(collapse_plus(&window(0, "a1 a2")).to_string(), "a1 a2");
        assert_eq!(collapse_minus(&window(0, "b1 a2")).to_string(), "b1 a");
    }

    #[test]
    fn inversion_examples() {
        let x = invert_collapse_plus(&omega(0, &[a(3), B])).unwrap();
        assert_eq!(x.word().to_string(), "a3 b3");
        let x = invert_collapse_plus(&omega(0, &[a(1), a(2), B, B])).unwrap();
        assert_eq!(x.word().to_string(), "a1 a2 b2 b1");
        assert_eq!(
            invert_collapse_plus(&omega(0, &[B, a(1)])),
            Err(DyckError::NeedMoreLeft)
        );
        // the unresolved β is outside the requested range
        let x = invert_collapse_plus_range(&omega(0, &[B, a(1), B]), 1, 2).unwrap();
        assert_eq!(x.word().to_string(), "a1 b1");
    }

    #[test]
    fn wrong_alphabet_rejected() {
        let bad = CollapsedWindow::new(
            0,
            vec![CollapsedLetter::Typed(Symbol::beta(1))],
            CollapseVariant::OmegaPlusMinus,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn minus_inversion() {
        let x = window(-1, "a2 a1 b1 b2");
        let theta = collapse_minus(&x);
        assert_eq!(theta.to_string(), "a a b1 b2");
        assert_eq!(
            invert_collapse_minus(&theta).unwrap().symbols(),
            x.symbols()
        );
        let open = collapse_minus(&window(0, "b2 a1"));
        assert_eq!(open.to_string(), "b2 a");
        let lone = CollapsedWindow::new(
            0,
            vec![CollapsedLetter::Bare(Kind::Alpha)],
            CollapseVariant::ThetaMinusPlus,
        )
        .unwrap();
        assert_eq!(invert_collapse_minus(&lone), Err(DyckError::NeedMoreRight));
    }

    #[test]
    fn cocycle_follows_two_branch_rule() {
        let w = omega(-1, &[B, a(1), a(2)]);
        assert_eq!(collapsed_cocycle(&w).unwrap(), vec![1, 0, 1, 2]);
    }
}

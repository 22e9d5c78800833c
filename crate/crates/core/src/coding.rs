//! The coding map `F(z, a)` from a coin-flip sequence `z` and a type
//! sequence `a` to a point of the Dyck shift, evaluated on finite windows.
//!
//! `z_n = 1` gives `α_{a[γ_n(z)]}`; `z_n = 0` gives `β_j` with
//! `j = a[γ_k(z)]` for `k = ε_n(z)`, the position of the `1` the zero closes.
//! Each `1` owns a distinct `γ` coordinate, so matched pairs share one type.

use crate::alphabet::{AlphabetParams, Kind, Symbol};
use crate::error::{DyckError, Result};
use crate::window::{BinaryWindow, IndexWindow, PointWindow, Provenance};

/// `H_i(x)` for every `i` in `[lo, hi + 1]`, in order.
///
/// `H_0 = 0`; for `i > 0` it counts `α` minus `β` over `x_0 … x_{i-1}`; for
/// `i < 0` it counts `β` minus `α` over `x_i … x_{-1}`.
pub fn height_cocycle(x: &PointWindow) -> Result<Vec<i64>> {
    if !x.contains(0) {
        return Err(DyckError::WindowExcludesOrigin {
            lo: x.lo(),
            hi: x.hi(),
        });
    }
    let step = |i: i64| x.at(i).map(Symbol::step).unwrap_or(0);
    let mut out = Vec::with_capacity(x.len() + 1);
    for i in x.lo()..=x.hi() + 1 {
        let h = match i.cmp(&0) {
            std::cmp::Ordering::Greater => (0..i).map(step).sum(),
            std::cmp::Ordering::Less => (i..0).map(|j| -step(j)).sum(),
            std::cmp::Ordering::Equal => 0,
        };
        out.push(h);
    }
    Ok(out)
}

fn bit_step(b: u8) -> i64 {
    if b == 1 {
        1
    } else {
        -1
    }
}

fn require(z: &BinaryWindow, from: i64, to: i64) -> Result<()> {
    for i in [from, to] {
        if !z.contains(i) {
            return Err(DyckError::OutOfWindow {
                index: i,
                lo: z.lo(),
                hi: z.hi(),
            });
        }
    }
    Ok(())
}

/// `H̃_l(z)`: ones minus zeros on `[0, l)` for `l > 0`, zeros minus ones on
/// `[l, 0)` for `l < 0`.
pub fn tilde_height(z: &BinaryWindow, l: i64) -> Result<i64> {
    match l.cmp(&0) {
        std::cmp::Ordering::Equal => Ok(0),
        std::cmp::Ordering::Greater => {
            require(z, 0, l - 1)?;
            Ok((0..l).map(|i| bit_step(z.at(i).unwrap())).sum())
        }
        std::cmp::Ordering::Less => {
            require(z, l, -1)?;
            Ok((l..0).map(|i| -bit_step(z.at(i).unwrap())).sum())
        }
    }
}

/// `γ_k(z)`: ones on `[0, k]` for `k >= 0`, minus the ones on `[k, -1]` for
/// `k < 0`.
pub fn gamma(z: &BinaryWindow, k: i64) -> Result<i64> {
    if k >= 0 {
        require(z, 0, k)?;
        Ok((0..=k).map(|i| i64::from(z.at(i).unwrap())).sum())
    } else {
        require(z, k, -1)?;
        Ok(-(k..0).map(|i| i64::from(z.at(i).unwrap())).sum::<i64>())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lookup {
    At(i64),
    NeedMoreLeft,
}

/// `ε_n(z) = max{ l < n : H̃_l(z) <= H̃_{n+1}(z) }`, searched inside the window.
///
/// Only height differences enter, so the window need not contain 0.
pub fn epsilon(z: &BinaryWindow, n: i64) -> Result<Lookup> {
    require(z, n, n)?;
    // H̃_{n+1} - H̃_l = Σ_{i=l}^{n} step(z_i)
    let mut diff = bit_step(z.at(n).unwrap());
    for l in (z.lo()..n).rev() {
        diff += bit_step(z.at(l).unwrap());
        if diff >= 0 {
            return Ok(Lookup::At(l));
        }
    }
    Ok(Lookup::NeedMoreLeft)
}

/// For every position of `z`, the position of the `1` a `0` closes
/// (`None` for ones and for zeros closing left of the window), by one
/// stack pass. Agrees with [`epsilon`] at every zero.
pub fn match_zeros(z: &BinaryWindow) -> Vec<Option<i64>> {
    let mut open = Vec::new();
    let mut out = vec![None; z.len()];
    for (offset, &b) in z.bits().iter().enumerate() {
        let pos = z.lo() + offset as i64;
        if b == 1 {
            open.push(pos);
        } else {
            out[offset] = open.pop();
        }
    }
    out
}

/// Where an output letter takes its type from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TypeSource {
    Gamma(i64),
    /// A zero whose partner lies left of the window.
    Unresolved,
}

/// Kinds and type coordinates for the output range of `F`.
#[derive(Debug, Clone)]
pub(crate) struct CodingPlan {
    pub kinds: Vec<Kind>,
    pub sources: Vec<TypeSource>,
}

impl CodingPlan {
    pub fn unresolved(&self) -> usize {
        self.sources
            .iter()
            .filter(|s| matches!(s, TypeSource::Unresolved))
            .count()
    }

    /// Smallest and largest `γ` coordinate read, if any.
    pub fn gamma_range(&self) -> Option<(i64, i64)> {
        let mut it = self.sources.iter().filter_map(|s| match s {
            TypeSource::Gamma(g) => Some(*g),
            TypeSource::Unresolved => None,
        });
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), g| (lo.min(g), hi.max(g))))
    }

    /// Builds the output letters; `fresh` supplies types for unresolved zeros.
    pub fn realize(
        &self,
        a: &IndexWindow,
        mut fresh: impl FnMut() -> Option<u32>,
    ) -> Result<Vec<Symbol>> {
        self.kinds
            .iter()
            .zip(&self.sources)
            .map(|(&kind, src)| {
                let index = match *src {
                    TypeSource::Gamma(g) => a.at(g).ok_or(DyckError::IndexCoverage(g))?,
                    TypeSource::Unresolved => fresh().ok_or(DyckError::NeedMoreLeft)?,
                };
                Ok(Symbol { kind, index })
            })
            .collect()
    }
}

/// Prefix sums of ones, answering `γ_k` in O(1).
struct GammaTable<'a> {
    z: &'a BinaryWindow,
    ones: Vec<i64>,
}

impl<'a> GammaTable<'a> {
    fn new(z: &'a BinaryWindow) -> Self {
        let mut ones = Vec::with_capacity(z.len() + 1);
        let mut acc = 0;
        ones.push(0);
        for &b in z.bits() {
            acc += i64::from(b);
            ones.push(acc);
        }
        Self { z, ones }
    }

    /// Ones on `[from, to]`, both inside the window.
    fn ones_between(&self, from: i64, to: i64) -> i64 {
        let a = (from - self.z.lo()) as usize;
        let b = (to - self.z.lo()) as usize;
        self.ones[b + 1] - self.ones[a]
    }

    fn gamma(&self, k: i64) -> Result<i64> {
        if k >= 0 {
            require(self.z, 0, k)?;
            Ok(self.ones_between(0, k))
        } else {
            require(self.z, k, -1)?;
            Ok(-self.ones_between(k, -1))
        }
    }
}

pub(crate) fn plan_coding(z: &BinaryWindow, out_lo: i64, out_hi: i64) -> Result<CodingPlan> {
    if out_lo > out_hi {
        return Err(DyckError::InvalidArgument(format!(
            "empty output range [{out_lo}, {out_hi}]"
        )));
    }
    require(z, out_lo, out_hi)?;
    let table = GammaTable::new(z);
    let partners = match_zeros(z);
    let mut kinds = Vec::with_capacity((out_hi - out_lo + 1) as usize);
    let mut sources = Vec::with_capacity(kinds.capacity());
    for n in out_lo..=out_hi {
        let offset = (n - z.lo()) as usize;
        if z.bits()[offset] == 1 {
            kinds.push(Kind::Alpha);
            sources.push(TypeSource::Gamma(table.gamma(n)?));
        } else {
            kinds.push(Kind::Beta);
            sources.push(match partners[offset] {
                Some(k) => TypeSource::Gamma(table.gamma(k)?),
                None => TypeSource::Unresolved,
            });
        }
    }
    Ok(CodingPlan { kinds, sources })
}

/// `F(z, a)` restricted to `[out_lo, out_hi]`.
///
/// Fails with [`DyckError::NeedMoreLeft`] when a zero in the output range
/// closes left of the `z` window, and with [`DyckError::IndexCoverage`] when
/// `a` misses a needed coordinate.
pub fn apply_f(
    z: &BinaryWindow,
    a: &IndexWindow,
    out_lo: i64,
    out_hi: i64,
    provenance: Provenance,
) -> Result<PointWindow> {
    let plan = plan_coding(z, out_lo, out_hi)?;
    let symbols = plan.realize(a, || None)?;
    PointWindow::new(out_lo, symbols, provenance)
}

/// `z(x)_n = 1` on `α`s and `0` on `β`s.
pub fn project_z(x: &PointWindow) -> BinaryWindow {
    project_z_letters(x.lo(), x.symbols())
}

/// [`project_z`] on an arbitrary letter sequence starting at `lo`.
pub fn project_z_letters(lo: i64, symbols: &[Symbol]) -> BinaryWindow {
    let bits = symbols.iter().map(|s| u8::from(s.is_alpha())).collect();
    BinaryWindow::new(lo, bits).expect("indicator bits are 0/1")
}

/// Convenience for building an index window of type coordinates.
pub fn index_window(lo: i64, indices: Vec<u32>, params: &AlphabetParams) -> Result<IndexWindow> {
    IndexWindow::new(lo, indices, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::parse_word;

    fn p(m: u32) -> AlphabetParams {
        AlphabetParams::new(m).unwrap()
    }

    fn bits(lo: i64, b: &[u8]) -> BinaryWindow {
        BinaryWindow::new(lo, b.to_vec()).unwrap()
    }

    fn window(lo: i64, text: &str) -> PointWindow {
        PointWindow::from_word(lo, &parse_word(text, &p(3)).unwrap()).unwrap()
    }

    #[test]
    fn cocycle_examples() {
        assert_eq!(height_cocycle(&window(0, "a1")).unwrap(), vec![0, 1]);
        assert_eq!(height_cocycle(&window(-1, "b1 a1")).unwrap(), vec![1, 0, 1]);
        assert_eq!(
            height_cocycle(&window(-2, "a1 a2 a1 a1 a3")).unwrap(),
            vec![-2, -1, 0, 1, 2, 3]
        );
        assert!(height_cocycle(&window(1, "a1")).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&bits(0, &[1, 0, 1]), 2).unwrap(), 2);
        assert_eq!(gamma(&bits(0, &[1]), 0).unwrap(), 1);
        assert_eq!(gamma(&bits(-2, &[1, 1]), -2).unwrap(), -2);
        assert!(gamma(&bits(0, &[1]), 1).is_err());
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&bits(0, &[1, 0]), 1).unwrap(), Lookup::At(0));
        assert_eq!(epsilon(&bits(0, &[1, 1, 0]), 2).unwrap(), Lookup::At(1));
        assert_eq!(epsilon(&bits(0, &[0]), 0).unwrap(), Lookup::NeedMoreLeft);
        let z = bits(0, &[1, 1, 0]);
        assert_eq!(tilde_height(&z, 3).unwrap(), 1);
        assert_eq!(tilde_height(&z, 2).unwrap(), 2);
    }

    #[test]
    fn coding_examples() {
        let params = p(3);
        // γ_0 = 1 for z = (1, 0)
        let z = bits(0, &[1, 0]);
        let a = IndexWindow::new(1, vec![3], &params).unwrap();
        let x = apply_f(&z, &a, 0, 1, Provenance::manual()).unwrap();
        assert_eq!(x.word(), parse_word("a3 b3", &params).unwrap());

        let z = bits(0, &[1, 1, 0, 0]);
        let a = IndexWindow::new(1, vec![1, 2], &params).unwrap();
        let x = apply_f(&z, &a, 0, 3, Provenance::manual()).unwrap();
        assert_eq!(x.word(), parse_word("a1 a2 b2 b1", &params).unwrap());

        let z = bits(0, &[0, 1]);
        let a = IndexWindow::new(1, vec![1], &params).unwrap();
        assert_eq!(
            apply_f(&z, &a, 0, 1, Provenance::manual()),
            Err(DyckError::NeedMoreLeft)
        );
        // only the α is requested: no left context needed
        assert!(apply_f(&z, &a, 1, 1, Provenance::manual()).is_ok());
    }

    #[test]
    fn coverage_gap_is_reported() {
        let params = p(2);
        let z = bits(0, &[1, 1]);
        let a = IndexWindow::new(1, vec![1], &params).unwrap();
        assert_eq!(
            apply_f(&z, &a, 0, 1, Provenance::manual()),
            Err(DyckError::IndexCoverage(2))
        );
    }

    #[test]
    fn projection() {
        let raw = parse_word("a1 b2 a2", &p(2)).unwrap();
        assert_eq!(project_z_letters(0, raw.symbols()).bits(), &[1, 0, 1]);
        let x = PointWindow::from_word(0, &parse_word("a1 b1 a2", &p(2)).unwrap()).unwrap();
        assert_eq!(project_z(&x).bits(), &[1, 0, 1]);
        let y = PointWindow::from_word(-1, &parse_word("b1 b2", &p(2)).unwrap()).unwrap();
        assert_eq!(project_z(&y).bits(), &[0, 0]);
    }
}

//! Matching times, empirical estimators and tail diagnostics on sampled
//! windows.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::alphabet::{Symbol, Word};
use crate::coding::height_cocycle;
use crate::error::{DyckError, Result};
use crate::holonomy::Holonomy;
use crate::window::PointWindow;

/// Hit count of an event over the samples that could decide it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalEstimate {
    pub event: String,
    pub hits: u64,
    pub trials: u64,
    /// Samples dropped: truncated, or the event was not decidable.
    pub excluded: u64,
    pub estimate: f64,
    /// `sqrt(p̂(1 - p̂) / trials)`.
    pub stderr: f64,
}

impl EmpiricalEstimate {
    pub fn from_counts(
        event: impl Into<String>,
        hits: u64,
        trials: u64,
        excluded: u64,
    ) -> Result<Self> {
        if trials == 0 {
            return Err(DyckError::InsufficientSamples);
        }
        let estimate = hits as f64 / trials as f64;
        Ok(Self {
            event: event.into(),
            hits,
            trials,
            excluded,
            estimate,
            stderr: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        })
    }

    /// `hits / trials` exactly.
    pub fn rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.hits), BigInt::from(self.trials))
    }

    /// Share of samples that entered the estimate.
    pub fn resolution_rate(&self) -> f64 {
        self.trials as f64 / (self.trials + self.excluded) as f64
    }

    /// Binomial standard error under the hypothesis `p = expected`.
    pub fn sigma_under(&self, expected: f64) -> f64 {
        (expected * (1.0 - expected) / self.trials as f64).sqrt()
    }

    /// `|p̂ - expected|` in units of [`sigma_under`](Self::sigma_under).
    /// A degenerate hypothesis (`0` or `1`) gives `0` on exact agreement and
    /// infinity otherwise.
    pub fn sigma_distance(&self, expected: f64) -> f64 {
        let diff = (self.estimate - expected).abs();
        let sigma = self.sigma_under(expected);
        if sigma == 0.0 {
            return if diff == 0.0 { 0.0 } else { f64::INFINITY };
        }
        diff / sigma
    }
}

impl fmt::Display for EmpiricalEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}/{} = {:.6} ± {:.6}",
            self.event, self.hits, self.trials, self.estimate, self.stderr
        )
    }
}

/// Distance in σ between two estimates built from the same number of
/// independent samples of mutually exclusive events: the variance of the
/// difference of the two indicators is `p1 + p2 - (p1 - p2)^2`.
pub fn disjoint_difference_sigma(a: &EmpiricalEstimate, b: &EmpiricalEstimate) -> f64 {
    let n = a.trials.min(b.trials) as f64;
    let (p1, p2) = (a.estimate, b.estimate);
    let var = (p1 + p2 - (p1 - p2).powi(2)) / n;
    let diff = (p1 - p2).abs();
    if var <= 0.0 {
        return if diff == 0.0 { 0.0 } else { f64::INFINITY };
    }
    diff / var.sqrt()
}

fn non_truncated(samples: &[PointWindow]) -> impl Iterator<Item = &PointWindow> {
    samples.iter().filter(|x| !x.is_truncated())
}

/// Frequency of `[w]_k` among the non-truncated samples.
pub fn empirical_cylinder(samples: &[PointWindow], w: &Word, k: i64) -> Result<EmpiricalEstimate> {
    let mut hits = 0;
    let mut trials = 0;
    for x in non_truncated(samples) {
        let block = x.block(k, w.len()).ok_or(DyckError::OutOfWindow {
            index: if x.contains(k) {
                k + w.len() as i64 - 1
            } else {
                k
            },
            lo: x.lo(),
            hi: x.hi(),
        })?;
        trials += 1;
        if block == w.symbols() {
            hits += 1;
        }
    }
    let excluded = samples.len() as u64 - trials;
    EmpiricalEstimate::from_counts(format!("[{w}]_{k}"), hits, trials, excluded)
}

/// Difference of `[w]` at two positions, with a standard error estimated from
/// the per-sample differences (so correlation between the positions is
/// accounted for).
#[derive(Debug, Clone, Serialize)]
pub struct PairedDifference {
    pub event: String,
    pub first: EmpiricalEstimate,
    pub second: EmpiricalEstimate,
    pub difference: f64,
    pub stderr: f64,
}

impl PairedDifference {
    pub fn sigma_distance(&self) -> f64 {
        if self.stderr == 0.0 {
            return if self.difference == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
        }
        self.difference.abs() / self.stderr
    }
}

pub fn paired_cylinder_difference(
    samples: &[PointWindow],
    w: &Word,
    k1: i64,
    k2: i64,
) -> Result<PairedDifference> {
    let first = empirical_cylinder(samples, w, k1)?;
    let second = empirical_cylinder(samples, w, k2)?;
    let n = first.trials as f64;
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for x in non_truncated(samples) {
        let at = |k| x.block(k, w.len()) == Some(w.symbols());
        let d = f64::from(u8::from(at(k1))) - f64::from(u8::from(at(k2)));
        sum += d;
        sum_sq += d * d;
    }
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    Ok(PairedDifference {
        event: format!("[{w}]_{k1} - [{w}]_{k2}"),
        first,
        second,
        difference: mean,
        stderr: (var / n).sqrt(),
    })
}

/// A matching time that may lie outside the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatchingTime {
    Resolved(i64),
    Unresolved,
}

impl MatchingTime {
    pub fn resolved(self) -> Option<i64> {
        match self {
            MatchingTime::Resolved(k) => Some(k),
            MatchingTime::Unresolved => None,
        }
    }
}

impl fmt::Display for MatchingTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingTime::Resolved(k) => write!(f, "{k}"),
            MatchingTime::Unresolved => f.write_str("?"),
        }
    }
}

/// `a[j-1] = a_j`, `b[j-1] = b_j` for `j = 1 … j_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingTimes {
    pub a: Vec<MatchingTime>,
    pub b: Vec<MatchingTime>,
}

impl MatchingTimes {
    pub fn a(&self, j: usize) -> MatchingTime {
        self.a[j - 1]
    }

    pub fn b(&self, j: usize) -> MatchingTime {
        self.b[j - 1]
    }
}

/// `a_j = min{k >= 0 : H_{k+1} = -j}` and `b_j = max{k < 0 : H_k = -j}`
/// for `j = 1 … j_max`, as far as the window decides them.
///
/// `x_{a_j}` is the first closing letter reaching depth `-j` to the right of
/// the origin and `x_{b_j}` the opening letter it pairs with on the left.
pub fn matching_times(x: &PointWindow, j_max: usize) -> Result<MatchingTimes> {
    let h = height_cocycle(x)?;
    let at = |i: i64| h[(i - x.lo()) as usize];
    let mut a = vec![MatchingTime::Unresolved; j_max];
    let mut b = vec![MatchingTime::Unresolved; j_max];
    for k in 0..=x.hi() {
        let depth = -at(k + 1);
        if depth >= 1
            && (depth as usize) <= j_max
            && a[depth as usize - 1] == MatchingTime::Unresolved
        {
            a[depth as usize - 1] = MatchingTime::Resolved(k);
        }
    }
    for k in (x.lo()..0).rev() {
        let depth = -at(k);
        if depth >= 1
            && (depth as usize) <= j_max
            && b[depth as usize - 1] == MatchingTime::Unresolved
        {
            b[depth as usize - 1] = MatchingTime::Resolved(k);
        }
    }
    Ok(MatchingTimes { a, b })
}

/// Frequency of `x_{b_j} = x_{b_{j+c}}` for all `j ∈ J`, over non-truncated
/// samples in which every needed `b` resolves. The excluded count reports
/// the rest.
pub fn a_c_n_frequency(samples: &[PointWindow], c: i64, js: &[usize]) -> Result<EmpiricalEstimate> {
    if c == 0 {
        return Err(DyckError::InvalidArgument("c must be nonzero".into()));
    }
    let mut needed = Vec::with_capacity(2 * js.len());
    for &j in js {
        let partner = j as i64 + c;
        if j == 0 || partner < 1 {
            return Err(DyckError::InvalidArgument(format!(
                "b_{j} and b_{partner} must both have positive index"
            )));
        }
        needed.push(j);
        needed.push(partner as usize);
    }
    let j_max = needed.iter().copied().max().unwrap_or(0);
    let event = format!(
        "x_b(j) = x_b(j{c:+}) for j in {{{}}}",
        js.iter()
            .map(|j| j.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let mut hits = 0;
    let mut trials = 0;
    for x in non_truncated(samples) {
        let times = matching_times(x, j_max)?;
        let letters: Option<Vec<Symbol>> = (1..=j_max)
            .map(|j| times.b(j).resolved().and_then(|k| x.at(k)))
            .collect();
        // b_j for every j <= j_max resolves as soon as b_{j_max} does
        let Some(letters) = letters else { continue };
        trials += 1;
        let all = js
            .iter()
            .all(|&j| letters[j - 1] == letters[(j as i64 + c) as usize - 1]);
        if all {
            hits += 1;
        }
    }
    let excluded = samples.len() as u64 - trials;
    EmpiricalEstimate::from_counts(event, hits, trials, excluded)
}

/// Frequencies of `E ∩ [w]_k` and of its image `[u]_p ∩ [w']_k` under the
/// holonomy, where `E = [u]_p` must not overlap `[k, k + |w|)`.
pub fn holonomy_frequency_pair(
    samples: &[PointWindow],
    h: &Holonomy,
    u: &Word,
    p: i64,
) -> Result<(EmpiricalEstimate, EmpiricalEstimate)> {
    let (k, n) = (h.k(), h.len() as i64);
    if p < k + n && k < p + u.len() as i64 {
        return Err(DyckError::InvalidArgument(
            "the event overlaps the holonomy block".into(),
        ));
    }
    let count = |core: &Word| -> Result<EmpiricalEstimate> {
        let mut hits = 0;
        let mut trials = 0;
        for x in non_truncated(samples) {
            let (Some(e), Some(b)) = (x.block(p, u.len()), x.block(k, h.len())) else {
                return Err(DyckError::OutOfWindow {
                    index: p.min(k),
                    lo: x.lo(),
                    hi: x.hi(),
                });
            };
            trials += 1;
            if e == u.symbols() && b == core.symbols() {
                hits += 1;
            }
        }
        EmpiricalEstimate::from_counts(
            format!("[{u}]_{p} ∩ [{core}]_{k}"),
            hits,
            trials,
            samples.len() as u64 - trials,
        )
    };
    Ok((count(h.w())?, count(h.w_prime())?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailLabel {
    PlusInfinityLike,
    MinusInfinityLike,
    Undecided,
}

impl fmt::Display for TailLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TailLabel::PlusInfinityLike => "+inf-like",
            TailLabel::MinusInfinityLike => "-inf-like",
            TailLabel::Undecided => "undecided",
        })
    }
}

/// Tail summary of one half of a window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfWindow {
    /// Steps from the origin to the far end.
    pub steps: usize,
    pub running_min: i64,
    pub end_height: i64,
    pub label: TailLabel,
}

/// Liminf guess for both tails of a window. A finite window cannot decide a
/// liminf; `heuristic` is always `true` and travels with the record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowClassification {
    pub heuristic: bool,
    pub forward: HalfWindow,
    pub backward: HalfWindow,
}

fn label_half(heights: &[i64]) -> HalfWindow {
    let steps = heights.len() - 1;
    let end = *heights.last().unwrap();
    let min = *heights.iter().min().unwrap();
    let scale = (steps as f64).sqrt();
    let label = if steps == 0 {
        TailLabel::Undecided
    } else if end as f64 >= 3.0 * scale {
        TailLabel::PlusInfinityLike
    } else if (min as f64) <= -0.1 * scale {
        TailLabel::MinusInfinityLike
    } else {
        TailLabel::Undecided
    };
    HalfWindow {
        steps,
        running_min: min,
        end_height: end,
        label,
    }
}

/// Labels each tail from the height cocycle on that side of the origin: a
/// final height of at least `3√S` after `S` steps reads as escaping to `+∞`;
/// otherwise a running minimum at or below `-0.1√S` reads as `-∞`.
pub fn classify_window(x: &PointWindow) -> Result<WindowClassification> {
    let h = height_cocycle(x)?;
    let origin = (-x.lo()) as usize;
    let forward = label_half(&h[origin..]);
    let backward: Vec<i64> = h[..=origin].iter().rev().copied().collect();
    Ok(WindowClassification {
        heuristic: true,
        forward,
        backward: label_half(&backward),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{parse_word, AlphabetParams};

    fn x(lo: i64, text: &str) -> PointWindow {
        PointWindow::from_word(
            lo,
            &parse_word(text, &AlphabetParams::new(2).unwrap()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn matching_time_examples() {
        let t = matching_times(&x(-1, "a1 b1"), 2).unwrap();
        assert_eq!(t.a(1), MatchingTime::Resolved(0));
        assert_eq!(t.b(1), MatchingTime::Resolved(-1));
        assert_eq!(t.a(2), MatchingTime::Unresolved);
        let t = matching_times(&x(-2, "a1 a1 a2 a2 a2"), 3).unwrap();
        assert!(t.a.iter().all(|a| *a == MatchingTime::Unresolved));
        assert_eq!(t.b(2), MatchingTime::Resolved(-2));
    }

    #[test]
    fn empty_conjunction_is_certain() {
        let samples = vec![x(-1, "a1 b1"), x(-1, "b2 a1")];
        let e = a_c_n_frequency(&samples, 1, &[]).unwrap();
        assert_eq!((e.hits, e.trials), (2, 2));
        assert!(a_c_n_frequency(&samples, 0, &[1]).is_err());
    }

    #[test]
    fn cylinder_estimates() {
        let samples = vec![x(0, "a1 b1"), x(0, "a2 b2"), x(0, "a1 b1")];
        let e = empirical_cylinder(
            &samples,
            &parse_word("a1 b1", &AlphabetParams::default()).unwrap(),
            0,
        )
        .unwrap();
        assert_eq!((e.hits, e.trials), (2, 3));
        let bad = parse_word("a1 b2", &AlphabetParams::default()).unwrap();
        assert_eq!(empirical_cylinder(&samples, &bad, 0).unwrap().hits, 0);
        assert!(empirical_cylinder(&samples, &bad, 1).is_err());
    }

    #[test]
    fn classification() {
        let up = x(0, "a1 a1 a1 a1 a1 a1 a1 a1 a1");
        let c = classify_window(&up).unwrap();
        assert!(c.heuristic);
        assert_eq!(c.forward.label, TailLabel::PlusInfinityLike);
        assert_eq!(c.backward.label, TailLabel::Undecided);
        let down = x(-4, "a1 a1 a1 a1 b1");
        assert_eq!(
            classify_window(&down).unwrap().backward.label,
            TailLabel::MinusInfinityLike
        );
    }

    #[test]
    fn sigma_helpers() {
        let e = EmpiricalEstimate::from_counts("e", 50, 100, 0).unwrap();
        assert!(e.sigma_distance(0.5) < 1e-12);
        assert!((e.sigma_distance(0.4) - 0.1 / (0.24f64 / 100.0).sqrt()).abs() < 1e-9);
        assert_eq!(e.sigma_distance(0.0), f64::INFINITY);
        assert!(EmpiricalEstimate::from_counts("e", 0, 0, 3).is_err());
    }
}

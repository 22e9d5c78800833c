//! Exact block entropies of `μ̃`.
//!
//! Every cylinder value is `2^{-n} m^{-c}`, so block entropies are exact
//! combinations `p·log 2 + q·log m` with rational `p`, `q`; floating point
//! appears only in [`LogCombination::to_f64`].

use std::ops::Sub;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::alphabet::{AlphabetParams, Word};
use crate::error::{DyckError, Result};
use crate::language::LanguageWalk;
use crate::matching::varpi;
use crate::measure::{fraction_string, pow_ratio};

/// `log2 · log 2 + logm · log m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogCombination {
    pub log2: BigRational,
    pub logm: BigRational,
}

impl LogCombination {
    pub fn zero() -> Self {
        Self {
            log2: BigRational::zero(),
            logm: BigRational::zero(),
        }
    }

    pub fn to_f64(&self, m: u32) -> f64 {
        self.log2.to_f64().unwrap_or(f64::NAN) * std::f64::consts::LN_2
            + self.logm.to_f64().unwrap_or(f64::NAN) * f64::from(m).ln()
    }

    /// `log 2 + ½ log m`, the entropy of `μ̃`.
    pub fn mu_tilde_limit() -> Self {
        Self {
            log2: BigRational::one(),
            logm: BigRational::new(1.into(), 2.into()),
        }
    }
}

impl Sub for &LogCombination {
    type Output = LogCombination;

    fn sub(self, rhs: &LogCombination) -> LogCombination {
        LogCombination {
            log2: &self.log2 - &rhs.log2,
            logm: &self.logm - &rhs.logm,
        }
    }
}

impl Serialize for LogCombination {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LogCombination", 2)?;
        st.serialize_field("log2", &fraction_string(&self.log2))?;
        st.serialize_field("logm", &fraction_string(&self.logm))?;
        st.end()
    }
}

/// Exact statistics of the length-`n` cylinders.
#[derive(Debug, Clone)]
pub struct BlockStats {
    pub n: usize,
    /// `H_n = -Σ μ̃([w]) log μ̃([w])`.
    pub entropy: LogCombination,
    /// `Σ μ̃([w])`; equals 1.
    pub total_mass: BigRational,
    /// Mass of the words whose reversal has `ϖ >= 0`.
    pub p_nonneg: BigRational,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    pub n: usize,
    #[serde(rename = "H_n")]
    pub block_entropy: LogCombination,
    /// `H_{n+1} - H_n`, the conditional entropy of `x_0` given `n` past letters.
    #[serde(rename = "h_n")]
    pub conditional: LogCombination,
    #[serde(serialize_with = "ser_fraction")]
    pub p_nonneg: BigRational,
}

fn ser_fraction<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fraction_string(v))
}

impl EntropyReport {
    /// `(1 - p)(log 2 + ½ log m) + p log(2m)`.
    pub fn decomposition(&self) -> LogCombination {
        let p = &self.p_nonneg;
        let one = BigRational::one();
        let half = BigRational::new(1.into(), 2.into());
        LogCombination {
            log2: one.clone(),
            logm: (&one - p) * &half + p,
        }
    }

    pub fn decomposition_holds(&self) -> bool {
        self.decomposition() == self.conditional
    }
}

/// Largest `(m+1)^(n+1)` the enumerating routines accept.
pub const ENUMERATION_BUDGET: f64 = 4.0e7;

fn check_budget(n: usize, params: &AlphabetParams) -> Result<()> {
    let estimate = f64::from(params.m() + 1).powi(n as i32 + 1);
    if estimate > ENUMERATION_BUDGET {
        return Err(DyckError::BudgetExceeded {
            what: format!(
                "entropy at n = {n}, m = {} needs about {estimate:.2e} words",
                params.m()
            ),
        });
    }
    Ok(())
}

/// Enumerates `L(n)` and aggregates entropy, mass and `p_nonneg` exactly.
pub fn block_stats(n: usize, params: &AlphabetParams) -> Result<BlockStats> {
    check_budget(n.saturating_sub(1), params)?;
    // counts[c] = number of words with n1 + n2 = c; nonneg[c] likewise for ϖ >= 0
    let mut counts = vec![0u64; n + 1];
    let mut nonneg = vec![0u64; n + 1];
    let mut walk = LanguageWalk::new(n, params);
    while walk.advance() {
        let r = walk.reducer();
        let c = r.matched() + r.unmatched();
        counts[c] += 1;
        let past: Word = walk.word().iter().rev().copied().collect();
        if varpi(&past) >= 0 {
            nonneg[c] += 1;
        }
    }
    let m = u64::from(params.m());
    let mut entropy = LogCombination::zero();
    let mut total = BigRational::zero();
    let mut p_nonneg = BigRational::zero();
    for c in 0..=n {
        if counts[c] == 0 {
            continue;
        }
        let value = pow_ratio(2, n as u64) * pow_ratio(m, c as u64);
        let mass = &value * BigRational::from_integer(BigInt::from(counts[c]));
        entropy.log2 += &mass * BigRational::from_integer(BigInt::from(n));
        entropy.logm += &mass * BigRational::from_integer(BigInt::from(c));
        p_nonneg += &value * BigRational::from_integer(BigInt::from(nonneg[c]));
        total += mass;
    }
    Ok(BlockStats {
        n,
        entropy,
        total_mass: total,
        p_nonneg,
    })
}

/// Exact `H_n`, `h_n = H_{n+1} - H_n` and `p_nonneg` by enumeration.
pub fn entropy_exact(n: usize, params: &AlphabetParams) -> Result<EntropyReport> {
    check_budget(n + 1, params)?;
    let here = block_stats(n, params)?;
    let next = block_stats(n + 1, params)?;
    Ok(EntropyReport {
        n,
        conditional: &next.entropy - &here.entropy,
        block_entropy: here.entropy,
        p_nonneg: here.p_nonneg,
    })
}

/// Reports for `0..=n_max`, sharing block computations.
pub fn entropy_table(n_max: usize, params: &AlphabetParams) -> Result<Vec<EntropyReport>> {
    check_budget(n_max + 1, params)?;
    let stats: Vec<BlockStats> = (0..=n_max + 1)
        .map(|n| block_stats(n, params))
        .collect::<Result<_>>()?;
    Ok(stats
        .windows(2)
        .map(|pair| EntropyReport {
            n: pair[0].n,
            block_entropy: pair[0].entropy.clone(),
            conditional: &pair[1].entropy - &pair[0].entropy,
            p_nonneg: pair[0].p_nonneg.clone(),
        })
        .collect())
}

/// `h_n` for `0..=n_max` without enumerating words.
///
/// Under `μ̃` the α/β pattern is a sequence of fair coin flips and the bracket
/// indices only enter through `m^{-(n1+n2)}`, so `H_n = n log 2 +
/// (n - E[n1]) log m` where `E[n1]` is the mean number of matched pairs of
/// a fair ±1 walk. The walk's open-bracket count is propagated exactly.
pub fn conditional_entropy_by_walk(n_max: usize) -> Vec<LogCombination> {
    let half = BigRational::new(1.into(), 2.into());
    // dist[d] = P(open count = d)
    let mut dist: Vec<BigRational> = vec![BigRational::one()];
    let mut out = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        // next letter closes a pair iff it is a β and something is open
        let p_open = BigRational::one() - &dist[0];
        let closes = &half * &p_open;
        out.push(LogCombination {
            log2: BigRational::one(),
            logm: BigRational::one() - closes,
        });
        let mut next = vec![BigRational::zero(); dist.len() + 1];
        for (d, p) in dist.iter().enumerate() {
            let hp = &half * p;
            next[d + 1] += &hp;
            if d == 0 {
                next[0] += hp;
            } else {
                next[d - 1] += hp;
            }
        }
        while next.len() > 1 && next.last().is_some_and(|v| v.is_zero()) {
            next.pop();
        }
        dist = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> AlphabetParams {
        AlphabetParams::new(2).unwrap()
    }

    #[test]
    fn first_block_entropy_is_log_four() {
        let s = block_stats(1, &m2()).unwrap();
        // four letters at 1/4 each: log 2 + log m
        assert_eq!(s.entropy.log2, BigRational::one());
        assert_eq!(s.entropy.logm, BigRational::one());
        assert!((s.entropy.to_f64(2) - 4f64.ln()).abs() < 1e-12);
        assert!(s.total_mass.is_one());
    }

    #[test]
    fn identity_holds_small_n() {
        for m in [2, 3] {
            let p = AlphabetParams::new(m).unwrap();
            for r in entropy_table(5, &p).unwrap() {
                assert!(r.decomposition_holds(), "m={m} n={}", r.n);
            }
        }
    }

    #[test]
    fn walk_route_matches_enumeration() {
        let walk = conditional_entropy_by_walk(6);
        let table = entropy_table(6, &m2()).unwrap();
        for (r, h) in table.iter().zip(&walk) {
            assert_eq!(&r.conditional, h, "n={}", r.n);
        }
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            entropy_exact(40, &m2()),
            Err(DyckError::BudgetExceeded { .. })
        ));
    }
}

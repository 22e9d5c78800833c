//! Seeded samplers for `μ̃`, `μ_+` and `μ_-` on finite windows.
//!
//! Sample `i` of seed `s` is drawn from a ChaCha8 generator seeded with `s`
//! on stream `i`, so any sample can be regenerated alone and the result
//! never depends on how a run is partitioned.
//!
//! Left context is grown in doubling chunks until every closing letter in
//! the window has found its partner or `max_extension` letters have been
//! added. A sample still short of context is flagged as truncated; its
//! unmatched closers receive fresh uniform types, which keeps the law of the
//! emitted letters unchanged, but estimators drop it anyway.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alphabet::{AlphabetParams, Kind, Symbol};
use crate::coding::plan_coding;
use crate::collapse::{
    invert_plus_with, reflect_point, unresolved_plus, CollapseVariant, CollapsedLetter,
    CollapsedWindow,
};
use crate::error::{DyckError, Result};
use crate::window::{BinaryWindow, IndexWindow, PointWindow, Provenance, SamplerId};

const FIRST_CHUNK: usize = 64;

#[derive(Debug, Clone, Serialize)]
pub struct SamplerConfig {
    pub lo: i64,
    pub hi: i64,
    pub seed: u64,
    pub count: u64,
    /// Cap on the number of letters added left of `lo`.
    pub max_extension: usize,
    #[serde(skip)]
    pub params: AlphabetParams,
}

impl SamplerConfig {
    pub fn new(lo: i64, hi: i64, params: AlphabetParams) -> Result<Self> {
        let cfg = Self {
            lo,
            hi,
            seed: 7,
            count: 1000,
            max_extension: 10_000,
            params,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn count(mut self, count: u64) -> Self {
        self.count = count;
        self
    }

    pub fn max_extension(mut self, max_extension: usize) -> Self {
        self.max_extension = max_extension;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.lo > 0 || self.hi < 0 {
            return Err(DyckError::WindowExcludesOrigin {
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(())
    }

    fn rng(&self, sample: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(sample);
        rng
    }

    fn provenance(&self, sampler: SamplerId, sample: u64, truncated: bool) -> Provenance {
        Provenance {
            sampler,
            seed: Some(self.seed),
            sample: Some(sample),
            truncated,
        }
    }
}

/// Growth schedule for the left extension: 64, 64, 128, 256, … capped so the
/// total never exceeds `cap`.
fn next_chunk(added: usize, cap: usize) -> usize {
    let want = added.max(FIRST_CHUNK);
    want.min(cap - added)
}

fn draw_bits(rng: &mut ChaCha8Rng, n: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let word = rng.next_u64();
        let take = (n - out.len()).min(64);
        out.extend((0..take).map(|i| ((word >> i) & 1) as u8));
    }
    out
}

/// Sample `index` of `μ̃`: fair bits `z` and uniform types `a` pushed
/// through the coding map.
pub fn sample_mu_tilde_at(cfg: &SamplerConfig, index: u64) -> Result<PointWindow> {
    cfg.validate()?;
    let m = cfg.params.m();
    let mut rng = cfg.rng(index);
    let width = (cfg.hi - cfg.lo + 1) as usize;
    let mut z = BinaryWindow::new(cfg.lo, draw_bits(&mut rng, width))?;
    let mut added = 0;
    let mut plan = plan_coding(&z, cfg.lo, cfg.hi)?;
    while plan.unresolved() > 0 && added < cfg.max_extension {
        let chunk = next_chunk(added, cfg.max_extension);
        z.extend_left(&draw_bits(&mut rng, chunk));
        added += chunk;
        plan = plan_coding(&z, cfg.lo, cfg.hi)?;
    }
    let truncated = plan.unresolved() > 0;
    let a = match plan.gamma_range() {
        Some((g_lo, g_hi)) => {
            let indices = (g_lo..=g_hi).map(|_| rng.gen_range(1..=m)).collect();
            IndexWindow::new(g_lo, indices, &cfg.params)?
        }
        None => IndexWindow::new(0, Vec::new(), &cfg.params)?,
    };
    let symbols = plan.realize(&a, || Some(rng.gen_range(1..=m)))?;
    PointWindow::new(
        cfg.lo,
        symbols,
        cfg.provenance(SamplerId::Tilde, index, truncated),
    )
}

fn draw_omega(rng: &mut ChaCha8Rng, n: usize, m: u32) -> Vec<CollapsedLetter> {
    // uniform over m + 1 letters; value m stands for the bare β
    (0..n)
        .map(|_| match rng.gen_range(0..=m) {
            i if i < m => CollapsedLetter::Typed(Symbol::alpha(i + 1)),
            _ => CollapsedLetter::Bare(Kind::Beta),
        })
        .collect()
}

fn plus_on(
    cfg: &SamplerConfig,
    lo: i64,
    hi: i64,
    index: u64,
    sampler: SamplerId,
) -> Result<PointWindow> {
    let m = cfg.params.m();
    let mut rng = cfg.rng(index);
    let width = (hi - lo + 1) as usize;
    let mut w = CollapsedWindow::new(
        lo,
        draw_omega(&mut rng, width, m),
        CollapseVariant::OmegaPlusMinus,
    )?;
    let mut added = 0;
    while unresolved_plus(&w, lo, hi) > 0 && added < cfg.max_extension {
        let chunk = next_chunk(added, cfg.max_extension);
        w.extend_left(draw_omega(&mut rng, chunk, m));
        added += chunk;
    }
    let truncated = unresolved_plus(&w, lo, hi) > 0;
    invert_plus_with(
        &w,
        lo,
        hi,
        cfg.provenance(sampler, index, truncated),
        || Some(rng.gen_range(1..=m)),
    )
}

/// Sample `index` of `μ_+`: uniform letters over `{α_1, …, α_m, β}`, each
/// bare `β` typed by the `α` it closes.
pub fn sample_mu_plus_at(cfg: &SamplerConfig, index: u64) -> Result<PointWindow> {
    cfg.validate()?;
    plus_on(cfg, cfg.lo, cfg.hi, index, SamplerId::Plus)
}

/// Sample `index` of `μ_-`: the mirror `x_n = swap(y_{-n})` of a `μ_+`
/// sample `y` on `[-hi, -lo]`, which is the same as drawing uniform letters
/// over `{β_1, …, β_m, α}` and typing each bare `α` by the `β` closing it.
pub fn sample_mu_minus_at(cfg: &SamplerConfig, index: u64) -> Result<PointWindow> {
    cfg.validate()?;
    let y = plus_on(cfg, -cfg.hi, -cfg.lo, index, SamplerId::Minus)?;
    Ok(reflect_point(&y))
}

/// Stream of samples `0 .. count`.
#[derive(Debug, Clone)]
pub struct Samples {
    cfg: SamplerConfig,
    sampler: SamplerId,
    next: u64,
}

impl Samples {
    pub fn sampler(&self) -> SamplerId {
        self.sampler
    }
}

impl Iterator for Samples {
    type Item = PointWindow;

    fn next(&mut self) -> Option<PointWindow> {
        if self.next >= self.cfg.count {
            return None;
        }
        let i = self.next;
        self.next += 1;
        let draw = match self.sampler {
            SamplerId::Tilde => sample_mu_tilde_at(&self.cfg, i),
            SamplerId::Plus => sample_mu_plus_at(&self.cfg, i),
            SamplerId::Minus => sample_mu_minus_at(&self.cfg, i),
            SamplerId::Manual => unreachable!("streams are built by the sampler functions"),
        };
        Some(draw.expect("configuration validated when the stream was built"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.cfg.count - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Samples {}

fn stream(cfg: &SamplerConfig, sampler: SamplerId) -> Result<Samples> {
    cfg.validate()?;
    Ok(Samples {
        cfg: cfg.clone(),
        sampler,
        next: 0,
    })
}

pub fn sample_mu_tilde(cfg: &SamplerConfig) -> Result<Samples> {
    stream(cfg, SamplerId::Tilde)
}

pub fn sample_mu_plus(cfg: &SamplerConfig) -> Result<Samples> {
    stream(cfg, SamplerId::Plus)
}

pub fn sample_mu_minus(cfg: &SamplerConfig) -> Result<Samples> {
    stream(cfg, SamplerId::Minus)
}

/// Stream for a sampler chosen at run time.
pub fn sample_with(cfg: &SamplerConfig, sampler: SamplerId) -> Result<Samples> {
    if sampler == SamplerId::Manual {
        return Err(DyckError::InvalidArgument(
            "`manual` is not a sampler".into(),
        ));
    }
    stream(cfg, sampler)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::is_in_language;

    fn cfg(lo: i64, hi: i64) -> SamplerConfig {
        SamplerConfig::new(lo, hi, AlphabetParams::new(2).unwrap()).unwrap()
    }

    #[test]
    fn samples_are_reproducible_per_index() {
        let c = cfg(-3, 5).count(20);
        let all: Vec<_> = sample_mu_tilde(&c).unwrap().collect();
        assert_eq!(all.len(), 20);
        assert_eq!(all[13], sample_mu_tilde_at(&c, 13).unwrap());
        assert_ne!(all[0].symbols(), all[1].symbols());
        let other_seed: Vec<_> = sample_mu_tilde(&c.clone().seed(8)).unwrap().collect();
        assert_ne!(all, other_seed);
    }

    #[test]
    fn emitted_windows_are_valid() {
        let c = cfg(-4, 4).count(200);
        for s in [SamplerId::Tilde, SamplerId::Plus, SamplerId::Minus] {
            for x in sample_with(&c, s).unwrap() {
                assert_eq!((x.lo(), x.hi()), (-4, 4));
                assert!(is_in_language(&x.word()));
                assert_eq!(x.provenance().sampler, s);
            }
        }
    }

    #[test]
    fn zero_cap_truncates_lone_closers() {
        let c = cfg(0, 0).count(200).max_extension(0);
        let truncated = sample_mu_tilde(&c)
            .unwrap()
            .filter(|x| x.is_truncated())
            .count();
        // a β at 0 never finds its partner without left context
        let betas = sample_mu_tilde(&c)
            .unwrap()
            .filter(|x| x.symbols()[0].is_beta())
            .count();
        assert_eq!(truncated, betas);
        assert!(betas > 50);
    }

    #[test]
    fn origin_must_be_inside() {
        assert!(SamplerConfig::new(1, 3, AlphabetParams::default()).is_err());
    }
}

//! The acceptance suite: ten checks over exact values and seeded samples,
//! reported as TAP lines or JSON.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::alphabet::{parse_word, AlphabetParams, Word};
use crate::analysis::{
    a_c_n_frequency, disjoint_difference_sigma, empirical_cylinder, paired_cylinder_difference,
    EmpiricalEstimate,
};
use crate::entropy::{entropy_table, LogCombination};
use crate::error::{DyckError, Result};
use crate::holonomy::holonomy_invariance_exact;
use crate::language::{balanced_words, count_balanced, count_language, LanguageWalk};
use crate::measure::{
    balanced_cylinder_value, extension_additivity_check, minimal_extension_mass, mu_tilde_cylinder,
    pow_ratio,
};
use crate::sampler::{sample_mu_plus, sample_mu_tilde, sample_mu_tilde_at, SamplerConfig};
use crate::window::PointWindow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    /// Criteria that need no sampling.
    Exact,
    Sampling,
}

impl Suite {
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::All => (1..=10).collect(),
            Suite::Exact => vec![1, 2, 3, 4, 5, 10],
            Suite::Sampling => vec![6, 7, 8, 9],
        }
    }
}

impl FromStr for Suite {
    type Err = DyckError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "exact" => Ok(Suite::Exact),
            "sampling" => Ok(Suite::Sampling),
            other => Err(DyckError::InvalidArgument(format!(
                "unknown suite `{other}` (expected all, exact or sampling)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Samples per sampling criterion.
    pub samples: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 7,
            samples: 100_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub observed: String,
    pub expected: String,
    /// Largest σ-distance among the statistical comparisons, if any.
    pub sigma: Option<f64>,
    pub details: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn tap_line(&self) -> String {
        let mut line = format!(
            "{} {} - {} # observed: {}; expected: {}",
            if self.passed { "ok" } else { "not ok" },
            self.id,
            self.name,
            self.observed,
            self.expected
        );
        if let Some(s) = self.sigma {
            let _ = write!(line, "; max sigma {s:.2}");
        }
        line
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub options: VerifyOptions,
    pub results: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn tap(&self) -> String {
        let mut out = String::from("TAP version 13\n");
        let _ = writeln!(out, "1..{}", self.results.len());
        for r in &self.results {
            let _ = writeln!(out, "{}", r.tap_line());
            for d in &r.details {
                let _ = writeln!(out, "  # {d}");
            }
            let _ = writeln!(out, "  # time {:.1}s", r.elapsed.as_secs_f64());
        }
        out
    }
}

pub const CRITERION_NAMES: [&str; 10] = [
    "cylinder-formula exactness",
    "balanced law agreement",
    "holonomy invariance, exact",
    "entropy",
    "counting",
    "sampler/formula agreement",
    "sampler shift invariance",
    "mu_plus double-tail invariance",
    "null-set footprint",
    "minimal-extension mass convergence",
];

/// Samples shared by criteria 6 and 7.
#[derive(Default)]
struct Shared {
    tilde: Option<(Vec<PointWindow>, usize)>,
}

/// Runs criteria one at a time, reusing samples between the ones that
/// share a sampler configuration.
pub struct Session {
    options: VerifyOptions,
    shared: Shared,
}

impl Session {
    pub fn new(options: VerifyOptions) -> Self {
        Self {
            options,
            shared: Shared::default(),
        }
    }

    /// Runs criterion `id` (`1 ..= 10`).
    pub fn run(&mut self, id: u8) -> CriterionResult {
        run_shared(id, &self.options, &mut self.shared)
    }
}

pub fn run_suite(suite: Suite, options: &VerifyOptions) -> SuiteReport {
    let mut session = Session::new(options.clone());
    let results = suite
        .criteria()
        .into_iter()
        .map(|id| session.run(id))
        .collect();
    SuiteReport {
        options: options.clone(),
        results,
    }
}

/// Runs one criterion (`1 ..= 10`) on its own.
pub fn run_criterion(id: u8, options: &VerifyOptions) -> CriterionResult {
    Session::new(options.clone()).run(id)
}

fn run_shared(id: u8, options: &VerifyOptions, shared: &mut Shared) -> CriterionResult {
    assert!((1..=10).contains(&id), "criteria are numbered 1 to 10");
    let start = Instant::now();
    let outcome = match id {
        1 => cylinder_exactness(),
        2 => balanced_agreement(),
        3 => holonomy_exact(),
        4 => entropy(),
        5 => counting(),
        6 => sampler_agreement(options, shared),
        7 => shift_invariance(options, shared),
        8 => plus_invariance(options),
        9 => null_set(options),
        _ => extension_mass(),
    };
    let mut result = match outcome {
        Ok(r) => r,
        Err(e) => Outcome {
            passed: false,
            observed: format!("error: {e}"),
            expected: "no error".into(),
            sigma: None,
            details: Vec::new(),
        },
    };
    if let Some(s) = result.sigma {
        result.sigma = Some((s * 100.0).round() / 100.0);
    }
    CriterionResult {
        id,
        name: CRITERION_NAMES[id as usize - 1],
        passed: result.passed,
        observed: result.observed,
        expected: result.expected,
        sigma: result.sigma,
        details: result.details,
        elapsed: start.elapsed(),
    }
}

struct Outcome {
    passed: bool,
    observed: String,
    expected: String,
    sigma: Option<f64>,
    details: Vec<String>,
}

fn params(m: u32) -> AlphabetParams {
    AlphabetParams::new(m).expect("m >= 2")
}

fn cylinder_exactness() -> Result<Outcome> {
    let mut details = Vec::new();
    let mut failures = 0u64;
    let mut checked = 0u64;
    for (m, max_len) in [(2, 10), (3, 8)] {
        let p = params(m);
        let mut norm_fail = Vec::new();
        for n in 0..=max_len {
            let mut total = BigRational::zero();
            let mut walk = LanguageWalk::new(n, &p);
            while walk.advance() {
                let w = Word::from(walk.word());
                let (lhs, rhs) = extension_additivity_check(&w, &p)?;
                checked += 1;
                if lhs != rhs {
                    failures += 1;
                }
                total += lhs.value();
            }
            if !total.is_one() {
                norm_fail.push(n);
            }
        }
        failures += norm_fail.len() as u64;
        details.push(format!(
            "m={m}: additivity on |w| <= {max_len}, normalization for n <= {max_len}; \
             normalization failures at n = {norm_fail:?}"
        ));
    }
    Ok(Outcome {
        passed: failures == 0,
        observed: format!("{checked} words, {failures} failures"),
        expected: "0 failures".into(),
        sigma: None,
        details,
    })
}

fn balanced_agreement() -> Result<Outcome> {
    let mut checked = 0u64;
    let mut failures = 0u64;
    for m in [2, 3] {
        let p = params(m);
        for len in (0..=10).step_by(2) {
            for w in balanced_words(len, &p) {
                checked += 1;
                if balanced_cylinder_value(&w, &p)? != mu_tilde_cylinder(&w, 0, &p) {
                    failures += 1;
                }
            }
        }
    }
    Ok(Outcome {
        passed: failures == 0 && checked > 0,
        observed: format!("{checked} balanced words, {failures} mismatches"),
        expected: "0 mismatches".into(),
        sigma: None,
        details: vec!["m = 2 and m = 3, |w| <= 10".into()],
    })
}

fn holonomy_exact() -> Result<Outcome> {
    let r = holonomy_invariance_exact(8, 4, &params(2));
    let mut details = vec![format!(
        "{} classes, {} ordered pairs, {} contexts (s, t)",
        r.classes, r.pairs, r.contexts
    )];
    details.extend(r.violations.iter().map(|v| format!("violation: {v}")));
    Ok(Outcome {
        passed: r.holds(),
        observed: format!(
            "{} comparisons, {} violations",
            r.comparisons,
            r.violations.len()
        ),
        expected: "0 violations".into(),
        sigma: None,
        details,
    })
}

const ENTROPY_TOLERANCE: f64 = 0.03;

fn entropy() -> Result<Outcome> {
    let table = entropy_table(11, &params(2))?;
    let limit = LogCombination::mu_tilde_limit().to_f64(2);
    let log3 = 3f64.ln();
    let identity = table.iter().all(|r| r.decomposition_holds());
    let hs: Vec<f64> = table.iter().map(|r| r.conditional.to_f64(2)).collect();
    let h11 = hs[11];
    let near = (h11 - limit).abs() <= ENTROPY_TOLERANCE;
    let above: Vec<usize> = (0..hs.len()).filter(|&n| hs[n] >= log3).collect();
    let mut details = vec![
        format!("decomposition identity exact for n = 0..=11: {identity}"),
        format!(
            "|h_11 - {limit:.4}| = {:.4} (tolerance {ENTROPY_TOLERANCE})",
            (h11 - limit).abs()
        ),
        format!("n with h_n >= log 3 = {log3:.4}: {above:?}"),
    ];
    for (r, h) in table.iter().zip(&hs) {
        details.push(format!(
            "h_{} = {} log2 + {} logm = {h:.6}",
            r.n,
            crate::measure::fraction_string(&r.conditional.log2),
            crate::measure::fraction_string(&r.conditional.logm)
        ));
    }
    Ok(Outcome {
        passed: identity && near && above.is_empty(),
        observed: format!(
            "identity {identity}, h_11 = {h11:.4}, {} n with h_n >= log 3",
            above.len()
        ),
        expected: format!(
            "identity true, h_11 within {ENTROPY_TOLERANCE} of {limit:.4}, all h_n < {log3:.4}"
        ),
        sigma: None,
        details,
    })
}

fn counting() -> Result<Outcome> {
    let mut details = Vec::new();
    let mut exact = true;
    for (m, max_half) in [(2u32, 6u64), (3, 4)] {
        let p = params(m);
        for half in 0..=max_half {
            let mut brute = 0u64;
            let mut walk = LanguageWalk::new(2 * half as usize, &p);
            while walk.advance() {
                if walk.reducer().normal_form().is_identity() {
                    brute += 1;
                }
            }
            let formula = count_balanced(half, &p);
            if formula != brute.into() {
                exact = false;
            }
            details.push(format!(
                "m={m} N={half}: formula {formula}, enumeration {brute}"
            ));
        }
    }
    let n = 14;
    let size = count_language(n, &params(2));
    let rate = (size as f64).ln() / n as f64;
    let rel = rate / 3f64.ln() - 1.0;
    details.push(format!(
        "|L(14)| = {size}, log|L|/14 = {rate:.5}, log 3 = {:.5}, relative gap {:+.2}%",
        3f64.ln(),
        100.0 * rel
    ));
    let growth = rel.abs() <= 0.05;
    Ok(Outcome {
        passed: exact && growth,
        observed: format!(
            "balanced counts exact: {exact}; growth-rate gap {:+.2}%",
            100.0 * rel
        ),
        expected: "exact; gap within 5%".into(),
        sigma: None,
        details,
    })
}

fn truncation_note(truncated: usize, total: usize) -> String {
    format!(
        "truncated samples: {truncated}/{total} ({:.4}%)",
        100.0 * truncated as f64 / total.max(1) as f64
    )
}

fn tilde_samples<'a>(
    options: &VerifyOptions,
    shared: &'a mut Shared,
) -> Result<&'a (Vec<PointWindow>, usize)> {
    if shared.tilde.is_none() {
        let cfg = SamplerConfig::new(0, 6, params(2))?
            .seed(options.seed)
            .count(options.samples)
            .max_extension(1_000_000);
        let samples: Vec<PointWindow> = sample_mu_tilde(&cfg)?.collect();
        let truncated = samples.iter().filter(|x| x.is_truncated()).count();
        shared.tilde = Some((samples, truncated));
    }
    Ok(shared.tilde.as_ref().expect("filled above"))
}

fn words_of_length(n: usize, p: &AlphabetParams) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                p.alphabet().into_iter().map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

fn sampler_agreement(options: &VerifyOptions, shared: &mut Shared) -> Result<Outcome> {
    let p = params(2);
    let (samples, truncated) = tilde_samples(options, shared)?;
    let mut details = vec![
        format!(
            "mu_tilde, window [0, 6], seed {}, max extension 10^6",
            options.seed
        ),
        truncation_note(*truncated, samples.len()),
    ];
    let mut cylinders = 0;
    let mut outside = 0;
    let mut worst = 0f64;
    for len in 1..=2 {
        for w in words_of_length(len, &p) {
            let exact = mu_tilde_cylinder(&w, 0, &p);
            if exact.is_zero() {
                continue;
            }
            cylinders += 1;
            let est = empirical_cylinder(samples, &w, 0)?;
            let d = est.sigma_distance(exact.to_f64());
            worst = worst.max(d);
            if d > 3.0 {
                outside += 1;
            }
            details.push(format!(
                "{est} vs {} ({d:.2} sigma)",
                exact.fraction_string()
            ));
        }
    }
    Ok(Outcome {
        passed: cylinders == 18 && outside <= 2,
        observed: format!("{cylinders} cylinders, {outside} beyond 3 sigma"),
        expected: "18 cylinders, at most 2 beyond 3 sigma".into(),
        sigma: Some(worst),
        details,
    })
}

fn shift_invariance(options: &VerifyOptions, shared: &mut Shared) -> Result<Outcome> {
    let p = params(2);
    let (samples, truncated) = tilde_samples(options, shared)?;
    let mut details = vec![truncation_note(*truncated, samples.len())];
    let mut outside = 0;
    let mut worst = 0f64;
    let words = words_of_length(2, &p);
    for w in &words {
        let d = paired_cylinder_difference(samples, w, 0, 5)?;
        let s = d.sigma_distance();
        worst = worst.max(s);
        if s > 3.0 {
            outside += 1;
        }
        details.push(format!(
            "[{w}]: {:.6} at 0, {:.6} at 5 ({s:.2} sigma)",
            d.first.estimate, d.second.estimate
        ));
    }
    Ok(Outcome {
        passed: outside == 0,
        observed: format!("{} words, {outside} beyond 3 sigma", words.len()),
        expected: "all within 3 sigma".into(),
        sigma: Some(worst),
        details,
    })
}

fn plus_invariance(options: &VerifyOptions) -> Result<Outcome> {
    let p = params(2);
    let cfg = SamplerConfig::new(0, 2, p)?
        .seed(options.seed)
        .count(options.samples)
        .max_extension(10_000);
    let samples: Vec<PointWindow> = sample_mu_plus(&cfg)?.collect();
    let truncated = samples.iter().filter(|x| x.is_truncated()).count();
    let rate = truncated as f64 / samples.len().max(1) as f64;
    let mut details = vec![
        format!(
            "mu_plus, window [0, 2], seed {}, max extension 10^4",
            options.seed
        ),
        truncation_note(truncated, samples.len()),
    ];
    let pairs = [("a1 b1", "a2 b2"), ("a1 a1 b1", "a1 a2 b2")];
    let mut worst = 0f64;
    for (u, v) in pairs {
        let u = parse_word(u, &p)?;
        let v = parse_word(v, &p)?;
        let eu = empirical_cylinder(&samples, &u, 0)?;
        let ev = empirical_cylinder(&samples, &v, 0)?;
        let s = disjoint_difference_sigma(&eu, &ev);
        worst = worst.max(s);
        details.push(format!("{eu}; {ev}; {s:.2} sigma"));
    }
    Ok(Outcome {
        passed: worst <= 3.0 && rate < 0.01,
        observed: format!(
            "max difference {worst:.2} sigma, truncation {:.4}%",
            100.0 * rate
        ),
        expected: "within 3 sigma, truncation below 1%".into(),
        sigma: Some(worst),
        details,
    })
}

fn null_set(options: &VerifyOptions) -> Result<Outcome> {
    const BATCH: u64 = 10_000;
    let p = params(2);
    let combos: Vec<(i64, Vec<usize>)> = [1i64, 2]
        .iter()
        .flat_map(|&c| {
            [vec![1], vec![1, 2], vec![1, 2, 3]]
                .into_iter()
                .map(move |j| (c, j))
        })
        .collect();
    // (hits, trials, excluded) per combination, merged over batches
    let mut tallies = vec![(0u64, 0u64, 0u64); combos.len()];
    let cfg = SamplerConfig::new(-128, 0, p)?
        .seed(options.seed)
        .max_extension(1 << 12);
    let mut truncated = 0usize;
    let mut start = 0;
    while start < options.samples {
        let count = BATCH.min(options.samples - start);
        let batch: Vec<PointWindow> = (start..start + count)
            .map(|i| sample_mu_tilde_at(&cfg, i))
            .collect::<Result<_>>()?;
        truncated += batch.iter().filter(|x| x.is_truncated()).count();
        for ((c, js), t) in combos.iter().zip(tallies.iter_mut()) {
            match a_c_n_frequency(&batch, *c, js) {
                Ok(e) => {
                    t.0 += e.hits;
                    t.1 += e.trials;
                    t.2 += e.excluded;
                }
                Err(DyckError::InsufficientSamples) => t.2 += batch.len() as u64,
                Err(e) => return Err(e),
            }
        }
        start += count;
    }
    let mut details = vec![
        format!(
            "mu_tilde, window [-128, 0], seed {}, max extension 2^12",
            options.seed
        ),
        truncation_note(truncated, options.samples as usize),
    ];
    let mut worst = 0f64;
    let mut all_ok = true;
    for ((c, js), (hits, trials, excluded)) in combos.iter().zip(&tallies) {
        let expected = pow_ratio(2, js.len() as u64);
        let expected_f = 0.5f64.powi(js.len() as i32);
        let est =
            EmpiricalEstimate::from_counts(format!("c={c} J={js:?}"), *hits, *trials, *excluded)?;
        let d = est.sigma_distance(expected_f);
        worst = worst.max(d);
        all_ok &= d <= 3.0;
        details.push(format!(
            "{est} vs {} ({d:.2} sigma), resolution rate {:.4}",
            crate::measure::fraction_string(&expected),
            est.resolution_rate()
        ));
    }
    Ok(Outcome {
        passed: all_ok,
        observed: format!("{} combinations, max {worst:.2} sigma", combos.len()),
        expected: "all within 3 sigma of 2^-|J|".into(),
        sigma: Some(worst),
        details,
    })
}

/// Total length at which the extension sums are reported.
pub const EXTENSION_MAX_LEN: usize = 1024;

fn extension_mass() -> Result<Outcome> {
    let p = params(2);
    let mut details = Vec::new();
    let mut all_ok = true;
    let twenty = BigRational::from_integer(BigInt::from(20));
    for text in ["a1", "b1", "a1 a2"] {
        let a = parse_word(text, &p)?;
        let target = mu_tilde_cylinder(&a, 0, &p);
        let rows = minimal_extension_mass(&a, EXTENSION_MAX_LEN, &p)?;
        let increasing = rows
            .windows(2)
            .all(|r| r[1].partial_sum.value() > r[0].partial_sum.value());
        let reached = rows
            .iter()
            .find(|r| r.residual.value() * &twenty <= *target.value())
            .map(|r| r.length);
        let last = rows.last().ok_or(DyckError::InsufficientSamples)?;
        let ok = increasing && reached.is_some() && last.residual.value() >= &BigRational::zero();
        all_ok &= ok;
        details.push(format!(
            "a = [{text}]: target {}, strictly increasing {increasing}, gap below 5% from length {}, \
             relative gap at {EXTENSION_MAX_LEN}: {:.4}%",
            target.fraction_string(),
            reached.map_or("never".to_string(), |l| l.to_string()),
            100.0 * last.residual.to_f64() / target.to_f64()
        ));
        details.push(format!(
            "a = [{text}]: exact residual at {EXTENSION_MAX_LEN} = {}",
            last.residual.fraction_string()
        ));
    }
    Ok(Outcome {
        passed: all_ok,
        observed: if all_ok {
            "strictly increasing, within 5% for all three".into()
        } else {
            "see details".into()
        },
        expected: format!("strictly increasing, within 5% by length {EXTENSION_MAX_LEN}"),
        sigma: None,
        details,
    })
}

//! Exact cylinder values of the coin-flip coding measure `μ̃` and of the
//! balanced-cylinder law.
//!
//! For `w` in the language with `n1` matched pairs and `n2` unmatched letters,
//! `μ̃([w]_k) = 2^{-|w|} · m^{-(n1 + n2)}`, independent of `k`. Words outside the
//! language have empty cylinders.

use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::alphabet::{AlphabetParams, Word};
use crate::error::{DyckError, Result};
use crate::language::{extension_count, minimal_balanced_extensions};
use crate::monoid::{reduce, NormalForm, Reducer};

/// `2^{-pow2} · m^{-powm}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Monomial {
    pub pow2: u64,
    pub powm: u64,
}

/// Exact nonnegative rational, optionally carrying its monomial form.
#[derive(Debug, Clone)]
pub struct MeasureValue {
    value: BigRational,
    monomial: Option<Monomial>,
}

pub fn pow_ratio(base: u64, exp: u64) -> BigRational {
    BigRational::new(
        BigInt::one(),
        BigInt::from(BigUint::from(base).pow(exp as u32)),
    )
}

impl MeasureValue {
    pub fn zero() -> Self {
        Self {
            value: BigRational::zero(),
            monomial: None,
        }
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial { pow2: 0, powm: 0 }, 2)
    }

    pub fn from_monomial(mono: Monomial, m: u32) -> Self {
        let value = pow_ratio(2, mono.pow2) * pow_ratio(u64::from(m), mono.powm);
        Self {
            value,
            monomial: Some(mono),
        }
    }

    pub fn from_rational(value: BigRational) -> Self {
        Self {
            value,
            monomial: None,
        }
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn monomial(&self) -> Option<Monomial> {
        self.monomial
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    /// `num/den`, or just the integer when the denominator is 1.
    pub fn fraction_string(&self) -> String {
        fraction_string(&self.value)
    }
}

pub fn fraction_string(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

impl PartialEq for MeasureValue {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for MeasureValue {}

impl PartialOrd for MeasureValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MeasureValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value.cmp(&other.value)
    }
}

impl Add for &MeasureValue {
    type Output = MeasureValue;

    fn add(self, rhs: &MeasureValue) -> MeasureValue {
        MeasureValue::from_rational(&self.value + &rhs.value)
    }
}

impl Add for MeasureValue {
    type Output = MeasureValue;

    fn add(self, rhs: MeasureValue) -> MeasureValue {
        &self + &rhs
    }
}

impl std::iter::Sum for MeasureValue {
    fn sum<I: Iterator<Item = MeasureValue>>(iter: I) -> Self {
        MeasureValue::from_rational(iter.fold(BigRational::zero(), |acc, v| acc + v.value))
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fraction_string())
    }
}

impl Serialize for MeasureValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MeasureValue", 3)?;
        st.serialize_field("exact", &self.fraction_string())?;
        st.serialize_field("decimal", &self.to_f64())?;
        st.serialize_field("monomial", &self.monomial)?;
        st.end()
    }
}

/// Monomial of `μ̃` for a reduction state, `None` when the word is zero.
pub fn mu_tilde_monomial(state: &Reducer) -> Option<Monomial> {
    if state.is_zero() {
        return None;
    }
    Some(Monomial {
        pow2: state.len() as u64,
        powm: (state.matched() + state.unmatched()) as u64,
    })
}

/// `μ̃([w]_position)`. The measure is shift invariant, so `position` does not
/// enter the value.
pub fn mu_tilde_cylinder(w: &Word, _position: i64, params: &AlphabetParams) -> MeasureValue {
    let mut r = Reducer::new();
    r.feed(w);
    match mu_tilde_monomial(&r) {
        Some(mono) => MeasureValue::from_monomial(mono, params.m()),
        None => MeasureValue::zero(),
    }
}

/// `(2√m)^{-|w|}` for a balanced word, which is rational since `|w|` is even.
pub fn balanced_cylinder_value(w: &Word, params: &AlphabetParams) -> Result<MeasureValue> {
    if !reduce(w).is_identity() {
        return Err(DyckError::NotBalanced(w.to_string()));
    }
    let half = (w.len() / 2) as u64;
    Ok(MeasureValue::from_monomial(
        Monomial {
            pow2: w.len() as u64,
            powm: half,
        },
        params.m(),
    ))
}

/// `(μ̃([w]), Σ_σ μ̃([wσ]))` over all one-letter right extensions.
pub fn extension_additivity_check(
    w: &Word,
    params: &AlphabetParams,
) -> Result<(MeasureValue, MeasureValue)> {
    if reduce(w).is_zero() {
        return Err(DyckError::NotInLanguage(w.to_string()));
    }
    let lhs = mu_tilde_cylinder(w, 0, params);
    let mut ext = w.clone();
    let rhs = params
        .alphabet()
        .into_iter()
        .map(|s| {
            ext.push(s);
            let v = mu_tilde_cylinder(&ext, 0, params);
            ext = Word::from(&ext.symbols()[..w.len()]);
            v
        })
        .sum();
    Ok((lhs, rhs))
}

fn ser_display<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// One row of [`minimal_extension_mass`].
#[derive(Debug, Clone, Serialize)]
pub struct MassRow {
    pub length: usize,
    /// Extensions of exactly this total length.
    #[serde(serialize_with = "ser_display")]
    pub extensions: BigUint,
    pub partial_sum: MeasureValue,
    /// `μ̃([a]) - partial_sum`.
    pub residual: MeasureValue,
}

/// Partial sums of balanced-cylinder values over the minimal balanced
/// extensions of `a`, grouped by total length up to `max_len`.
///
/// Extensions are counted, not listed: all extensions of one length share
/// the value `(2√m)^{-len}` and their number is [`extension_count`]. The
/// listing in [`minimal_balanced_extensions`] agrees with these counts.
pub fn minimal_extension_mass(
    a: &Word,
    max_len: usize,
    params: &AlphabetParams,
) -> Result<Vec<MassRow>> {
    let unmatched = match reduce(a) {
        NormalForm::Zero => return Err(DyckError::NotInLanguage(a.to_string())),
        nf => nf.unmatched().unwrap_or(0),
    };
    let target = mu_tilde_cylinder(a, 0, params).value().clone();
    let base = a.len() + unmatched;
    let mut rows = Vec::new();
    let mut partial = BigRational::zero();
    let four_m = 4 * u64::from(params.m());
    let mut len = base;
    let mut half = 0u64;
    while len <= max_len {
        let count = extension_count(unmatched, half, params);
        if unmatched == 0 && half > 0 {
            break;
        }
        // value per extension: (4m)^{-len/2}
        let each = pow_ratio(four_m, (len / 2) as u64);
        partial += BigRational::from_integer(BigInt::from(count.clone())) * each;
        rows.push(MassRow {
            length: len,
            extensions: count,
            partial_sum: MeasureValue::from_rational(partial.clone()),
            residual: MeasureValue::from_rational(&target - &partial),
        });
        len += 2;
        half += 1;
    }
    Ok(rows)
}

/// Same partial sums, computed by listing every extension and summing
/// [`balanced_cylinder_value`]. Only usable for small `max_len`.
pub fn minimal_extension_mass_by_listing(
    a: &Word,
    max_len: usize,
    params: &AlphabetParams,
) -> Result<Vec<(usize, MeasureValue)>> {
    let exts = minimal_balanced_extensions(a, max_len, params)?;
    let mut out: Vec<(usize, MeasureValue)> = Vec::new();
    let mut partial = MeasureValue::zero();
    for e in &exts {
        let w = e.apply(a);
        partial = &partial + &balanced_cylinder_value(&w, params)?;
        match out.last_mut() {
            Some((len, v)) if *len == w.len() => *v = partial.clone(),
            _ => out.push((w.len(), partial.clone())),
        }
    }
    Ok(out)
}

//! The certification core: the Möbius realizability criterion, fix/orbit
//! transforms, witness reporting, and the exponent cross-check identity.
//!
//! A prefix (a_1, …, a_N) passes when (μ*a)(n) is non-negative and divisible
//! by n for every n ≤ N. The quotient (μ*a)(n)/n is then the number of
//! closed orbits of length n of any realizing map.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{self, Sequence};
use crate::error::Error;

/// Closed-orbit counts indexed from 1: entry n is the number of orbits of
/// length exactly n. Entries are validated non-negative on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCounts {
    counts: Vec<BigInt>,
}

impl OrbitCounts {
    /// Wraps a non-empty list of non-negative counts.
    pub fn new(counts: Vec<BigInt>) -> Result<Self, Error> {
        if counts.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (i, c) in counts.iter().enumerate() {
            if c.is_negative() {
                return Err(Error::NegativeOrbitCount { index: i + 1 });
            }
        }
        Ok(Self { counts })
    }

    /// Convenience constructor from machine integers.
    pub fn from_u64s(counts: &[u64]) -> Result<Self, Error> {
        Self::new(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    /// Always false: the empty prefix is unrepresentable.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// All counts; slot 0 holds orb(1).
    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<BigInt> {
        self.counts
    }
}

/// Which clause of the criterion a prefix violates first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    /// The convolution value is negative (and divisible by its index).
    Negative,
    /// The index does not divide the convolution value.
    NotDivisible,
}

impl FailureReason {
    fn label(self) -> &'static str {
        match self {
            Self::Negative => "negative",
            Self::NotDivisible => "not-divisible",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Verdict of a realizability check.
///
/// `RealizablePrefix` certifies the checked prefix only; it says nothing
/// about any extension. A failure carries the smallest violating index, the
/// convolution value there, and the violated clause. When a value is both
/// negative and not divisible, the reason is `NotDivisible`: divisibility is
/// checked first so reports are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessReport {
    RealizablePrefix,
    Failed {
        index: usize,
        value: BigInt,
        reason: FailureReason,
    },
}

#[derive(Serialize)]
struct ReportRepr<'a> {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    convolution_value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
}

impl WitnessReport {
    pub fn is_realizable_prefix(&self) -> bool {
        matches!(self, Self::RealizablePrefix)
    }

    /// JSON object form; big integers are rendered as decimal strings.
    pub fn to_json_string(&self) -> String {
        let repr = match self {
            Self::RealizablePrefix => ReportRepr {
                status: "realizable-prefix",
                first_failure_index: None,
                convolution_value: None,
                reason: None,
            },
            Self::Failed {
                index,
                value,
                reason,
            } => ReportRepr {
                status: "failed",
                first_failure_index: Some(*index),
                convolution_value: Some(value.to_string()),
                reason: Some(reason.label()),
            },
        };
        serde_json::to_string(&repr).expect("plain fields always serialize")
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RealizablePrefix => f.write_str("realizable-prefix"),
            Self::Failed {
                index,
                value,
                reason: FailureReason::Negative,
            } => write!(
                f,
                "failed at n = {index}: convolution value {value} is negative"
            ),
            Self::Failed {
                index,
                value,
                reason: FailureReason::NotDivisible,
            } => write!(
                f,
                "failed at n = {index}: convolution value {value} is not divisible by {index}"
            ),
        }
    }
}

fn first_violation(convolution: &Sequence) -> Option<WitnessReport> {
    for (i, v) in convolution.terms().iter().enumerate() {
        let n = i + 1;
        if !v.is_multiple_of(&BigInt::from(n)) {
            return Some(WitnessReport::Failed {
                index: n,
                value: v.clone(),
                reason: FailureReason::NotDivisible,
            });
        }
        if v.is_negative() {
            return Some(WitnessReport::Failed {
                index: n,
                value: v.clone(),
                reason: FailureReason::Negative,
            });
        }
    }
    None
}

/// Checks the criterion over the whole prefix.
pub fn check_realizable(a: &Sequence) -> WitnessReport {
    first_violation(&arith::mobius_convolve(a)).unwrap_or(WitnessReport::RealizablePrefix)
}

/// Recovers orbit counts orb(n) = (μ*a)(n)/n, or the failed report when the
/// prefix is not realizable. Division happens only after the divisibility
/// check, so it is exact.
pub fn orbit_counts(a: &Sequence) -> Result<OrbitCounts, WitnessReport> {
    let convolution = arith::mobius_convolve(a);
    if let Some(report) = first_violation(&convolution) {
        return Err(report);
    }
    let counts = convolution
        .into_terms()
        .into_iter()
        .enumerate()
        .map(|(i, v)| v / BigInt::from(i + 1))
        .collect();
    Ok(OrbitCounts { counts })
}

/// Rebuilds fix counts a_n = Σ_{d|n} d·orb(d).
pub fn fix_from_orbits(o: &OrbitCounts) -> Sequence {
    let n = o.len();
    let mut out = vec![BigInt::zero(); n];
    for d in 1..=n {
        let c = &o.counts[d - 1];
        if c.is_zero() {
            continue;
        }
        let weighted = c * BigInt::from(d);
        let mut m = d;
        while m <= n {
            out[m - 1] += &weighted;
            m += d;
        }
    }
    Sequence::new(out).expect("orbit counts are non-empty")
}

/// Evaluates both sides of the exponent identity and returns them as
/// (e, (μ*b)(n)).
///
/// Here e is the literal double sum Σ_{m | n^k, δ|m} Σ_{d|m} μ(m/d) a_d with
/// δ = n^k / (p_1⋯p_r)^{k−1} over the distinct primes p_i of n, and b is the
/// sampled sequence b_m = a_{m^k}. The two agree for realizable prefixes;
/// callers assert the equality.
pub fn e_sum_cross_check(a: &Sequence, k: u32, n: u64) -> Result<(BigInt, BigInt), Error> {
    if k == 0 {
        return Err(Error::CrossCheckExponentZero);
    }
    if n < 2 {
        return Err(Error::CrossCheckIndexTooSmall);
    }
    let nk = n.checked_pow(k).ok_or(Error::IndexOverflow { index: n })?;
    let required = usize::try_from(nk).map_err(|_| Error::IndexOverflow { index: n })?;
    if a.len() < required {
        return Err(Error::InsufficientPrefix {
            required,
            available: a.len(),
        });
    }

    let radical: u64 = arith::prime_factors(n)?.iter().map(|&(p, _)| p).product();
    let radical_power = radical
        .checked_pow(k - 1)
        .ok_or(Error::IndexOverflow { index: n })?;
    debug_assert_eq!(nk % radical_power, 0);
    let delta = nk / radical_power;

    let term = |d: u64| a.term(d as usize).expect("d <= n^k <= len");

    let mut e = BigInt::zero();
    for m in arith::divisors(nk)? {
        if m % delta != 0 {
            continue;
        }
        for d in arith::divisors(m)? {
            match arith::mobius(m / d)? {
                0 => {}
                1 => e += term(d),
                _ => e -= term(d),
            }
        }
    }

    let mut mb = BigInt::zero();
    for m in arith::divisors(n)? {
        let sampled = term(m.pow(k));
        match arith::mobius(n / m)? {
            0 => {}
            1 => mb += sampled,
            _ => mb -= sampled,
        }
    }

    Ok((e, mb))
}

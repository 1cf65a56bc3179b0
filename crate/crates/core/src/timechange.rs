//! Time-changes h: ℕ→ℕ acting on sequences by (a_n) ↦ (a_{h(n)}): symbolic
//! construction, evaluation, application, composition, the polynomial
//! counterexample search, and seeded preservation suites.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, Sequence};
use crate::error::Error;
use crate::realizability::{self, OrbitCounts, WitnessReport};
use crate::seqgen;

/// Symbolic description of a map h: ℕ→ℕ.
///
/// Use the constructors rather than building variants directly; they
/// validate the per-variant invariants (prime parameters, positive table
/// entries, non-zero monomial coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TimeChange {
    /// h(n) = coeff · n^exponent; exponent 0 is a constant map.
    Monomial { coeff: u64, exponent: u32 },
    /// Integer coefficients, constant term first. Positivity of values is
    /// validated at each evaluated index, not globally.
    Polynomial { coeffs: Vec<i64> },
    /// h(n) = p·n when p | n, else n.
    PrimeMultiplier { prime: u64 },
    /// h(n) = n · ∏ {p in the set : p | n}; equals the prime-wise
    /// composition of the individual maps in any order.
    PrimeSetMultiplier { primes: Vec<u64> },
    /// Explicit values for n = 1..=len; undefined beyond.
    Table { values: Vec<u64> },
    /// outer ∘ inner: evaluates as outer(inner(n)).
    Composition {
        outer: Box<TimeChange>,
        inner: Box<TimeChange>,
    },
}

impl TimeChange {
    pub fn monomial(coeff: u64, exponent: u32) -> Result<Self, Error> {
        if coeff == 0 {
            return Err(Error::ZeroMonomialCoefficient);
        }
        Ok(Self::Monomial { coeff, exponent })
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros. The zero polynomial is representable but fails on evaluation.
    pub fn polynomial(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Self::Polynomial { coeffs }
    }

    pub fn prime_multiplier(prime: u64) -> Result<Self, Error> {
        if !arith::is_prime(prime) {
            return Err(Error::NotPrime { value: prime });
        }
        Ok(Self::PrimeMultiplier { prime })
    }

    /// Builds the finite prime-set map; the list must be non-empty, strictly
    /// ascending, and all prime.
    pub fn prime_set(primes: Vec<u64>) -> Result<Self, Error> {
        if primes.is_empty() {
            return Err(Error::InvalidPrimeSet("empty set".into()));
        }
        if primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPrimeSet(
                "primes must be strictly ascending".into(),
            ));
        }
        if let Some(&p) = primes.iter().find(|&&p| !arith::is_prime(p)) {
            return Err(Error::InvalidPrimeSet(format!("{p} is not prime")));
        }
        Ok(Self::PrimeSetMultiplier { primes })
    }

    pub fn table(values: Vec<u64>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::EmptyTable);
        }
        if let Some(i) = values.iter().position(|&v| v == 0) {
            return Err(Error::NonPositiveTimeChangeValue {
                index: BigInt::from(i + 1),
                value: BigInt::zero(),
            });
        }
        Ok(Self::Table { values })
    }

    /// The identity map n ↦ n.
    pub fn identity() -> Self {
        Self::Monomial {
            coeff: 1,
            exponent: 1,
        }
    }

    /// compose(f, g) is f after g: it evaluates as f(g(n)).
    pub fn compose(outer: Self, inner: Self) -> Self {
        Self::Composition {
            outer: Box::new(outer),
            inner: Box::new(inner),
        }
    }

    /// h(n) without the final range checks. Intermediate values of a
    /// composition must still be valid indices (at least 1); tables reject
    /// arguments beyond their domain.
    fn eval_raw(&self, n: &BigInt) -> Result<BigInt, Error> {
        match self {
            Self::Monomial { coeff, exponent } => Ok(BigInt::from(*coeff) * n.pow(*exponent)),
            Self::Polynomial { coeffs } => {
                let mut acc = BigInt::zero();
                for &c in coeffs.iter().rev() {
                    acc = acc * n + BigInt::from(c);
                }
                Ok(acc)
            }
            Self::PrimeMultiplier { prime } => {
                let p = BigInt::from(*prime);
                if (n % &p).is_zero() {
                    Ok(n * p)
                } else {
                    Ok(n.clone())
                }
            }
            Self::PrimeSetMultiplier { primes } => {
                let mut value = n.clone();
                for &p in primes {
                    let p = BigInt::from(p);
                    if (n % &p).is_zero() {
                        value *= p;
                    }
                }
                Ok(value)
            }
            Self::Table { values } => {
                let in_domain = usize::try_from(n).ok().filter(|&i| i <= values.len());
                match in_domain {
                    Some(i) => Ok(BigInt::from(values[i - 1])),
                    None => Err(Error::TableDomainExceeded {
                        index: n.clone(),
                        table_len: values.len(),
                    }),
                }
            }
            Self::Composition { outer, inner } => {
                let mid = inner.eval_raw(n)?;
                if mid < BigInt::one() {
                    return Err(Error::NonPositiveTimeChangeValue {
                        index: n.clone(),
                        value: mid,
                    });
                }
                outer.eval_raw(&mid)
            }
        }
    }

    /// Evaluates h at n. The result must be a usable index: at least 1 and
    /// within the machine range.
    pub fn evaluate(&self, n: u64) -> Result<u64, Error> {
        if n == 0 {
            return Err(Error::IndexZero);
        }
        let value = self.eval_raw(&BigInt::from(n))?;
        if value < BigInt::one() {
            return Err(Error::NonPositiveTimeChangeValue {
                index: BigInt::from(n),
                value,
            });
        }
        u64::try_from(&value).map_err(|_| Error::IndexOverflow { index: n })
    }
}

/// Applies h to a prefix: (a_{h(1)}, a_{h(2)}, …) for as long as every index
/// stays within the input, capped at the input length. An immediate
/// overshoot (h(1) beyond the prefix) is an error, as is a map undefined at
/// n = 1; callers must supply longer prefixes or larger tables.
pub fn apply(h: &TimeChange, a: &Sequence) -> Result<Sequence, Error> {
    let len = a.len();
    let mut out = Vec::new();
    let mut first_value: Option<BigInt> = None;
    for i in 1..=len {
        let idx = BigInt::from(i);
        let value = match h.eval_raw(&idx) {
            Ok(v) => v,
            // h is undefined past a table's domain: the scan simply ends,
            // unless nothing was produced at all
            Err(e @ Error::TableDomainExceeded { .. }) => {
                if out.is_empty() {
                    return Err(e);
                }
                break;
            }
            Err(e) => return Err(e),
        };
        if value < BigInt::one() {
            return Err(Error::NonPositiveTimeChangeValue { index: idx, value });
        }
        match usize::try_from(&value) {
            Ok(v) if v <= len => out.push(a.term(v).expect("v <= len").clone()),
            _ => {
                if i == 1 {
                    first_value = Some(value);
                }
                break;
            }
        }
    }
    Sequence::new(out).map_err(|_| Error::EmptyTimeChangeOutput {
        first_value: first_value.expect("empty output implies h(1) overshoots"),
        available: len,
    })
}

impl fmt::Display for TimeChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Monomial { coeff, exponent } => match (*coeff, *exponent) {
                (c, 0) => write!(f, "{c}"),
                (1, 1) => write!(f, "n"),
                (1, k) => write!(f, "n^{k}"),
                (c, 1) => write!(f, "{c}n"),
                (c, k) => write!(f, "{c}n^{k}"),
            },
            Self::Polynomial { coeffs } => {
                let mut wrote = false;
                for (exp, &c) in coeffs.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    if wrote {
                        f.write_str(if c < 0 { "-" } else { "+" })?;
                    } else if c < 0 {
                        f.write_str("-")?;
                    }
                    wrote = true;
                    let mag = c.unsigned_abs();
                    if exp == 0 {
                        write!(f, "{mag}")?;
                    } else {
                        if mag != 1 {
                            write!(f, "{mag}")?;
                        }
                        f.write_str("n")?;
                        if exp > 1 {
                            write!(f, "^{exp}")?;
                        }
                    }
                }
                if !wrote {
                    f.write_str("0")?;
                }
                Ok(())
            }
            Self::PrimeMultiplier { prime } => write!(f, "g{prime}"),
            Self::PrimeSetMultiplier { primes } => {
                f.write_str("g{")?;
                for (i, p) in primes.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str("}")
            }
            Self::Table { values } => {
                f.write_str("table:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            Self::Composition { outer, inner } => write!(f, "{outer}∘{inner}"),
        }
    }
}

impl FromStr for TimeChange {
    type Err = Error;

    /// Parses the textual map syntax: `"n^2"`, `"2n^3"`, `"3n^2+n+1"`,
    /// `"g2"`, `"g{2,3,5}"`, `"table:3,1,4,1,5"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let text = s.trim();
        if text.is_empty() {
            return Err(Error::ParseTimeChange("empty expression".into()));
        }
        if let Some(rest) = text.strip_prefix("table:") {
            let mut values = Vec::new();
            for piece in rest.split(',') {
                let piece = piece.trim();
                let value: u64 = piece
                    .parse()
                    .map_err(|_| Error::ParseTimeChange(format!("bad table value {piece:?}")))?;
                values.push(value);
            }
            return Self::table(values);
        }
        if let Some(rest) = text.strip_prefix('g') {
            return parse_g_map(rest);
        }
        parse_polynomial(text)
    }
}

fn parse_g_map(rest: &str) -> Result<TimeChange, Error> {
    if let Some(open) = rest.strip_prefix('{') {
        let Some(inner) = open.strip_suffix('}') else {
            return Err(Error::ParseTimeChange("unterminated prime set".into()));
        };
        let mut primes = Vec::new();
        for piece in inner.split(',') {
            let piece = piece.trim();
            let p: u64 = piece
                .parse()
                .map_err(|_| Error::ParseTimeChange(format!("bad prime {piece:?}")))?;
            primes.push(p);
        }
        TimeChange::prime_set(primes)
    } else {
        let p: u64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::ParseTimeChange(format!("bad prime {rest:?}")))?;
        TimeChange::prime_multiplier(p)
    }
}

fn split_terms(compact: &str) -> Result<Vec<(i64, &str)>, Error> {
    let bytes = compact.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let sign = match bytes[i] {
            b'+' => {
                i += 1;
                1i64
            }
            b'-' => {
                i += 1;
                -1i64
            }
            _ => 1i64,
        };
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        if start == i {
            return Err(Error::ParseTimeChange(format!("empty term in {compact:?}")));
        }
        out.push((sign, &compact[start..i]));
    }
    Ok(out)
}

fn parse_term(body: &str) -> Result<(u64, u32), Error> {
    let (coeff_text, var_part) = match body.find('n') {
        None => (body, None),
        Some(pos) => (&body[..pos], Some(&body[pos + 1..])),
    };
    let coeff: u64 = if coeff_text.is_empty() {
        1
    } else {
        coeff_text
            .parse()
            .map_err(|_| Error::ParseTimeChange(format!("bad coefficient {coeff_text:?}")))?
    };
    let exponent: u32 = match var_part {
        None => 0,
        Some("") => 1,
        Some(exp) => {
            let digits = exp
                .strip_prefix('^')
                .ok_or_else(|| Error::ParseTimeChange(format!("expected ^ in term {body:?}")))?;
            digits
                .parse()
                .map_err(|_| Error::ParseTimeChange(format!("bad exponent {digits:?}")))?
        }
    };
    if exponent > 64 {
        return Err(Error::ParseTimeChange(format!(
            "exponent {exponent} too large"
        )));
    }
    Ok((coeff, exponent))
}

fn parse_polynomial(text: &str) -> Result<TimeChange, Error> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::ParseTimeChange("empty expression".into()));
    }
    let mut coeffs: Vec<i64> = Vec::new();
    for (sign, body) in split_terms(&compact)? {
        let (mag, exponent) = parse_term(body)?;
        let mag: i64 = i64::try_from(mag)
            .map_err(|_| Error::ParseTimeChange(format!("coefficient {mag} too large")))?;
        let slot = exponent as usize;
        if coeffs.len() <= slot {
            coeffs.resize(slot + 1, 0);
        }
        coeffs[slot] = coeffs[slot]
            .checked_add(sign * mag)
            .ok_or_else(|| Error::ParseTimeChange("coefficient overflow".into()))?;
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    let degree = coeffs.len() - 1;
    let top = coeffs[degree];
    if top > 0 && coeffs[..degree].iter().all(|&c| c == 0) {
        return TimeChange::monomial(top as u64, degree as u32);
    }
    Ok(TimeChange::polynomial(coeffs))
}

/// Caps for the counterexample search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest index n probed for a divisor of h(n).
    pub max_index: u64,
    /// Largest candidate prime q.
    pub max_prime: u64,
    /// Target length of the time-changed prefix handed to the checker.
    pub check_len: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_index: 64,
            max_prime: 1000,
            check_len: 32,
        }
    }
}

/// A single-orbit witness whose time-change by the probed polynomial
/// violates the realizability criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Orbit length of the witness system; prime.
    pub prime: u64,
    /// Smallest n with prime | h(n).
    pub first_index: u64,
    /// Prefix of the time-changed single-orbit sequence.
    pub time_changed: Sequence,
    /// The failing verdict on that prefix.
    pub report: WitnessReport,
}

fn require_proper_polynomial(h: &TimeChange) -> Result<(), Error> {
    let TimeChange::Polynomial { coeffs } = h else {
        return Err(Error::NonMonomialPolynomialRequired);
    };
    let Some(top) = coeffs.iter().rposition(|&c| c != 0) else {
        return Err(Error::NonMonomialPolynomialRequired);
    };
    if top == 0 || coeffs[..top].iter().all(|&c| c == 0) {
        return Err(Error::NonMonomialPolynomialRequired);
    }
    Ok(())
}

// Keeps probe witnesses at desk scale even for fast-growing polynomials.
const MAX_PROBE_BASE: u64 = 1 << 20;

fn probe_single_orbit(
    h: &TimeChange,
    q: u64,
    check_len: usize,
) -> Result<Option<(Sequence, WitnessReport)>, Error> {
    let mut needed: u64 = 0;
    let mut usable = 0usize;
    for n in 1..=check_len {
        let value = h.eval_raw(&BigInt::from(n))?;
        if value < BigInt::one() {
            return Err(Error::NonPositiveTimeChangeValue {
                index: BigInt::from(n),
                value,
            });
        }
        let Ok(v) = u64::try_from(&value) else { break };
        if v > MAX_PROBE_BASE {
            break;
        }
        needed = needed.max(v);
        usable = n;
    }
    if usable == 0 {
        return Ok(None);
    }
    let base = seqgen::single_orbit(q, needed as usize)?;
    let time_changed = apply(h, &base)?;
    match realizability::check_realizable(&time_changed) {
        WitnessReport::RealizablePrefix => Ok(None),
        failed => Ok(Some((time_changed, failed))),
    }
}

/// Searches for a prime q and a single-orbit witness system showing that the
/// polynomial h does not preserve realizability.
///
/// Candidates (n, q) with q | h(n) and q ≥ q_min are scanned in lexicographic
/// order. Each new prime is tested once: the single-orbit system of length q
/// is time-changed by h and checked. A prime whose witness happens to pass at
/// probe scale is skipped thereafter, so the returned index is the smallest n
/// at which the returned prime divides h(n).
pub fn counterexample_for_polynomial(
    h: &TimeChange,
    q_min: u64,
    budget: &SearchBudget,
) -> Result<Counterexample, Error> {
    require_proper_polynomial(h)?;
    let mut tried: Vec<u64> = Vec::new();
    let mut candidates_seen = false;
    for n in 1..=budget.max_index {
        let value = h.eval_raw(&BigInt::from(n))?;
        if value < BigInt::one() {
            return Err(Error::NonPositiveTimeChangeValue {
                index: BigInt::from(n),
                value,
            });
        }
        for q in q_min.max(2)..=budget.max_prime {
            if !arith::is_prime(q) || !(&value % BigInt::from(q)).is_zero() {
                continue;
            }
            candidates_seen = true;
            if tried.contains(&q) {
                continue;
            }
            tried.push(q);
            if let Some((time_changed, report)) = probe_single_orbit(h, q, budget.check_len)? {
                return Ok(Counterexample {
                    prime: q,
                    first_index: n,
                    time_changed,
                    report,
                });
            }
        }
    }
    if candidates_seen {
        Err(Error::SearchBudgetExhausted {
            max_index: budget.max_index,
            max_prime: budget.max_prime,
            primes_tried: tried.len(),
        })
    } else {
        Err(Error::NoCounterexampleFound {
            q_min,
            max_index: budget.max_index,
            max_prime: budget.max_prime,
        })
    }
}

/// One failed check inside a suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteFailure {
    pub trial: u32,
    /// Display form of the failing map, or "base" for the untransformed draw.
    pub map: String,
    pub report: WitnessReport,
}

/// Aggregate verdict of a seeded preservation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSummary {
    pub trials: u32,
    pub checks: usize,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn trial_seed(seed: u64, trial: u32) -> u64 {
    seed.wrapping_add((u64::from(trial) + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Seeded harness: each trial draws random orbit counts (entries 0..=9) of
/// length `base_len`, rebuilds fix counts, and requires that the base and
/// every time-changed image pass the realizability check. Deterministic for
/// a fixed seed. Failures would be counterexamples to the implementation,
/// not to the theory.
pub fn preservation_suite(
    maps: &[TimeChange],
    trials: u32,
    base_len: usize,
    seed: u64,
) -> Result<SuiteSummary, Error> {
    if base_len == 0 {
        return Err(Error::EmptySequence);
    }
    let mut summary = SuiteSummary {
        trials,
        checks: 0,
        failures: Vec::new(),
    };
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial));
        let counts: Vec<BigInt> = (0..base_len)
            .map(|_| BigInt::from(rng.gen_range(0u32..=9)))
            .collect();
        let orbits = OrbitCounts::new(counts).expect("draws are non-negative");
        let base = realizability::fix_from_orbits(&orbits);
        summary.checks += 1;
        let base_report = realizability::check_realizable(&base);
        if !base_report.is_realizable_prefix() {
            summary.failures.push(SuiteFailure {
                trial,
                map: "base".into(),
                report: base_report,
            });
            continue;
        }
        for map in maps {
            let image = apply(map, &base)?;
            summary.checks += 1;
            let report = realizability::check_realizable(&image);
            if !report.is_realizable_prefix() {
                summary.failures.push(SuiteFailure {
                    trial,
                    map: map.to_string(),
                    report,
                });
            }
        }
    }
    Ok(summary)
}

/// Preservation harness over the monomials c·n^k for c ∈ {1,2,3} and
/// k ∈ {1,…,k_max}. The base is sized so that even the largest map yields at
/// least `prefix_len` checked terms.
pub fn monomial_preservation_suite(
    trials: u32,
    k_max: u32,
    prefix_len: usize,
    seed: u64,
) -> Result<SuiteSummary, Error> {
    let mut maps = Vec::new();
    for c in 1..=3u64 {
        for k in 1..=k_max {
            maps.push(TimeChange::monomial(c, k).expect("coefficient is positive"));
        }
    }
    let scaled = prefix_len
        .checked_pow(k_max)
        .and_then(|p| p.checked_mul(3))
        .ok_or(Error::IndexOverflow {
            index: prefix_len as u64,
        })?;
    preservation_suite(&maps, trials, scaled.max(prefix_len), seed)
}

//! Divisor enumeration, the Möbius function, primality, and Dirichlet
//! convolution over arbitrary-precision integers.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;

/// A finite prefix of an integer sequence, logically indexed from 1.
///
/// Terms may be negative at this layer; realizability adds sign and
/// divisibility constraints downstream. Prefixes are immutable values:
/// every operation returns a fresh one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    terms: Vec<BigInt>,
}

impl Sequence {
    /// Wraps a non-empty list of terms.
    pub fn new(terms: Vec<BigInt>) -> Result<Self, Error> {
        if terms.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self { terms })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64s(terms: &[i64]) -> Result<Self, Error> {
        Self::new(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    /// Number of terms in the prefix.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Always false: the empty prefix is unrepresentable.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The term a_n, if n is within the prefix (1-based).
    pub fn term(&self, n: usize) -> Option<&BigInt> {
        if n == 0 {
            None
        } else {
            self.terms.get(n - 1)
        }
    }

    /// All terms; slot 0 holds a_1.
    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<BigInt> {
        self.terms
    }

    /// Parses the newline-delimited stream format: one decimal integer per
    /// line; blank lines and lines starting with '#' are ignored.
    pub fn from_text(text: &str) -> Result<Self, Error> {
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let value = BigInt::from_str(line).map_err(|_| Error::ParseSequence {
                line: idx + 1,
                content: line.to_string(),
            })?;
            terms.push(value);
        }
        Self::new(terms)
    }

    /// Renders the stream format: one decimal term per line, trailing newline.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        out
    }
}

/// Ascending list of the divisors of `n`.
pub fn divisors(n: u64) -> Result<Vec<u64>, Error> {
    if n == 0 {
        return Err(Error::IndexZero);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d <= n / d {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// μ(n): (−1)^r for squarefree n with r prime factors, 0 otherwise.
pub fn mobius(n: u64) -> Result<i64, Error> {
    if n == 0 {
        return Err(Error::IndexZero);
    }
    let mut m = n;
    let mut sign = 1i64;
    let mut p = 2u64;
    while p <= m / p {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// μ(0..=limit) by a linear sieve; slot 0 is unused and holds 0.
pub fn mobius_sieve(limit: usize) -> Vec<i64> {
    let mut mu = vec![0i64; limit + 1];
    if limit == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut primes: Vec<usize> = Vec::new();
    let mut composite = vec![false; limit + 1];
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            if p > limit / i {
                break;
            }
            composite[i * p] = true;
            if i % p == 0 {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    mu
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let mut d = 5u64;
    while d <= n / d {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization as ascending (prime, exponent) pairs; 1 gives the
/// empty list.
pub fn prime_factors(n: u64) -> Result<Vec<(u64, u32)>, Error> {
    if n == 0 {
        return Err(Error::IndexZero);
    }
    let mut m = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= m / p {
        if m.is_multiple_of(p) {
            let mut e = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(out)
}

/// Dirichlet convolution (a*b)(n) = Σ_{d|n} a_d · b_{n/d}, truncated to the
/// shorter input length.
pub fn dirichlet_convolve(a: &Sequence, b: &Sequence) -> Sequence {
    let n = a.len().min(b.len());
    let mut out = vec![BigInt::zero(); n];
    for d in 1..=n {
        let ad = &a.terms[d - 1];
        if ad.is_zero() {
            continue;
        }
        for t in 1..=n / d {
            out[d * t - 1] += ad * &b.terms[t - 1];
        }
    }
    Sequence { terms: out }
}

/// Möbius convolution (μ*a)(n) = Σ_{d|n} μ(n/d) a_d.
pub fn mobius_convolve(a: &Sequence) -> Sequence {
    let n = a.len();
    let mu = mobius_sieve(n);
    let mut out = vec![BigInt::zero(); n];
    for (m, &sign) in mu.iter().enumerate().take(n + 1).skip(1) {
        if sign == 0 {
            continue;
        }
        for d in 1..=n / m {
            if sign > 0 {
                out[m * d - 1] += &a.terms[d - 1];
            } else {
                out[m * d - 1] -= &a.terms[d - 1];
            }
        }
    }
    Sequence { terms: out }
}

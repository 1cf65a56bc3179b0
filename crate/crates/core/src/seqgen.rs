//! Generators for the named systems (shifts, golden mean, divisor sums,
//! single orbits, toral endomorphisms) plus the pointwise closure operations.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Sequence;
use crate::error::Error;

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds from rows; the row count and every row length must agree and
    /// be at least 1.
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self, Error> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::NotSquare);
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, Error> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::NotSquare);
        }
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at (row, col), 0-based. Panics when out of range.
    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    /// Matrix product; dimensions must agree.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut entries = vec![BigInt::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let left = &self.entries[i * d + k];
                if left.is_zero() {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += left * &other.entries[k * d + j];
                }
            }
        }
        Self { dim: d, entries }
    }

    /// Entrywise difference; dimensions must agree.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            dim: self.dim,
            entries,
        }
    }

    /// Repeated-multiplication power; exponent 0 gives the identity.
    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::identity(self.dim).expect("dimension is at least 1");
        for _ in 0..exponent {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination: every
    /// intermediate division is exact, so no rationals appear.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim;
        let mut m = self.entries.clone();
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k * n + k].is_zero() {
                let Some(pivot) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for c in 0..n {
                    m.swap(k * n + c, pivot * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = t / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        let det = m[n * n - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    /// Parses `"a,b;c,d"`: rows separated by ';', entries by ','.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut rows = Vec::new();
        for row_text in s.split(';') {
            let mut row = Vec::new();
            for cell in row_text.split(',') {
                let cell = cell.trim();
                let value = BigInt::from_str(cell)
                    .map_err(|_| Error::ParseMatrix(format!("bad entry {cell:?}")))?;
                row.push(value);
            }
            rows.push(row);
        }
        Self::new(rows).map_err(|_| Error::ParseMatrix("matrix must be square".into()))
    }
}

fn ensure_len(n_terms: usize) -> Result<(), Error> {
    if n_terms == 0 {
        Err(Error::EmptySequence)
    } else {
        Ok(())
    }
}

/// Full shift on `alphabet` symbols: fix(n) = alphabetⁿ.
pub fn full_shift(alphabet: u64, n_terms: usize) -> Result<Sequence, Error> {
    if alphabet < 2 {
        return Err(Error::ShiftAlphabetTooSmall { size: alphabet });
    }
    ensure_len(n_terms)?;
    let base = BigInt::from(alphabet);
    let mut power = BigInt::one();
    let terms = (0..n_terms)
        .map(|_| {
            power *= &base;
            power.clone()
        })
        .collect();
    Sequence::new(terms)
}

/// The identity map on `size` points: fix(n) = size for every n.
pub fn constant_system(size: u64, n_terms: usize) -> Result<Sequence, Error> {
    ensure_len(n_terms)?;
    Sequence::new(vec![BigInt::from(size); n_terms])
}

/// The golden-mean system: fix(n) is the n-th Lucas number, the trace of
/// ((1,1),(1,0))ⁿ. Starts (1, 3, 4, 7, 11, …).
pub fn golden_mean(n_terms: usize) -> Result<Sequence, Error> {
    ensure_len(n_terms)?;
    let mut terms = Vec::with_capacity(n_terms);
    let (mut prev, mut curr) = (BigInt::from(2), BigInt::from(1));
    for _ in 0..n_terms {
        terms.push(curr.clone());
        let next = &prev + &curr;
        prev = curr;
        curr = next;
    }
    Sequence::new(terms)
}

/// The system with exactly one orbit of every length: fix(n) = σ(n), the sum
/// of divisors of n.
pub fn sigma_system(n_terms: usize) -> Result<Sequence, Error> {
    ensure_len(n_terms)?;
    let mut terms = vec![BigInt::zero(); n_terms];
    for d in 1..=n_terms {
        let mut m = d;
        while m <= n_terms {
            terms[m - 1] += BigInt::from(d);
            m += d;
        }
    }
    Sequence::new(terms)
}

/// The system consisting of one closed orbit of length `length`:
/// fix(n) = length when length | n, else 0.
pub fn single_orbit(length: u64, n_terms: usize) -> Result<Sequence, Error> {
    if length == 0 {
        return Err(Error::ZeroOrbitLength);
    }
    ensure_len(n_terms)?;
    let terms = (1..=n_terms as u64)
        .map(|n| {
            if n % length == 0 {
                BigInt::from(length)
            } else {
                BigInt::zero()
            }
        })
        .collect();
    Sequence::new(terms)
}

/// Periodic points of the toral endomorphism given by `matrix`:
/// fix(n) = |det(Aⁿ − I)|. Rejects matrices with det(Aⁿ − I) = 0 for some
/// n ≤ n_terms, naming the offending n.
pub fn lehmer_pierce(matrix: &IntMatrix, n_terms: usize) -> Result<Sequence, Error> {
    ensure_len(n_terms)?;
    let id = IntMatrix::identity(matrix.dim())?;
    let mut power = id.clone();
    let mut terms = Vec::with_capacity(n_terms);
    for n in 1..=n_terms {
        power = power.mul(matrix);
        let det = power.sub(&id).determinant();
        if det.is_zero() {
            return Err(Error::NonErgodicMatrix { index: n });
        }
        terms.push(det.abs());
    }
    Sequence::new(terms)
}

/// The map x ↦ −ax on the circle: fix(n) = aⁿ − (−1)ⁿ.
pub fn negated_shift(alphabet: u64, n_terms: usize) -> Result<Sequence, Error> {
    if alphabet < 2 {
        return Err(Error::ShiftAlphabetTooSmall { size: alphabet });
    }
    ensure_len(n_terms)?;
    let base = BigInt::from(alphabet);
    let mut power = BigInt::one();
    let terms = (1..=n_terms)
        .map(|n| {
            power *= &base;
            if n % 2 == 0 {
                &power - BigInt::one()
            } else {
                &power + BigInt::one()
            }
        })
        .collect();
    Sequence::new(terms)
}

/// Termwise product, truncated to the shorter prefix: the fix counts of the
/// Cartesian product system.
pub fn pointwise_product(a: &Sequence, b: &Sequence) -> Sequence {
    let terms = a
        .terms()
        .iter()
        .zip(b.terms())
        .map(|(x, y)| x * y)
        .collect();
    Sequence::new(terms).expect("inputs are non-empty")
}

/// Termwise sum, truncated to the shorter prefix: the fix counts of the
/// disjoint union system.
pub fn pointwise_sum(a: &Sequence, b: &Sequence) -> Sequence {
    let terms = a
        .terms()
        .iter()
        .zip(b.terms())
        .map(|(x, y)| x + y)
        .collect();
    Sequence::new(terms).expect("inputs are non-empty")
}

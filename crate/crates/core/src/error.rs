use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared across the crate.
///
/// Failed realizability checks are *not* errors: they come back as a
/// structured [`WitnessReport`](crate::realizability::WitnessReport). This
/// enum covers contract violations (bad indices, short prefixes, invalid
/// parameters) and exhausted searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence must contain at least one term")]
    EmptySequence,

    #[error("index must be at least 1")]
    IndexZero,

    #[error("orbit count at index {index} is negative")]
    NegativeOrbitCount { index: usize },

    #[error("prefix too short: need {required} terms, have {available}")]
    InsufficientPrefix { required: usize, available: usize },

    #[error("cross-check index must be at least 2 (n = 1 is the trivial identity)")]
    CrossCheckIndexTooSmall,

    #[error("cross-check exponent must be at least 1")]
    CrossCheckExponentZero,

    #[error("{value} is not prime")]
    NotPrime { value: u64 },

    #[error("invalid prime set: {0}")]
    InvalidPrimeSet(String),

    #[error("monomial coefficient must be at least 1")]
    ZeroMonomialCoefficient,

    #[error("orbit length must be at least 1")]
    ZeroOrbitLength,

    #[error("table time-change needs at least one value")]
    EmptyTable,

    #[error("table time-change is undefined at n = {index} (table has {table_len} entries)")]
    TableDomainExceeded { index: BigInt, table_len: usize },

    #[error("time-change value h({index}) = {value} is below 1")]
    NonPositiveTimeChangeValue { index: BigInt, value: BigInt },

    #[error("index computation overflows the machine range at n = {index}")]
    IndexOverflow { index: u64 },

    #[error(
        "time-changed output is empty: h(1) = {first_value} exceeds the input length {available}"
    )]
    EmptyTimeChangeOutput {
        first_value: BigInt,
        available: usize,
    },

    #[error("counterexample search needs a polynomial of degree >= 1 that is not a monomial")]
    NonMonomialPolynomialRequired,

    #[error(
        "counterexample search budget exhausted (n <= {max_index}, q <= {max_prime}): \
         {primes_tried} candidate prime(s) tried, none produced a violation"
    )]
    SearchBudgetExhausted {
        max_index: u64,
        max_prime: u64,
        primes_tried: usize,
    },

    #[error(
        "no counterexample candidate: no prime in [{q_min}, {max_prime}] divides any h(n) with n <= {max_index}"
    )]
    NoCounterexampleFound {
        q_min: u64,
        max_index: u64,
        max_prime: u64,
    },

    #[error("full shift needs an alphabet of size >= 2, got {size}")]
    ShiftAlphabetTooSmall { size: u64 },

    #[error("matrix is not ergodic at prefix scale: det(A^{index} - I) = 0")]
    NonErgodicMatrix { index: usize },

    #[error("matrix must be square with dimension >= 1")]
    NotSquare,

    #[error("denominator has zero constant term; series expansion at z = 0 is undefined")]
    ZeroConstantDenominator,

    #[error("cannot parse time-change expression: {0}")]
    ParseTimeChange(String),

    #[error("cannot parse matrix: {0}")]
    ParseMatrix(String),

    #[error("cannot parse rational function: {0}")]
    ParseRationalFunction(String),

    #[error("line {line}: cannot parse {content:?} as an integer")]
    ParseSequence { line: usize, content: String },
}

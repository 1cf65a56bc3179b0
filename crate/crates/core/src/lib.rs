//! Realizable integer sequences and the transformations that preserve them.
//!
//! A sequence (a_n) is realizable when some map on some set has exactly a_n
//! points of period n for every n. The library checks finite prefixes for
//! realizability by Mobius inversion, converts between period counts and
//! orbit counts, generates the counts of named systems, reindexes sequences
//! along time changes such as n^2 or the prime-multiplier maps g_p, and
//! expands the associated zeta functions as exact power series.
//!
//! All arithmetic is exact: indices and counts are big integers, series
//! coefficients are big rationals. Randomized entry points take explicit
//! seeds and are deterministic.

pub mod arith;
pub mod error;
pub mod realizability;
pub mod seqgen;
pub mod timechange;
pub mod zeta;

pub use arith::Sequence;
pub use error::Error;
pub use realizability::{FailureReason, OrbitCounts, WitnessReport};
pub use seqgen::IntMatrix;
pub use timechange::{Counterexample, SearchBudget, SuiteSummary, TimeChange};
pub use zeta::{IntegralityCheck, PowerSeries, RationalFunction};

//! Acceptance gate: one test per shipping criterion, each printing a single
//! PASS or FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; any FAIL also fails the test.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realize_core::realizability::{self, e_sum_cross_check, fix_from_orbits};
use realize_core::timechange::{self, apply, counterexample_for_polynomial};
use realize_core::zeta::{self, expand_rational, integrality_check, zeta_exp, PowerSeries};
use realize_core::{arith, seqgen};
use realize_core::{
    FailureReason, IntMatrix, OrbitCounts, RationalFunction, SearchBudget, Sequence, TimeChange,
    WitnessReport,
};

fn gate(number: u32, description: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {number:02} PASS: {description}"),
        Err(payload) => {
            println!("criterion {number:02} FAIL: {description}");
            std::panic::resume_unwind(payload);
        }
    }
}

fn seq(terms: &[i64]) -> Sequence {
    Sequence::from_i64s(terms).unwrap()
}

fn series(values: &[i64]) -> PowerSeries {
    let coefficients = values
        .iter()
        .map(|&v| BigRational::from(BigInt::from(v)))
        .collect();
    PowerSeries::new(coefficients).unwrap()
}

fn random_orbits(rng: &mut ChaCha8Rng, len: usize) -> OrbitCounts {
    let counts = (0..len)
        .map(|_| BigInt::from(rng.gen_range(0u32..=9)))
        .collect();
    OrbitCounts::new(counts).unwrap()
}

#[test]
fn criterion_01_golden_mean_fix_counts() {
    gate(
        1,
        "golden-mean fix counts begin (1,3,4,7,11,18,29,47)",
        || {
            assert_eq!(
                seqgen::golden_mean(8).unwrap(),
                seq(&[1, 3, 4, 7, 11, 18, 29, 47])
            );
        },
    );
}

#[test]
fn criterion_02_square_time_change_of_golden_mean() {
    gate(
        2,
        "n^2 time-change of golden-mean gives (1,7,76,2207,..) and stays realizable",
        || {
            let square = TimeChange::monomial(1, 2).unwrap();
            let four = apply(&square, &seqgen::golden_mean(16).unwrap()).unwrap();
            assert_eq!(four, seq(&[1, 7, 76, 2207]));
            let six = apply(&square, &seqgen::golden_mean(36).unwrap()).unwrap();
            assert_eq!(six, seq(&[1, 7, 76, 2207, 167761, 33385282]));
            assert!(realizability::check_realizable(&six).is_realizable_prefix());
        },
    );
}

#[test]
fn criterion_03_square_plus_one_breaks_sigma() {
    gate(
        3,
        "n^2+1 time-change of sigma gives (3,6,18,18,42) and fails at n = 2 with value 3",
        || {
            let h: TimeChange = "n^2+1".parse().unwrap();
            let image = apply(&h, &seqgen::sigma_system(26).unwrap()).unwrap();
            assert_eq!(image, seq(&[3, 6, 18, 18, 42]));
            assert_eq!(
                realizability::check_realizable(&image),
                WitnessReport::Failed {
                    index: 2,
                    value: BigInt::from(3),
                    reason: FailureReason::NotDivisible,
                }
            );
        },
    );
}

#[test]
fn criterion_04_sigma_zeta_is_partition_series() {
    gate(
        4,
        "zeta of sigma is the partition generating function",
        || {
            assert_eq!(
                zeta_exp(&seqgen::sigma_system(10).unwrap(), 10).unwrap(),
                series(&[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42])
            );
        },
    );
}

#[test]
fn criterion_05_golden_mean_zeta_closed_form() {
    gate(5, "zeta of golden-mean equals 1/(1-z-z^2)", || {
        let f = RationalFunction::from_i64s(&[1], &[1, -1, -1]).unwrap();
        assert_eq!(
            zeta_exp(&seqgen::golden_mean(10).unwrap(), 10).unwrap(),
            expand_rational(&f, 10)
        );
    });
}

#[test]
fn criterion_06_cartesian_square_zeta_closed_form() {
    gate(
        6,
        "zeta of squared golden-mean counts equals 1/((1+z)(1-2z-2z^2+z^3))",
        || {
            // expand the factored denominator by plain convolution
            fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
                let mut out = vec![0i64; a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                out
            }
            let den = poly_mul(&[1, 1], &[1, -2, -2, 1]);
            assert_eq!(den, vec![1, -1, -4, -1, 1]);

            let lucas = seqgen::golden_mean(8).unwrap();
            let squares = seqgen::pointwise_product(&lucas, &lucas);
            let f = RationalFunction::from_i64s(&[1], &den).unwrap();
            assert_eq!(zeta_exp(&squares, 8).unwrap(), expand_rational(&f, 8));
        },
    );
}

#[test]
fn criterion_07_sampled_zeta_is_integral() {
    gate(
        7,
        "zeta of golden-mean sampled along n^k is integral for k = 2, 3",
        || {
            for (k, base_len) in [(2u32, 64usize), (3, 512)] {
                let h = TimeChange::monomial(1, k).unwrap();
                let sampled = apply(&h, &seqgen::golden_mean(base_len).unwrap()).unwrap();
                assert_eq!(sampled.len(), 8, "k = {k}");
                let s = zeta_exp(&sampled, 8).unwrap();
                assert!(integrality_check(&s).is_integral(), "k = {k}");
            }
        },
    );
}

#[test]
fn criterion_08_seeded_preservation_suites() {
    gate(
        8,
        "50-trial suites pass: base realizability, monomials c*n^k (c<=3, k<=2), g-maps, sum/product closure",
        || {
            let mono = timechange::monomial_preservation_suite(50, 2, 64, 0xA11CE).unwrap();
            assert!(mono.all_passed(), "monomial failures: {:?}", mono.failures);
            assert_eq!(mono.checks, 50 * 7);

            let g_maps = vec![
                TimeChange::prime_multiplier(2).unwrap(),
                TimeChange::prime_multiplier(3).unwrap(),
                TimeChange::prime_multiplier(5).unwrap(),
                TimeChange::prime_set(vec![2, 3]).unwrap(),
            ];
            let g_suite = timechange::preservation_suite(&g_maps, 50, 384, 0xC0FFEE).unwrap();
            assert!(g_suite.all_passed(), "g-map failures: {:?}", g_suite.failures);
            assert_eq!(g_suite.checks, 50 * 5);

            for trial in 0..50u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(0xB0B ^ (trial * 0x9E37_79B9));
                let a = fix_from_orbits(&random_orbits(&mut rng, 32));
                let b = fix_from_orbits(&random_orbits(&mut rng, 32));
                let sum = seqgen::pointwise_sum(&a, &b);
                let product = seqgen::pointwise_product(&a, &b);
                assert!(
                    realizability::check_realizable(&sum).is_realizable_prefix(),
                    "sum, trial {trial}"
                );
                assert!(
                    realizability::check_realizable(&product).is_realizable_prefix(),
                    "product, trial {trial}"
                );
            }
        },
    );
}

#[test]
fn criterion_09_e_sum_cross_check() {
    gate(
        9,
        "e-sum equals the Mobius form on a random realizable sequence for k <= 3, n <= 12",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
            let a = fix_from_orbits(&random_orbits(&mut rng, 1728));
            for k in 1..=3u32 {
                // n = 1 reduces to (mu*b)(1) = b_1 = a_1 for every k
                let head = Sequence::new(vec![a.term(1).unwrap().clone()]).unwrap();
                let trivial = arith::mobius_convolve(&head);
                assert_eq!(trivial.term(1), a.term(1));
                for n in 2..=12u64 {
                    let (e, mb) = e_sum_cross_check(&a, k, n).unwrap();
                    assert_eq!(e, mb, "k = {k}, n = {n}");
                }
            }
        },
    );
}

#[test]
fn criterion_10_counterexample_search() {
    gate(
        10,
        "counterexample search for n^2+1 returns q = 5 at n = 2, minimal by brute force",
        || {
            let h: TimeChange = "n^2+1".parse().unwrap();
            let found = counterexample_for_polynomial(&h, 3, &SearchBudget::default()).unwrap();
            assert_eq!(found.prime, 5);
            assert_eq!(found.first_index, 2);
            assert_eq!(
                found.report,
                WitnessReport::Failed {
                    index: 2,
                    value: BigInt::from(5),
                    reason: FailureReason::NotDivisible,
                }
            );

            // lexicographically first (n, q) with q prime, 3 <= q <= 50, q | n^2+1
            let mut first = None;
            'scan: for n in 1..=50u64 {
                for q in 3..=50u64 {
                    if arith::is_prime(q) && (n * n + 1) % q == 0 {
                        first = Some((n, q));
                        break 'scan;
                    }
                }
            }
            assert_eq!(first, Some((2, 5)));
        },
    );
}

#[test]
fn criterion_11_eta_identity_and_negated_shift() {
    gate(
        11,
        "eta is (-1, 2, 0, 0, ...) through n = 10000 and n^2+1 keeps negated shifts realizable",
        || {
            assert_eq!(zeta::eta(1).unwrap(), -1);
            assert_eq!(zeta::eta(2).unwrap(), 2);
            for n in 3..=10_000u64 {
                assert_eq!(zeta::eta(n).unwrap(), 0, "n = {n}");
            }

            let h: TimeChange = "n^2+1".parse().unwrap();
            for alphabet in [2u64, 3] {
                let base = seqgen::negated_shift(alphabet, 101).unwrap();
                let image = apply(&h, &base).unwrap();
                assert_eq!(image.len(), 10, "alphabet {alphabet}");
                assert!(
                    realizability::check_realizable(&image).is_realizable_prefix(),
                    "alphabet {alphabet}"
                );
            }
        },
    );
}

#[test]
fn criterion_12_lehmer_pierce_fibonacci_matrix() {
    gate(
        12,
        "Lehmer-Pierce counts for ((0,1),(1,1)) are (1,1,4,5,11,16)",
        || {
            let m = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 1]]).unwrap();
            let lp = seqgen::lehmer_pierce(&m, 6).unwrap();
            assert_eq!(lp, seq(&[1, 1, 4, 5, 11, 16]));

            // independent oracle: plain 2x2 powers and the ad - bc determinant
            let a = [[0i64, 1], [1, 1]];
            let mut p = [[1i64, 0], [0, 1]];
            for n in 1..=6usize {
                p = [
                    [
                        p[0][0] * a[0][0] + p[0][1] * a[1][0],
                        p[0][0] * a[0][1] + p[0][1] * a[1][1],
                    ],
                    [
                        p[1][0] * a[0][0] + p[1][1] * a[1][0],
                        p[1][0] * a[0][1] + p[1][1] * a[1][1],
                    ],
                ];
                let det = (p[0][0] - 1) * (p[1][1] - 1) - p[0][1] * p[1][0];
                assert_eq!(lp.term(n).unwrap(), &BigInt::from(det.abs()), "n = {n}");
            }
        },
    );
}

#[test]
fn criterion_13_finite_prime_set_distinctness() {
    gate(
        13,
        "the seven non-empty subsets of {2,3,5} give pairwise-distinct g_S on n <= 30",
        || {
            let sets: [&[u64]; 7] = [&[2], &[3], &[5], &[2, 3], &[2, 5], &[3, 5], &[2, 3, 5]];
            let mut images: Vec<(&[u64], Vec<u64>)> = Vec::new();
            for primes in sets {
                let g = TimeChange::prime_set(primes.to_vec()).unwrap();
                let values = (1..=30).map(|n| g.evaluate(n).unwrap()).collect();
                images.push((primes, values));
            }
            for i in 0..images.len() {
                for j in (i + 1)..images.len() {
                    assert_ne!(
                        images[i].1, images[j].1,
                        "S = {:?} and S = {:?} agree on n <= 30",
                        images[i].0, images[j].0
                    );
                }
            }
        },
    );
}

//! Formal power series for dynamical zeta functions: the exponential form
//! exp(Σ a_n zⁿ/n), the Euler product over orbit counts, rational-function
//! expansion, and integrality checking. All coefficients are exact
//! rationals; integrality is verified, never assumed.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{self, Sequence};
use crate::error::Error;
use crate::realizability::OrbitCounts;

/// A finite Taylor prefix; slot i holds the coefficient of zⁱ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coefficients: Vec<BigRational>,
}

impl PowerSeries {
    /// Wraps a non-empty coefficient list (constant term first).
    pub fn new(coefficients: Vec<BigRational>) -> Result<Self, Error> {
        if coefficients.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self { coefficients })
    }

    /// Highest represented degree.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn coefficient(&self, index: usize) -> Option<&BigRational> {
        self.coefficients.get(index)
    }

    /// JSON array of coefficient strings: "p/q" reduced, plain "p" when the
    /// coefficient is an integer.
    pub fn to_json_string(&self) -> String {
        let strings: Vec<String> = self.coefficients.iter().map(coefficient_string).collect();
        serde_json::to_string(&strings).expect("string arrays always serialize")
    }
}

/// Renders one coefficient: "p/q" reduced, or "p" when integral.
pub fn coefficient_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Taylor coefficients of exp(Σ_{n≥1} a_n zⁿ/n) up to `degree`.
///
/// Uses the recurrence n·c_n = Σ_{k=1}^{n} a_k c_{n−k} with c_0 = 1, so the
/// input must supply at least `degree` terms.
pub fn zeta_exp(a: &Sequence, degree: usize) -> Result<PowerSeries, Error> {
    if a.len() < degree {
        return Err(Error::InsufficientPrefix {
            required: degree,
            available: a.len(),
        });
    }
    let mut coefficients = Vec::with_capacity(degree + 1);
    coefficients.push(BigRational::one());
    for n in 1..=degree {
        let mut sum = BigRational::zero();
        for k in 1..=n {
            sum += BigRational::from(a.terms()[k - 1].clone()) * &coefficients[n - k];
        }
        coefficients.push(sum / BigInt::from(n));
    }
    Ok(PowerSeries { coefficients })
}

/// Coefficients of ∏_{n=1}^{degree} (1−zⁿ)^{−orb(n)} truncated at `degree`.
/// Integer by construction; returned as rationals for uniformity.
pub fn euler_product(o: &OrbitCounts, degree: usize) -> Result<PowerSeries, Error> {
    if o.len() < degree {
        return Err(Error::InsufficientPrefix {
            required: degree,
            available: o.len(),
        });
    }
    let mut coeffs = vec![BigInt::zero(); degree + 1];
    coeffs[0] = BigInt::one();
    for n in 1..=degree {
        let count = &o.counts()[n - 1];
        if count.is_zero() {
            continue;
        }
        // (1−zⁿ)^{−c} = Σ_j C(c+j−1, j) z^{nj}; the running binomial update
        // C(c+j−1, j) = C(c+j−2, j−1)·(c+j−1)/j divides exactly
        let jmax = degree / n;
        let mut factor = Vec::with_capacity(jmax + 1);
        let mut binom = BigInt::one();
        factor.push(binom.clone());
        for j in 1..=jmax {
            binom *= count + BigInt::from(j - 1);
            binom /= BigInt::from(j);
            factor.push(binom.clone());
        }
        let mut next = vec![BigInt::zero(); degree + 1];
        for (j, b) in factor.iter().enumerate() {
            let shift = n * j;
            for (i, c) in coeffs.iter().take(degree + 1 - shift).enumerate() {
                if c.is_zero() {
                    continue;
                }
                next[i + shift] += c * b;
            }
        }
        coeffs = next;
    }
    Ok(PowerSeries {
        coefficients: coeffs.into_iter().map(BigRational::from).collect(),
    })
}

/// A quotient of integer-coefficient polynomials in z, constant terms first.
/// The denominator's constant term must be non-zero so the quotient expands
/// at z = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Vec<BigInt>,
    denominator: Vec<BigInt>,
}

impl RationalFunction {
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> Result<Self, Error> {
        if denominator.first().is_none_or(|c| c.is_zero()) {
            return Err(Error::ZeroConstantDenominator);
        }
        let numerator = if numerator.is_empty() {
            vec![BigInt::zero()]
        } else {
            numerator
        };
        Ok(Self {
            numerator,
            denominator,
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64s(numerator: &[i64], denominator: &[i64]) -> Result<Self, Error> {
        Self::new(
            numerator.iter().map(|&c| BigInt::from(c)).collect(),
            denominator.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.denominator
    }
}

impl FromStr for RationalFunction {
    type Err = Error;

    /// Parses `"num;den"` with comma-separated coefficient lists, constant
    /// terms first: `"1;1,-1,-1"` is 1/(1 − z − z²).
    fn from_str(s: &str) -> Result<Self, Error> {
        fn parse_poly(text: &str, role: &str) -> Result<Vec<BigInt>, Error> {
            let mut out = Vec::new();
            for piece in text.split(',') {
                let piece = piece.trim();
                let value = BigInt::from_str(piece).map_err(|_| {
                    Error::ParseRationalFunction(format!("bad {role} coefficient {piece:?}"))
                })?;
                out.push(value);
            }
            Ok(out)
        }
        let Some((num_text, den_text)) = s.split_once(';') else {
            return Err(Error::ParseRationalFunction(
                "expected \"numerator;denominator\"".into(),
            ));
        };
        Self::new(
            parse_poly(num_text, "numerator")?,
            parse_poly(den_text, "denominator")?,
        )
    }
}

/// Taylor coefficients of f at z = 0 up to `degree`, by exact long division.
pub fn expand_rational(f: &RationalFunction, degree: usize) -> PowerSeries {
    let den0 = BigRational::from(f.denominator[0].clone());
    let mut coefficients: Vec<BigRational> = Vec::with_capacity(degree + 1);
    for i in 0..=degree {
        let mut acc = BigRational::from(f.numerator.get(i).cloned().unwrap_or_default());
        for j in 1..=i.min(f.denominator.len() - 1) {
            acc -= BigRational::from(f.denominator[j].clone()) * &coefficients[i - j];
        }
        coefficients.push(acc / &den0);
    }
    PowerSeries { coefficients }
}

/// Verdict of scanning a series for a non-integer coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegralityCheck {
    Integral,
    FirstNonIntegral {
        index: usize,
        coefficient: BigRational,
    },
}

impl IntegralityCheck {
    pub fn is_integral(&self) -> bool {
        matches!(self, Self::Integral)
    }
}

/// Passes iff every coefficient has denominator 1.
pub fn integrality_check(s: &PowerSeries) -> IntegralityCheck {
    for (index, c) in s.coefficients.iter().enumerate() {
        if !c.denom().is_one() {
            return IntegralityCheck::FirstNonIntegral {
                index,
                coefficient: c.clone(),
            };
        }
    }
    IntegralityCheck::Integral
}

/// η(n) = Σ_{d|n} (−1)^d μ(n/d): equals −1 at n = 1, 2 at n = 2, and 0 for
/// every larger n.
pub fn eta(n: u64) -> Result<i64, Error> {
    let mut sum = 0i64;
    for d in arith::divisors(n)? {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        sum += sign * arith::mobius(n / d)?;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizability::fix_from_orbits;
    use crate::seqgen::{golden_mean, pointwise_product, sigma_system};
    use crate::timechange::{apply, TimeChange};

    fn rational(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn series(values: &[i64]) -> PowerSeries {
        PowerSeries::new(values.iter().map(|&v| rational(v)).collect()).unwrap()
    }

    #[test]
    fn zeta_of_sigma_gives_partition_numbers() {
        let sigma = sigma_system(10).unwrap();
        assert_eq!(
            zeta_exp(&sigma, 10).unwrap(),
            series(&[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42])
        );
    }

    #[test]
    fn zeta_of_constant_one_is_geometric() {
        let ones = Sequence::from_i64s(&[1; 8]).unwrap();
        assert_eq!(zeta_exp(&ones, 8).unwrap(), series(&[1; 9]));
    }

    #[test]
    fn zeta_of_lucas_gives_fibonacci() {
        let lucas = golden_mean(6).unwrap();
        assert_eq!(
            zeta_exp(&lucas, 6).unwrap(),
            series(&[1, 1, 2, 3, 5, 8, 13])
        );
    }

    #[test]
    fn zeta_rejects_short_prefix() {
        let a = Sequence::from_i64s(&[1, 2]).unwrap();
        assert_eq!(
            zeta_exp(&a, 3),
            Err(Error::InsufficientPrefix {
                required: 3,
                available: 2
            })
        );
    }

    #[test]
    fn euler_product_of_all_ones_gives_partition_numbers() {
        let o = OrbitCounts::from_u64s(&[1; 10]).unwrap();
        assert_eq!(
            euler_product(&o, 10).unwrap(),
            series(&[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42])
        );
    }

    #[test]
    fn euler_product_single_fixed_point_is_geometric() {
        let o = OrbitCounts::from_u64s(&[1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(euler_product(&o, 6).unwrap(), series(&[1; 7]));
    }

    #[test]
    fn euler_product_single_five_cycle() {
        let o = OrbitCounts::from_u64s(&[0, 0, 0, 0, 1, 0, 0]).unwrap();
        assert_eq!(
            euler_product(&o, 7).unwrap(),
            series(&[1, 0, 0, 0, 0, 1, 0, 0])
        );
    }

    #[test]
    fn euler_product_matches_zeta_exp_on_sample() {
        let o = OrbitCounts::from_u64s(&[1, 2, 0, 3, 1, 0, 2, 1]).unwrap();
        let a = fix_from_orbits(&o);
        assert_eq!(euler_product(&o, 8).unwrap(), zeta_exp(&a, 8).unwrap());
    }

    #[test]
    fn expand_golden_mean_zeta() {
        let f = RationalFunction::from_i64s(&[1], &[1, -1, -1]).unwrap();
        assert_eq!(expand_rational(&f, 6), series(&[1, 1, 2, 3, 5, 8, 13]));
    }

    #[test]
    fn expand_constant_function() {
        let f = RationalFunction::from_i64s(&[1], &[1]).unwrap();
        assert_eq!(expand_rational(&f, 4), series(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn expand_handles_rational_coefficients() {
        let f = RationalFunction::from_i64s(&[5], &[2]).unwrap();
        let s = expand_rational(&f, 2);
        assert_eq!(
            s.coefficient(0),
            Some(&BigRational::new(BigInt::from(5), BigInt::from(2)))
        );
        assert_eq!(s.coefficient(1), Some(&rational(0)));
    }

    #[test]
    fn rational_function_rejects_zero_constant_denominator() {
        assert_eq!(
            RationalFunction::from_i64s(&[1], &[0, 1]),
            Err(Error::ZeroConstantDenominator)
        );
        assert_eq!(
            RationalFunction::from_i64s(&[1], &[]),
            Err(Error::ZeroConstantDenominator)
        );
    }

    #[test]
    fn rational_function_parsing() {
        let f: RationalFunction = "1;1,-1,-1".parse().unwrap();
        assert_eq!(f, RationalFunction::from_i64s(&[1], &[1, -1, -1]).unwrap());
        let f: RationalFunction = " 1, 2 ; 3 ".parse().unwrap();
        assert_eq!(f, RationalFunction::from_i64s(&[1, 2], &[3]).unwrap());
        assert!(matches!(
            "1,2".parse::<RationalFunction>(),
            Err(Error::ParseRationalFunction(_))
        ));
        assert!(matches!(
            "1;x".parse::<RationalFunction>(),
            Err(Error::ParseRationalFunction(_))
        ));
    }

    #[test]
    fn cartesian_square_zeta_matches_closed_form() {
        let lucas = golden_mean(8).unwrap();
        let squares = pointwise_product(&lucas, &lucas);
        // denominator (1+z)(1−2z−2z²+z³) expanded
        let f = RationalFunction::from_i64s(&[1], &[1, -1, -4, -1, 1]).unwrap();
        assert_eq!(zeta_exp(&squares, 8).unwrap(), expand_rational(&f, 8));
    }

    #[test]
    fn integrality_examples() {
        let lucas = golden_mean(36).unwrap();
        let square = TimeChange::monomial(1, 2).unwrap();
        let sampled = apply(&square, &lucas).unwrap();
        assert!(integrality_check(&zeta_exp(&sampled, 6).unwrap()).is_integral());

        let s = zeta_exp(&Sequence::from_i64s(&[1, 2]).unwrap(), 2).unwrap();
        assert_eq!(
            integrality_check(&s),
            IntegralityCheck::FirstNonIntegral {
                index: 2,
                coefficient: BigRational::new(BigInt::from(3), BigInt::from(2)),
            }
        );

        let o = OrbitCounts::from_u64s(&[2, 1, 3, 0, 1, 2]).unwrap();
        assert!(integrality_check(&euler_product(&o, 6).unwrap()).is_integral());
    }

    #[test]
    fn series_json_uses_decimal_and_fraction_strings() {
        let s = zeta_exp(&Sequence::from_i64s(&[1, 2]).unwrap(), 2).unwrap();
        assert_eq!(s.to_json_string(), r#"["1","1","3/2"]"#);
    }

    #[test]
    fn eta_values() {
        assert_eq!(eta(1).unwrap(), -1);
        assert_eq!(eta(2).unwrap(), 2);
        assert_eq!(eta(12).unwrap(), 0);
        for n in 3..=200 {
            assert_eq!(eta(n).unwrap(), 0, "n = {n}");
        }
        assert_eq!(eta(0), Err(Error::IndexZero));
    }
}

//! Brute-force reference evaluation of every weighted binomial-sum family.
//!
//! Each function sums its defining expression term by term in exact
//! arithmetic, in a fixed ascending index order, with no use of the
//! symmetry or folding identities it is later checked against. Binomial
//! rows are precomputed once per call and shared across the inner loops.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};

use crate::binomial::binomial_row;
use crate::rational::Rational;
use crate::weight::WeightExpr;

/// Dimension cap for the generic d-fold sum; cost grows as the product of
/// the index ranges and the tool targets desk scale.
pub const MAX_GENERIC_DIMS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    ArityMismatch { weight_arity: usize, dims: usize },
    TooManyDimensions { dims: usize },
    EmptyDimensions,
    InvalidAlpha,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::ArityMismatch { weight_arity, dims } => write!(
                f,
                "weight arity {weight_arity} does not match {dims} summation dimensions"
            ),
            OracleError::TooManyDimensions { dims } => {
                write!(
                    f,
                    "{dims} dimensions exceed the supported maximum of {MAX_GENERIC_DIMS}"
                )
            }
            OracleError::EmptyDimensions => write!(f, "at least one dimension is required"),
            OracleError::InvalidAlpha => write!(f, "inner exponent alpha must be at least 1"),
        }
    }
}

impl std::error::Error for OracleError {}

/// `sum_k C(2n, n+k) |k|^beta` over `k in [-n, n]`.
pub fn single_sum(beta: u32, n: u64) -> BigInt {
    let row = binomial_row(2 * n);
    let mut total = BigInt::zero();
    for k in -(n as i64)..=n as i64 {
        let weight = Pow::pow(&BigInt::from(k.unsigned_abs()), beta);
        total += &row[(n as i64 + k) as usize] * weight;
    }
    total
}

/// `sum_k C(n, k) |n/2 - k|^beta`; rational because the center is a
/// half-integer for odd `n`.
pub fn half_center_sum(beta: u32, n: u64) -> Rational {
    let row = binomial_row(n);
    // |n/2 - k| = |n - 2k| / 2, so sum the integer numerators and divide
    // by 2^beta at the end.
    let mut total = BigInt::zero();
    for (k, c) in row.iter().enumerate() {
        let centered = (n as i64 - 2 * k as i64).unsigned_abs();
        total += c * Pow::pow(&BigInt::from(centered), beta);
    }
    Rational::new(total, BigInt::from(1u8) << beta as usize)
}

/// `sum_{k,l} C(2m, m+k) C(2n, n+l) |k - l|^beta`.
pub fn double_diff_sum(beta: u32, m: u64, n: u64) -> BigInt {
    let row_m = binomial_row(2 * m);
    let row_n = binomial_row(2 * n);
    let mut total = BigInt::zero();
    for k in -(m as i64)..=m as i64 {
        let cm = &row_m[(m as i64 + k) as usize];
        for l in -(n as i64)..=n as i64 {
            let weight = Pow::pow(&BigInt::from((k - l).unsigned_abs()), beta);
            total += cm * &row_n[(n as i64 + l) as usize] * weight;
        }
    }
    total
}

/// `sum_{k,l} C(2n, n+k) C(2n, n+l) |k^alpha - l^alpha|^beta` with
/// `alpha >= 1`.
pub fn centered_double_sum(alpha: u32, beta: u32, n: u64) -> BigInt {
    assert!(alpha >= 1, "inner exponent alpha must be at least 1");
    let row = binomial_row(2 * n);
    let powers: Vec<BigInt> = (-(n as i64)..=n as i64)
        .map(|k| Pow::pow(&BigInt::from(k), alpha))
        .collect();
    let mut total = BigInt::zero();
    for (i, pk) in powers.iter().enumerate() {
        let ck = &row[i];
        for (j, pl) in powers.iter().enumerate() {
            let weight = Pow::pow(&(pk - pl).abs(), beta);
            total += ck * &row[j] * weight;
        }
    }
    total
}

/// `sum_{k,l} C(n, k) C(n, l) |k - l|^beta`; the upper argument need not
/// be even.
pub fn unrestricted_double_sum(beta: u32, n: u64) -> BigInt {
    let row = binomial_row(n);
    let mut total = BigInt::zero();
    for (k, ck) in row.iter().enumerate() {
        for (l, cl) in row.iter().enumerate() {
            let weight = Pow::pow(&BigInt::from((k as i64 - l as i64).unsigned_abs()), beta);
            total += ck * cl * weight;
        }
    }
    total
}

/// d-fold sum of `prod_i C(2n_i, n_i + k_i) * weight(k_1..k_d)` over
/// `k_i in [-n_i, n_i]`.
pub fn generic_sum(n_list: &[u64], weight: &WeightExpr) -> Result<BigInt, OracleError> {
    let d = n_list.len();
    if d == 0 {
        return Err(OracleError::EmptyDimensions);
    }
    if d > MAX_GENERIC_DIMS {
        return Err(OracleError::TooManyDimensions { dims: d });
    }
    if weight.arity() != d {
        return Err(OracleError::ArityMismatch {
            weight_arity: weight.arity(),
            dims: d,
        });
    }
    let rows: Vec<Vec<BigInt>> = n_list.iter().map(|&n| binomial_row(2 * n)).collect();
    let mut idx = vec![0usize; d];
    let mut point = vec![BigInt::zero(); d];
    let mut total = BigInt::zero();
    'sum: loop {
        let mut coeff = BigInt::from(1u8);
        for (dim, &i) in idx.iter().enumerate() {
            coeff *= &rows[dim][i];
            point[dim] = BigInt::from(i as i64 - n_list[dim] as i64);
        }
        total += coeff * weight.eval(&point).expect("arity checked above");
        // odometer over the index vector, first dimension fastest
        let mut dim = 0;
        loop {
            if dim == d {
                break 'sum;
            }
            idx[dim] += 1;
            if idx[dim] < rows[dim].len() {
                break;
            }
            idx[dim] = 0;
            dim += 1;
        }
    }
    Ok(total)
}

/// Triple sum with the squared-Vandermonde weight
/// `|(i^2-j^2)(i^2-k^2)(j^2-k^2)|`.
pub fn triple_vandermonde_sum(n: u64) -> BigInt {
    let row = binomial_row(2 * n);
    let squares: Vec<BigInt> = (-(n as i64)..=n as i64)
        .map(|k| BigInt::from(k * k))
        .collect();
    let mut total = BigInt::zero();
    for (a, sa) in squares.iter().enumerate() {
        let ca = &row[a];
        for (b, sb) in squares.iter().enumerate() {
            let cab = ca * &row[b];
            let dab = sa - sb;
            for (c, sc) in squares.iter().enumerate() {
                let weight = (&dab * (sa - sc) * (sb - sc)).abs();
                total += &cab * &row[c] * weight;
            }
        }
    }
    total
}

/// A sum-family instance, as selected on the command line.
#[derive(Debug, Clone)]
pub enum SumSpec {
    Single {
        beta: u32,
        n: u64,
    },
    HalfCenter {
        beta: u32,
        n: u64,
    },
    DoubleDiff {
        beta: u32,
        m: u64,
        n: u64,
    },
    Centered {
        alpha: u32,
        beta: u32,
        n: u64,
    },
    Unrestricted {
        beta: u32,
        n: u64,
    },
    Generic {
        n_list: Vec<u64>,
        weight: WeightExpr,
    },
    TripleVandermonde {
        n: u64,
    },
}

/// Exact value of a sum: a big integer for every family except the
/// half-centered one, whose value can be a half-integer power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumValue {
    Int(BigInt),
    Rational(Rational),
}

impl fmt::Display for SumValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumValue::Int(v) => write!(f, "{v}"),
            SumValue::Rational(v) => write!(f, "{v}"),
        }
    }
}

impl SumSpec {
    pub fn evaluate(&self) -> Result<SumValue, OracleError> {
        match self {
            SumSpec::Single { beta, n } => Ok(SumValue::Int(single_sum(*beta, *n))),
            SumSpec::HalfCenter { beta, n } => Ok(SumValue::Rational(half_center_sum(*beta, *n))),
            SumSpec::DoubleDiff { beta, m, n } => Ok(SumValue::Int(double_diff_sum(*beta, *m, *n))),
            SumSpec::Centered { alpha, beta, n } => {
                if *alpha < 1 {
                    return Err(OracleError::InvalidAlpha);
                }
                Ok(SumValue::Int(centered_double_sum(*alpha, *beta, *n)))
            }
            SumSpec::Unrestricted { beta, n } => {
                Ok(SumValue::Int(unrestricted_double_sum(*beta, *n)))
            }
            SumSpec::Generic { n_list, weight } => Ok(SumValue::Int(generic_sum(n_list, weight)?)),
            SumSpec::TripleVandermonde { n } => Ok(SumValue::Int(triple_vandermonde_sum(*n))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn single_sum_examples() {
        assert_eq!(single_sum(1, 1), big(2));
        assert_eq!(single_sum(0, 2), big(16));
        assert_eq!(single_sum(1, 2), big(12));
    }

    #[test]
    fn half_center_sum_examples() {
        assert_eq!(half_center_sum(1, 2), Rational::from(2u64));
        assert_eq!(half_center_sum(1, 1), Rational::from(1u64));
        assert_eq!(half_center_sum(0, 3), Rational::from(8u64));
        // odd n, odd beta: genuinely fractional
        assert_eq!(half_center_sum(3, 1), Rational::new(big(1), big(4)));
    }

    #[test]
    fn double_diff_sum_examples() {
        assert_eq!(double_diff_sum(1, 1, 1), big(12));
        assert_eq!(double_diff_sum(0, 2, 1), big(64));
        assert_eq!(double_diff_sum(2, 1, 2), big(96));
        assert_eq!(double_diff_sum(2, 1, 2), single_sum(2, 3));
    }

    #[test]
    fn centered_double_sum_examples() {
        assert_eq!(centered_double_sum(2, 1, 1), big(8));
        for alpha in [1, 2, 3, 7] {
            assert_eq!(centered_double_sum(alpha, 0, 1), big(16), "alpha={alpha}");
        }
        assert_eq!(centered_double_sum(1, 1, 1), big(12));
        assert_eq!(centered_double_sum(1, 1, 1), double_diff_sum(1, 1, 1));
    }

    #[test]
    fn unrestricted_double_sum_examples() {
        assert_eq!(unrestricted_double_sum(1, 2), big(12));
        assert_eq!(unrestricted_double_sum(0, 1), big(4));
        assert_eq!(unrestricted_double_sum(1, 3), big(60));
        assert_eq!(unrestricted_double_sum(1, 3), single_sum(1, 3));
    }

    #[test]
    fn generic_sum_examples() {
        let w = WeightExpr::parse("abs(k1)", 1).unwrap();
        assert_eq!(generic_sum(&[1], &w).unwrap(), big(2));

        let w = WeightExpr::parse("abs(k1^2-k2^2)", 2).unwrap();
        assert_eq!(generic_sum(&[1, 1], &w).unwrap(), big(8));

        let w = WeightExpr::parse("abs(k1-k2)", 2).unwrap();
        assert_eq!(generic_sum(&[1, 2], &w).unwrap(), big(60));
        assert_eq!(generic_sum(&[1, 2], &w).unwrap(), double_diff_sum(1, 1, 2));
    }

    #[test]
    fn generic_sum_guards() {
        let w = WeightExpr::parse("abs(k1)", 1).unwrap();
        assert_eq!(
            generic_sum(&[1, 1], &w).unwrap_err(),
            OracleError::ArityMismatch {
                weight_arity: 1,
                dims: 2
            }
        );
        assert_eq!(
            generic_sum(&[], &w).unwrap_err(),
            OracleError::EmptyDimensions
        );

        let w7 = WeightExpr::parse("abs(k7)", 7).unwrap();
        assert_eq!(
            generic_sum(&[0; 7], &w7).unwrap_err(),
            OracleError::TooManyDimensions { dims: 7 }
        );
    }

    #[test]
    fn triple_vandermonde_examples() {
        assert_eq!(triple_vandermonde_sum(0), big(0));
        assert_eq!(triple_vandermonde_sum(1), big(0));
        assert_eq!(triple_vandermonde_sum(2), big(6912));
    }

    #[test]
    fn sum_spec_dispatch() {
        let spec = SumSpec::Single { beta: 1, n: 2 };
        assert_eq!(spec.evaluate().unwrap(), SumValue::Int(big(12)));
        let spec = SumSpec::HalfCenter { beta: 3, n: 1 };
        assert_eq!(
            spec.evaluate().unwrap(),
            SumValue::Rational(Rational::new(big(1), big(4)))
        );
        let spec = SumSpec::Centered {
            alpha: 0,
            beta: 1,
            n: 1,
        };
        assert_eq!(spec.evaluate().unwrap_err(), OracleError::InvalidAlpha);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        // exchanging the two binomial factors leaves the sum unchanged
        #[test]
        fn double_diff_symmetric(beta in 0u32..4, m in 0u64..8, n in 0u64..8) {
            prop_assert_eq!(double_diff_sum(beta, m, n), double_diff_sum(beta, n, m));
        }

        // all oracle outputs are non-negative, and centered sums with
        // beta >= 1 are even (diagonal vanishes, off-diagonal pairs up)
        #[test]
        fn centered_even_and_non_negative(alpha in 1u32..4, beta in 1u32..4, n in 0u64..6) {
            let v = centered_double_sum(alpha, beta, n);
            prop_assert!(v >= BigInt::zero());
            prop_assert!((&v % 2u8).is_zero());
        }
    }
}

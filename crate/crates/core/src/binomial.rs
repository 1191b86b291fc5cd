//! Exact binomial coefficients, with the convention that C(n, k) = 0
//! whenever k < 0, k > n, or n < 0.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// C(n, k) with the zero convention for out-of-range arguments.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The full row C(n, 0..=n), built by the multiplicative recurrence
/// row[j+1] = row[j] * (n - j) / (j + 1).
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    row.push(BigInt::one());
    for j in 0..n {
        let next = (&row[j as usize] * BigInt::from(n - j)) / BigInt::from(j + 1);
        row.push(next);
    }
    row
}

/// C(2n, n).
pub fn central_binomial(n: u64) -> BigInt {
    binomial(2 * n as i64, n as i64)
}

//! Closed-form right-hand sides for every identity family, evaluated
//! exactly and never by brute-force summation.
//!
//! Formulas with denominators such as (2n-1)(2n-3) are evaluated over
//! rationals end to end and asserted integral at the last step, so a
//! transcription slip fails loudly instead of silently truncating.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::{binomial, central_binomial};
use crate::gamma::omega;
use crate::oracle::single_sum;
use crate::poly::UniPolyQ;
use crate::rational::Rational;
use crate::tuenter::{p_poly, q_poly};

/// One verifiable identity family. Each tag pairs exactly one closed-form
/// right-hand side with one brute-force oracle family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityTag {
    /// `sum_k C(2n,n+k)|k| = n C(2n,n)`.
    Best,
    /// Single sums against the Tuenter P/Q polynomials, both parities.
    TuenterS,
    /// Two-row difference sums collapse to a single sum at m+n.
    TReduction,
    /// `W_1(n) = 2n^2 C(2n,n)^2`.
    W1,
    /// Odd exponents via the omega rational functions.
    WOdd,
    /// Even exponents via alternating products of single sums.
    WEven,
    /// The squared-Vandermonde triple sum.
    Triple,
    /// `S_{alpha,1}` closed forms, alpha in 1..=8.
    SAlpha1(u32),
    /// The five mixed-monomial double-sum identities, id in 1..=5.
    OFamily(u8),
    /// Lower bound `2mn C(2m,m) C(2n,n)`, strict unless m = n.
    IneqBound,
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityTag::Best => write!(f, "BEST"),
            IdentityTag::TuenterS => write!(f, "TUENTER_S"),
            IdentityTag::TReduction => write!(f, "T_REDUCTION"),
            IdentityTag::W1 => write!(f, "W1"),
            IdentityTag::WOdd => write!(f, "W_ODD"),
            IdentityTag::WEven => write!(f, "W_EVEN"),
            IdentityTag::Triple => write!(f, "TRIPLE"),
            IdentityTag::SAlpha1(alpha) => write!(f, "S_ALPHA1_{alpha}"),
            IdentityTag::OFamily(id) => write!(f, "O{id}"),
            IdentityTag::IneqBound => write!(f, "INEQ_BOUND"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedError {
    /// Family parameter outside the catalog.
    Unsupported { what: String },
    /// The closed form has a pole at this argument; callers fall back to
    /// the oracle and flag the instance.
    UndefinedAt { what: String, n: u64 },
}

impl fmt::Display for ClosedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedError::Unsupported { what } => write!(f, "unsupported family: {what}"),
            ClosedError::UndefinedAt { what, n } => {
                write!(f, "closed form {what} undefined at n = {n}")
            }
        }
    }
}

impl std::error::Error for ClosedError {}

/// `n C(2n, n)`.
pub fn best_closed(n: u64) -> BigInt {
    BigInt::from(n) * central_binomial(n)
}

/// Single sum with exponent `e`: `Q_{e/2}(n) 2^(2n-e/2)` for even `e`,
/// `P_{(e-1)/2}(n) n C(2n,n)` for odd `e`. Panics if the even branch fails
/// its integrality assertion.
pub fn tuenter_closed(exponent: u32, n: u64) -> BigInt {
    if exponent % 2 == 1 {
        let beta = (exponent - 1) / 2;
        let p = p_poly(beta).eval(&Rational::from(n));
        (p * Rational::from(BigInt::from(n) * central_binomial(n)))
            .expect_integer("odd single-sum closed form")
    } else {
        let beta = exponent / 2;
        let q = q_poly(beta).eval(&Rational::from(n));
        (q * Rational::pow2(2 * n as i64 - beta as i64))
            .expect_integer("even single-sum closed form")
    }
}

/// The two-row reduction: the closed form of the difference double sum is
/// the single sum at m + n.
pub fn reduced_double_closed(beta: u32, m: u64, n: u64) -> BigInt {
    single_sum(beta, m + n)
}

/// `W_1(n) = 2n^2 C(2n,n)^2`.
pub fn w1_closed(n: u64) -> BigInt {
    let c = central_binomial(n);
    2 * BigInt::from(n * n) * &c * &c
}

/// `W_{2k+1}(n) = omega_k(n) C(2n,n)^2`, evaluated exactly; n = 0 is 0.
pub fn w_odd_closed(k: u32, n: u64) -> Result<BigInt, ClosedError> {
    if n == 0 {
        return Ok(BigInt::zero());
    }
    let om = omega(k);
    let value = om
        .omega
        .eval(&Rational::from(n))
        .ok_or(ClosedError::UndefinedAt {
            what: format!("omega_{k}"),
            n,
        })?;
    let c = Rational::from(central_binomial(n));
    Ok((value * &c * &c).expect_integer("odd-exponent closed form"))
}

/// `W_{2r}(n)` via the alternating product of single sums, cross-checked
/// against the equivalent Q-polynomial route; panics if the two routes
/// disagree or the result is non-integral.
pub fn w_even_closed(r: u32, n: u64) -> BigInt {
    let mut via_s = BigInt::zero();
    let mut via_q = Rational::zero();
    for k in 0..=2 * r {
        let sign_positive = k % 2 == 0;
        let choose = binomial(2 * r as i64, k as i64);
        let s_term = &choose * single_sum(2 * k, n) * single_sum(4 * r - 2 * k, n);
        let q_term = Rational::from(choose)
            * q_poly(k).eval(&Rational::from(n))
            * q_poly(2 * r - k).eval(&Rational::from(n));
        if sign_positive {
            via_s += s_term;
            via_q = via_q + q_term;
        } else {
            via_s -= s_term;
            via_q = via_q - q_term;
        }
    }
    let via_q = (via_q * Rational::pow2(4 * n as i64 - 2 * r as i64))
        .expect_integer("even-exponent Q route");
    assert_eq!(
        via_s, via_q,
        "even-exponent closed form: S route and Q route disagree at r={r} n={n}"
    );
    via_s
}

fn eval_int_poly(coeffs: &[i64], n: u64) -> Rational {
    UniPolyQ::from_int_coeffs(coeffs).eval(&Rational::from(n))
}

fn rational_times_binomial(num: Rational, den: Rational, binom: BigInt, context: &str) -> BigInt {
    (&(num * Rational::from(binom)) / &den).expect_integer(context)
}

/// Closed forms for `S_{alpha,1}(n)`, alpha in 1..=8. Even alpha pairs a
/// rational function of n with C(2n,n)^2; odd alpha pairs one with a
/// central-strip binomial C(4n-c, 2n-c). n = 0 gives 0 for every alpha,
/// and alpha = 7 at n = 1 is the special value 12 (the generic formula
/// starts at n = 2).
pub fn s_alpha1_closed(alpha: u32, n: u64) -> Result<BigInt, ClosedError> {
    if !(1..=8).contains(&alpha) {
        return Err(ClosedError::Unsupported {
            what: format!("S_ALPHA1_{alpha}"),
        });
    }
    if n == 0 {
        return Ok(BigInt::zero());
    }
    let ni = n as i64;
    let c2 = {
        let c = central_binomial(n);
        &c * &c
    };
    let value = match alpha {
        1 => BigInt::from(2 * n) * binomial(4 * ni, 2 * ni),
        2 => 2 * BigInt::from(n * n) * c2,
        3 => rational_times_binomial(
            eval_int_poly(&[0, 0, -8, 20], n), // 4n^2(5n-2)
            eval_int_poly(&[-1, 4], n),
            binomial(4 * ni - 1, 2 * ni - 1),
            "S_{3,1}",
        ),
        4 => rational_times_binomial(
            eval_int_poly(&[0, 0, 0, -6, 8], n), // 2n^3(4n-3)
            eval_int_poly(&[-1, 2], n),
            c2,
            "S_{4,1}",
        ),
        5 => rational_times_binomial(
            // 8n^2(43n^3 - 70n^2 + 36n - 6)
            eval_int_poly(&[0, 0, -48, 288, -560, 344], n),
            eval_int_poly(&[6, -20, 16], n), // (4n-2)(4n-3)
            binomial(4 * ni - 2, 2 * ni - 2),
            "S_{5,1}",
        ),
        6 => rational_times_binomial(
            eval_int_poly(&[0, 0, 0, 10, -30, 22], n), // 2n^3(11n^2-15n+5)
            eval_int_poly(&[-1, 2], n),
            c2,
            "S_{6,1}",
        ),
        7 => {
            if n == 1 {
                BigInt::from(12)
            } else {
                rational_times_binomial(
                    // 16n^2(531n^5 - 1960n^4 + 2800n^3 - 1952n^2 + 668n - 90)
                    eval_int_poly(&[0, 0, -1440, 10688, -31232, 44800, -31360, 8496], n),
                    // (4n-3)(4n-4)(4n-5)
                    eval_int_poly(&[-60, 188, -192, 64], n),
                    binomial(4 * ni - 3, 2 * ni - 3),
                    "S_{7,1}",
                )
            }
        }
        8 => rational_times_binomial(
            // 2n^3(80n^4 - 306n^3 + 428n^2 - 266n + 63)
            eval_int_poly(&[0, 0, 0, 126, -532, 856, -612, 160], n),
            eval_int_poly(&[3, -8, 4], n), // (2n-1)(2n-3)
            c2,
            "S_{8,1}",
        ),
        _ => unreachable!(),
    };
    Ok(value)
}

/// The weight string of the double sum matched by each O-family identity,
/// in the variables k1, k2.
pub fn o_family_weight(id: u8) -> Result<&'static str, ClosedError> {
    match id {
        1 => Ok("abs(k1^2*(k1^2-k2^2))"),
        2 => Ok("abs(k1^4*(k1^2-k2^2))"),
        3 => Ok("abs(k1*k2*(k1^2-k2^2))"),
        4 => Ok("abs(k1^2*k2^2*(k1^2-k2^2))"),
        5 => Ok("abs(k1^3*k2^3*(k1^2-k2^2))"),
        _ => Err(ClosedError::Unsupported {
            what: format!("O{id}"),
        }),
    }
}

/// Closed forms for the O-family identities; n = 0 gives 0.
pub fn o_family_closed(id: u8, n: u64) -> Result<BigInt, ClosedError> {
    if n == 0 {
        o_family_weight(id)?;
        return Ok(BigInt::zero());
    }
    let c2 = {
        let c = central_binomial(n);
        &c * &c
    };
    let (num, den): (Rational, Rational) = match id {
        1 => (
            eval_int_poly(&[0, 0, 0, -3, 4], n),
            eval_int_poly(&[-1, 2], n),
        ),
        2 => (
            eval_int_poly(&[0, 0, 0, 5, -14, 10], n),
            eval_int_poly(&[-1, 2], n),
        ),
        3 => (
            eval_int_poly(&[0, 0, 0, -2, 2], n),
            eval_int_poly(&[-1, 2], n),
        ),
        4 => (
            eval_int_poly(&[0, 0, 0, 0, -2, 2], n),
            eval_int_poly(&[-1, 2], n),
        ),
        5 => (
            // 2n^4(n-1)(3n^2-6n+2)
            eval_int_poly(&[0, 0, 0, 0, -4, 16, -18, 6], n),
            eval_int_poly(&[3, -8, 4], n),
        ),
        _ => {
            return Err(ClosedError::Unsupported {
                what: format!("O{id}"),
            })
        }
    };
    if den.is_zero() {
        return Err(ClosedError::UndefinedAt {
            what: format!("O{id}"),
            n,
        });
    }
    Ok(rational_times_binomial(
        num,
        den,
        c2,
        "O-family closed form",
    ))
}

/// `3n^3(n-1) C(2n,n)^2 2^(2n-1)`; the n^3(n-1) factor vanishes before the
/// halved power could ever make the value fractional.
pub fn triple_closed(n: u64) -> BigInt {
    if n <= 1 {
        return BigInt::zero();
    }
    let c = central_binomial(n);
    let power = BigInt::one() << (2 * n as usize - 1);
    3 * BigInt::from(n * n * n) * BigInt::from(n - 1) * &c * &c * power
}

/// `2mn C(2m,m) C(2n,n)`, the two-row lower bound.
pub fn ineq_lower_bound(m: u64, n: u64) -> BigInt {
    2 * BigInt::from(m) * BigInt::from(n) * central_binomial(m) * central_binomial(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{centered_double_sum, double_diff_sum, generic_sum};
    use crate::weight::WeightExpr;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn best_matches_oracle() {
        for n in 0..=20u64 {
            assert_eq!(best_closed(n), single_sum(1, n));
        }
    }

    #[test]
    fn tuenter_closed_examples() {
        assert_eq!(tuenter_closed(1, 1), big(2));
        assert_eq!(tuenter_closed(0, 2), big(16));
        assert_eq!(tuenter_closed(2, 2), big(16));
    }

    #[test]
    fn reduced_double_examples() {
        assert_eq!(reduced_double_closed(1, 1, 1), big(12));
        assert_eq!(reduced_double_closed(0, 2, 1), big(64));
        assert_eq!(reduced_double_closed(2, 1, 2), big(96));
        assert_eq!(reduced_double_closed(2, 1, 2), double_diff_sum(2, 1, 2));
    }

    #[test]
    fn w_odd_examples() {
        assert_eq!(w_odd_closed(0, 1).unwrap(), big(8));
        assert_eq!(w_odd_closed(1, 1).unwrap(), big(8));
        for k in 0..=4u32 {
            assert_eq!(w_odd_closed(k, 0).unwrap(), big(0), "k={k}");
        }
    }

    #[test]
    fn w_even_examples() {
        assert_eq!(w_even_closed(0, 1), big(16));
        assert_eq!(w_even_closed(1, 1), big(8));
        assert_eq!(w_even_closed(2, 1), big(8));
        assert_eq!(w_even_closed(2, 1), centered_double_sum(2, 4, 1));
        // W_{2r}(0) is 1 for r = 0 (0^0 = 1) and 0 afterwards
        assert_eq!(w_even_closed(0, 0), big(1));
        assert_eq!(w_even_closed(3, 0), big(0));
    }

    #[test]
    fn s_alpha1_examples() {
        assert_eq!(s_alpha1_closed(2, 1).unwrap(), big(8));
        assert_eq!(s_alpha1_closed(7, 1).unwrap(), big(12));
        assert_eq!(s_alpha1_closed(3, 1).unwrap(), big(12));
        assert_eq!(s_alpha1_closed(3, 1).unwrap(), centered_double_sum(3, 1, 1));
        for alpha in 1..=8u32 {
            assert_eq!(s_alpha1_closed(alpha, 0).unwrap(), big(0), "alpha={alpha}");
        }
        assert!(matches!(
            s_alpha1_closed(9, 3),
            Err(ClosedError::Unsupported { .. })
        ));
        assert!(matches!(
            s_alpha1_closed(0, 3),
            Err(ClosedError::Unsupported { .. })
        ));
    }

    #[test]
    fn s_alpha1_structural_factors() {
        // even alpha: value / C(2n,n)^2 reproduces the printed rational;
        // spot-check S_{4,1}
        for n in 1..=8u64 {
            let c = central_binomial(n);
            let lhs = Rational::from(s_alpha1_closed(4, n).unwrap());
            let ratio = &lhs / &Rational::from(&c * &c);
            let expected = &eval_int_poly(&[0, 0, 0, -6, 8], n) / &eval_int_poly(&[-1, 2], n);
            assert_eq!(ratio, expected, "n={n}");
        }
        // odd alpha: value / C(4n-1, 2n-1) reproduces the printed rational;
        // spot-check S_{3,1}
        for n in 1..=8u64 {
            let ni = n as i64;
            let lhs = Rational::from(s_alpha1_closed(3, n).unwrap());
            let ratio = &lhs / &Rational::from(binomial(4 * ni - 1, 2 * ni - 1));
            let expected = &eval_int_poly(&[0, 0, -8, 20], n) / &eval_int_poly(&[-1, 4], n);
            assert_eq!(ratio, expected, "n={n}");
        }
    }

    #[test]
    fn o_family_examples() {
        assert_eq!(o_family_closed(3, 1).unwrap(), big(0));
        assert_eq!(o_family_closed(4, 1).unwrap(), big(0));
        assert_eq!(o_family_closed(1, 1).unwrap(), big(4));
        let w = WeightExpr::parse(o_family_weight(1).unwrap(), 2).unwrap();
        assert_eq!(
            o_family_closed(1, 1).unwrap(),
            generic_sum(&[1, 1], &w).unwrap()
        );
        assert!(matches!(
            o_family_closed(6, 1),
            Err(ClosedError::Unsupported { .. })
        ));
    }

    #[test]
    fn triple_examples() {
        assert_eq!(triple_closed(0), big(0));
        assert_eq!(triple_closed(1), big(0));
        assert_eq!(triple_closed(2), big(6912));
    }

    #[test]
    fn ineq_examples() {
        assert_eq!(ineq_lower_bound(1, 2), big(48));
        assert_eq!(ineq_lower_bound(1, 1), big(8));
        assert_eq!(ineq_lower_bound(1, 1), centered_double_sum(2, 1, 1));
        assert_eq!(ineq_lower_bound(0, 5), big(0));
    }

    #[test]
    fn tag_display() {
        assert_eq!(IdentityTag::SAlpha1(3).to_string(), "S_ALPHA1_3");
        assert_eq!(IdentityTag::OFamily(5).to_string(), "O5");
        assert_eq!(IdentityTag::TReduction.to_string(), "T_REDUCTION");
    }
}

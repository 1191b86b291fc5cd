//! Tuenter polynomials: the degree-beta integer polynomials P and Q with
//!
//! ```text
//! S_{2b+1}(n) = P_b(n) * n * C(2n, n)      S_{2b}(n) = Q_b(n) * 2^(2n-b)
//! ```
//!
//! where `S_e(n) = sum_k C(2n, n+k) |k|^e`. Both families are constructed
//! by exact interpolation against the brute-force single sum and certified
//! on the spot: degree at most beta, integer coefficients, and correct
//! extrapolation at one node beyond the interpolation range. Certified
//! tables are cached per beta and immutable once published.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use crate::binomial::central_binomial;
use crate::oracle::single_sum;
use crate::poly::{interpolate, UniPolyQ};
use crate::rational::Rational;

/// The certified pair (P_beta, Q_beta).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuenterPair {
    pub beta: u32,
    pub p: UniPolyQ,
    pub q: UniPolyQ,
}

static P_CACHE: OnceLock<Mutex<HashMap<u32, UniPolyQ>>> = OnceLock::new();
static Q_CACHE: OnceLock<Mutex<HashMap<u32, UniPolyQ>>> = OnceLock::new();

fn cached(
    cache: &'static OnceLock<Mutex<HashMap<u32, UniPolyQ>>>,
    beta: u32,
    build: fn(u32) -> UniPolyQ,
) -> UniPolyQ {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = map.lock().unwrap().get(&beta) {
        return p.clone();
    }
    // built outside the lock: construction calls the oracle, wants no lock held
    let poly = build(beta);
    map.lock().unwrap().entry(beta).or_insert(poly).clone()
}

/// P_beta, interpolated from `S_{2b+1}(n) / (n * C(2n, n))` at n = 1..=beta+1.
///
/// Panics if certification fails (degree overflow, a non-integer
/// coefficient, or an extrapolation mismatch): any of those would mean the
/// oracle and the polynomial model disagree.
pub fn p_poly(beta: u32) -> UniPolyQ {
    cached(&P_CACHE, beta, build_p)
}

/// Q_beta, interpolated from `S_{2b}(n) * 2^(b-2n)` at n = 0..=beta.
/// Certification as in [`p_poly`].
pub fn q_poly(beta: u32) -> UniPolyQ {
    cached(&Q_CACHE, beta, build_q)
}

pub fn tuenter_pair(beta: u32) -> TuenterPair {
    TuenterPair {
        beta,
        p: p_poly(beta),
        q: q_poly(beta),
    }
}

/// `S_{2b+1}(n)` predicted by P_beta; used for extrapolation checks.
pub fn odd_sum_from_p(p: &UniPolyQ, n: u64) -> Rational {
    let scale = Rational::from(BigInt::from(n) * central_binomial(n));
    p.eval(&Rational::from(n)) * scale
}

/// `S_{2b}(n)` predicted by Q_beta.
pub fn even_sum_from_q(q: &UniPolyQ, beta: u32, n: u64) -> Rational {
    q.eval(&Rational::from(n)) * Rational::pow2(2 * n as i64 - beta as i64)
}

fn build_p(beta: u32) -> UniPolyQ {
    let points: Vec<(Rational, Rational)> = (1..=u64::from(beta) + 1)
        .map(|n| {
            let value = single_sum(2 * beta + 1, n);
            let scale = BigInt::from(n) * central_binomial(n);
            (Rational::from(n), Rational::new(value, scale))
        })
        .collect();
    let p = interpolate(&points).expect("distinct interpolation nodes");
    assert!(
        p.degree().is_none_or(|d| d <= beta as usize),
        "P_{beta}: interpolant degree exceeds {beta}"
    );
    assert!(p.is_integer(), "P_{beta}: non-integer coefficient in {p}");
    let check_n = u64::from(beta) + 2;
    assert_eq!(
        odd_sum_from_p(&p, check_n),
        Rational::from(single_sum(2 * beta + 1, check_n)),
        "P_{beta}: extrapolation mismatch at n = {check_n}"
    );
    p
}

fn build_q(beta: u32) -> UniPolyQ {
    let points: Vec<(Rational, Rational)> = (0..=u64::from(beta))
        .map(|n| {
            let value = Rational::from(single_sum(2 * beta, n));
            let scaled = value * Rational::pow2(beta as i64 - 2 * n as i64);
            (Rational::from(n), scaled)
        })
        .collect();
    let q = interpolate(&points).expect("distinct interpolation nodes");
    assert!(
        q.degree().is_none_or(|d| d <= beta as usize),
        "Q_{beta}: interpolant degree exceeds {beta}"
    );
    assert!(q.is_integer(), "Q_{beta}: non-integer coefficient in {q}");
    let check_n = u64::from(beta) + 1;
    assert_eq!(
        even_sum_from_q(&q, beta, check_n),
        Rational::from(single_sum(2 * beta, check_n)),
        "Q_{beta}: extrapolation mismatch at n = {check_n}"
    );
    q
}

//! Monte Carlo cross-check of the random-walk reading of the sums:
//! `4^(-sum n_i) S(n)` is the expected weight of the endpoint of d
//! independent 2n_i-step symmetric Bernoulli walks.
//!
//! The generator is SplitMix64 (Steele, Lea & Flood's published constants),
//! fixed so that a (config, seed) pair always reproduces the same estimate
//! bit for bit. Weights are evaluated exactly and accumulated in big
//! integers; floating point enters only in the final mean and its standard
//! error.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::oracle::{generic_sum, MAX_GENERIC_DIMS};
use crate::rational::Rational;
use crate::weight::WeightExpr;

/// Configurations with at most this many lattice points get an exact
/// companion value from the brute-force oracle.
const EXACT_STATE_LIMIT: u64 = 1_000_000;

/// Deterministic 64-bit generator; the seed is part of the public
/// interface of every estimate.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

#[derive(Debug, Clone)]
pub struct WalkConfig {
    /// 2*n_list[i] steps are taken in dimension i.
    pub n_list: Vec<u64>,
    pub weight: WeightExpr,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct EstimateResult {
    pub mean: f64,
    pub std_error: f64,
    /// Exact expectation when the configuration is small enough to sum.
    pub exact: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkError {
    NoSamples,
    ArityMismatch { weight_arity: usize, dims: usize },
    TooManyDimensions { dims: usize },
    EmptyDimensions,
}

impl fmt::Display for WalkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkError::NoSamples => write!(f, "at least one sample is required"),
            WalkError::ArityMismatch { weight_arity, dims } => write!(
                f,
                "weight arity {weight_arity} does not match {dims} walk dimensions"
            ),
            WalkError::TooManyDimensions { dims } => {
                write!(
                    f,
                    "{dims} dimensions exceed the supported maximum of {MAX_GENERIC_DIMS}"
                )
            }
            WalkError::EmptyDimensions => write!(f, "at least one dimension is required"),
        }
    }
}

impl std::error::Error for WalkError {}

// 2n fair sign bits; the endpoint offset is (#up - n).
fn endpoint_offset(rng: &mut SplitMix64, n: u64) -> i64 {
    let mut remaining = 2 * n;
    let mut ups: u64 = 0;
    while remaining >= 64 {
        ups += u64::from(rng.next_u64().count_ones());
        remaining -= 64;
    }
    if remaining > 0 {
        let mask = (1u64 << remaining) - 1;
        ups += u64::from((rng.next_u64() & mask).count_ones());
    }
    ups as i64 - n as i64
}

/// Simulates `cfg.samples` endpoints and averages the weight, with the
/// sample standard deviation over sqrt(samples) as the error estimate.
pub fn estimate_expectation(cfg: &WalkConfig) -> Result<EstimateResult, WalkError> {
    let d = cfg.n_list.len();
    if d == 0 {
        return Err(WalkError::EmptyDimensions);
    }
    if d > MAX_GENERIC_DIMS {
        return Err(WalkError::TooManyDimensions { dims: d });
    }
    if cfg.weight.arity() != d {
        return Err(WalkError::ArityMismatch {
            weight_arity: cfg.weight.arity(),
            dims: d,
        });
    }
    if cfg.samples == 0 {
        return Err(WalkError::NoSamples);
    }

    let exact = exact_expectation(cfg);
    let mut rng = SplitMix64::new(cfg.seed);
    let mut point = vec![BigInt::zero(); d];
    let mut sum = BigInt::zero();
    let mut sum_sq = BigInt::zero();
    for _ in 0..cfg.samples {
        for (slot, &n) in point.iter_mut().zip(&cfg.n_list) {
            *slot = BigInt::from(endpoint_offset(&mut rng, n));
        }
        let w = cfg.weight.eval(&point).expect("arity checked above");
        sum_sq += &w * &w;
        sum += w;
    }

    let count = BigInt::from(cfg.samples);
    let mean = Rational::new(sum.clone(), count.clone()).to_f64();
    let std_error = if cfg.samples == 1 {
        0.0
    } else {
        // variance of the mean: s^2/N = (N*sum_sq - sum^2) / (N^2 (N-1)),
        // exact until the final square root
        let mean_variance = Rational::new(
            &count * sum_sq - &sum * &sum,
            &count * &count * (&count - BigInt::from(1u8)),
        );
        mean_variance.to_f64().sqrt()
    };
    Ok(EstimateResult {
        mean,
        std_error,
        exact,
    })
}

fn exact_expectation(cfg: &WalkConfig) -> Option<Rational> {
    let mut states: u64 = 1;
    for &n in &cfg.n_list {
        states = states.checked_mul(2 * n + 1)?;
        if states > EXACT_STATE_LIMIT {
            return None;
        }
    }
    let total = generic_sum(&cfg.n_list, &cfg.weight).ok()?;
    let steps: u64 = cfg.n_list.iter().sum();
    Some(Rational::from(total) * Rational::pow2(-2 * steps as i64))
}

//! Wall-clock comparison of a family's brute-force oracle against its
//! closed form. Values are checked for equality at a small calibration
//! point before anything is timed, and again at the benchmark point.

use std::fmt;
use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use num_bigint::BigInt;

use crate::closed::{
    best_closed, o_family_closed, o_family_weight, s_alpha1_closed, triple_closed, tuenter_closed,
    w1_closed, w_even_closed, w_odd_closed, ClosedError, IdentityTag,
};
use crate::oracle::{centered_double_sum, generic_sum, single_sum, triple_vandermonde_sum};
use crate::verify::{MAX_DOUBLE_N, MAX_TRIPLE_N};
use crate::weight::WeightExpr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BenchError {
    Unsupported {
        family: String,
    },
    RangeGuard {
        what: String,
    },
    CalibrationMismatch {
        n: u64,
        oracle: BigInt,
        closed: BigInt,
    },
    Closed(ClosedError),
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::Unsupported { family } => {
                write!(f, "family {family} has no single-parameter benchmark")
            }
            BenchError::RangeGuard { what } => write!(f, "range guard exceeded: {what}"),
            BenchError::CalibrationMismatch { n, oracle, closed } => write!(
                f,
                "calibration failed at n = {n}: oracle {oracle} != closed form {closed}"
            ),
            BenchError::Closed(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BenchError {}

impl From<ClosedError> for BenchError {
    fn from(e: ClosedError) -> Self {
        BenchError::Closed(e)
    }
}

#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub family: IdentityTag,
    /// Exponent parameter for the families that take one (beta, k, or r).
    pub exponent: Option<u32>,
    pub n: u64,
    pub calibration_n: u64,
    pub repetitions: u32,
    pub value: BigInt,
    pub values_equal: bool,
    pub oracle_ns: Vec<u128>,
    pub closed_ns: Vec<u128>,
}

impl BenchRecord {
    fn median(samples: &[u128]) -> u128 {
        let mut sorted = samples.to_vec();
        sorted.sort_unstable();
        sorted[sorted.len() / 2]
    }

    pub fn median_oracle_ns(&self) -> u128 {
        Self::median(&self.oracle_ns)
    }

    pub fn median_closed_ns(&self) -> u128 {
        Self::median(&self.closed_ns)
    }

    /// Median oracle time over median closed-form time.
    pub fn speedup(&self) -> f64 {
        self.median_oracle_ns() as f64 / self.median_closed_ns().max(1) as f64
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "family={} exponent={} n={} reps={}",
            self.family,
            self.exponent.map_or("-".to_string(), |e| e.to_string()),
            self.n,
            self.repetitions
        );
        let _ = writeln!(out, "calibration at n={}: values equal", self.calibration_n);
        let _ = writeln!(
            out,
            "values at n={}: {}",
            self.n,
            if self.values_equal {
                "equal"
            } else {
                "MISMATCH"
            }
        );
        let _ = writeln!(out, "value: {}", self.value);
        let _ = writeln!(
            out,
            "oracle ns: {:?} (median {})",
            self.oracle_ns,
            self.median_oracle_ns()
        );
        let _ = writeln!(
            out,
            "closed ns: {:?} (median {})",
            self.closed_ns,
            self.median_closed_ns()
        );
        let _ = writeln!(out, "speedup: {:.1}x", self.speedup());
        out
    }
}

type ValueFn = Box<dyn Fn(u64) -> Result<BigInt, BenchError>>;

fn routes(family: IdentityTag, exponent: Option<u32>) -> Result<(ValueFn, ValueFn), BenchError> {
    let route: (ValueFn, ValueFn) = match family {
        IdentityTag::Best => (
            Box::new(|n| Ok(single_sum(1, n))),
            Box::new(|n| Ok(best_closed(n))),
        ),
        IdentityTag::TuenterS => {
            let e = exponent.unwrap_or(4);
            (
                Box::new(move |n| Ok(single_sum(e, n))),
                Box::new(move |n| Ok(tuenter_closed(e, n))),
            )
        }
        IdentityTag::W1 => (
            Box::new(|n| Ok(centered_double_sum(2, 1, n))),
            Box::new(|n| Ok(w1_closed(n))),
        ),
        IdentityTag::WOdd => {
            let k = exponent.unwrap_or(1);
            (
                Box::new(move |n| Ok(centered_double_sum(2, 2 * k + 1, n))),
                Box::new(move |n| Ok(w_odd_closed(k, n)?)),
            )
        }
        IdentityTag::WEven => {
            let r = exponent.unwrap_or(1);
            (
                Box::new(move |n| Ok(centered_double_sum(2, 2 * r, n))),
                Box::new(move |n| Ok(w_even_closed(r, n))),
            )
        }
        IdentityTag::Triple => (
            Box::new(|n| Ok(triple_vandermonde_sum(n))),
            Box::new(|n| Ok(triple_closed(n))),
        ),
        IdentityTag::SAlpha1(alpha) => (
            Box::new(move |n| Ok(centered_double_sum(alpha.max(1), 1, n))),
            Box::new(move |n| Ok(s_alpha1_closed(alpha, n)?)),
        ),
        IdentityTag::OFamily(id) => {
            let weight = WeightExpr::parse(o_family_weight(id)?, 2).expect("catalog weight");
            (
                Box::new(move |n| Ok(generic_sum(&[n, n], &weight).expect("two dimensions"))),
                Box::new(move |n| Ok(o_family_closed(id, n)?)),
            )
        }
        IdentityTag::TReduction | IdentityTag::IneqBound => {
            return Err(BenchError::Unsupported {
                family: family.to_string(),
            })
        }
    };
    Ok(route)
}

/// Times `repetitions` runs of each route at `n` after a value-equality
/// calibration at `min(n, 50)`.
pub fn bench(
    family: IdentityTag,
    exponent: Option<u32>,
    n: u64,
    repetitions: u32,
) -> Result<BenchRecord, BenchError> {
    let cap = if family == IdentityTag::Triple {
        MAX_TRIPLE_N
    } else {
        MAX_DOUBLE_N
    };
    if n > cap {
        return Err(BenchError::RangeGuard {
            what: format!("n = {n} exceeds {cap}"),
        });
    }
    let repetitions = repetitions.max(1);
    let (oracle, closed) = routes(family, exponent)?;

    let calibration_n = n.min(50);
    let oracle_cal = oracle(calibration_n)?;
    let closed_cal = closed(calibration_n)?;
    if oracle_cal != closed_cal {
        return Err(BenchError::CalibrationMismatch {
            n: calibration_n,
            oracle: oracle_cal,
            closed: closed_cal,
        });
    }

    let mut oracle_ns = Vec::with_capacity(repetitions as usize);
    let mut oracle_value = BigInt::from(0u8);
    for _ in 0..repetitions {
        let t = Instant::now();
        oracle_value = black_box(oracle(n)?);
        oracle_ns.push(t.elapsed().as_nanos());
    }
    let mut closed_ns = Vec::with_capacity(repetitions as usize);
    let mut closed_value = BigInt::from(0u8);
    for _ in 0..repetitions {
        let t = Instant::now();
        closed_value = black_box(closed(n)?);
        closed_ns.push(t.elapsed().as_nanos());
    }

    Ok(BenchRecord {
        family,
        exponent,
        n,
        calibration_n,
        repetitions,
        values_equal: oracle_value == closed_value,
        value: closed_value,
        oracle_ns,
        closed_ns,
    })
}

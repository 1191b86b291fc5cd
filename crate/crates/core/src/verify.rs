//! Campaign runner: pits each identity family's closed form against its
//! brute-force oracle over a parameter box and collects a
//! [`VerificationReport`].

use std::fmt;

use crate::closed::{
    best_closed, ineq_lower_bound, o_family_closed, o_family_weight, reduced_double_closed,
    s_alpha1_closed, triple_closed, tuenter_closed, w1_closed, w_even_closed, w_odd_closed,
    ClosedError, IdentityTag,
};
use crate::oracle::{
    centered_double_sum, double_diff_sum, generic_sum, single_sum, triple_vandermonde_sum,
    unrestricted_double_sum,
};
use crate::poly::{interpolate, UniPolyQ};
use crate::rational::Rational;
use crate::report::{Instance, VerificationReport};
use crate::weight::WeightExpr;

/// Desk-scale guards: exact double sums stay tractable to n = 400,
/// triple sums to n = 60.
pub const MAX_DOUBLE_N: u64 = 400;
pub const MAX_TRIPLE_N: u64 = 60;
pub const MAX_EXPONENT: u32 = 16;
pub const MAX_ODD_LEVEL: u32 = 10;

/// Parameter box for a campaign. Families ignore the fields they do not
/// use; `n` always sweeps `0..=n_max`.
#[derive(Debug, Clone, Copy)]
pub struct Ranges {
    pub n_max: u64,
    pub m_max: u64,
    pub beta_max: u32,
    pub k_max: u32,
    pub r_max: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    RangeGuard { what: String },
    Closed(ClosedError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::RangeGuard { what } => write!(f, "range guard exceeded: {what}"),
            VerifyError::Closed(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<ClosedError> for VerifyError {
    fn from(e: ClosedError) -> Self {
        VerifyError::Closed(e)
    }
}

/// The ranges each family is verified over by default; these match the
/// acceptance sweep.
pub fn default_ranges(family: IdentityTag) -> Ranges {
    let base = Ranges {
        n_max: 12,
        m_max: 12,
        beta_max: 6,
        k_max: 6,
        r_max: 5,
    };
    match family {
        IdentityTag::Best | IdentityTag::W1 => Ranges { n_max: 30, ..base },
        IdentityTag::TuenterS => Ranges {
            beta_max: 10,
            ..base
        },
        IdentityTag::Triple => Ranges { n_max: 10, ..base },
        _ => base,
    }
}

fn guard(family: IdentityTag, ranges: &Ranges) -> Result<(), VerifyError> {
    let n_cap = match family {
        IdentityTag::Triple => MAX_TRIPLE_N,
        _ => MAX_DOUBLE_N,
    };
    if ranges.n_max > n_cap || ranges.m_max > n_cap {
        return Err(VerifyError::RangeGuard {
            what: format!(
                "{family}: n range up to {} exceeds {n_cap}",
                ranges.n_max.max(ranges.m_max)
            ),
        });
    }
    if ranges.beta_max > MAX_EXPONENT {
        return Err(VerifyError::RangeGuard {
            what: format!(
                "{family}: beta range {} exceeds {MAX_EXPONENT}",
                ranges.beta_max
            ),
        });
    }
    if ranges.k_max > MAX_ODD_LEVEL || ranges.r_max > MAX_ODD_LEVEL {
        return Err(VerifyError::RangeGuard {
            what: format!("{family}: recurrence level exceeds {MAX_ODD_LEVEL}"),
        });
    }
    Ok(())
}

/// Runs one family's campaign over `ranges` and reports every instance.
pub fn verify_identity(
    family: IdentityTag,
    ranges: &Ranges,
) -> Result<VerificationReport, VerifyError> {
    guard(family, ranges)?;
    let mut report = VerificationReport::new(family.to_string());
    match family {
        IdentityTag::Best => {
            for n in 0..=ranges.n_max {
                report.push(Instance::new(
                    &[("n", n.to_string())],
                    single_sum(1, n),
                    best_closed(n),
                ));
            }
        }
        IdentityTag::TuenterS => {
            for beta in 0..=ranges.beta_max {
                for n in 0..=ranges.n_max {
                    for exponent in [2 * beta, 2 * beta + 1] {
                        report.push(Instance::new(
                            &[("exponent", exponent.to_string()), ("n", n.to_string())],
                            single_sum(exponent, n),
                            tuenter_closed(exponent, n),
                        ));
                    }
                }
            }
        }
        IdentityTag::TReduction => {
            for beta in 0..=ranges.beta_max {
                for m in 0..=ranges.m_max {
                    for n in 0..=ranges.n_max {
                        report.push(Instance::new(
                            &[
                                ("beta", beta.to_string()),
                                ("m", m.to_string()),
                                ("n", n.to_string()),
                            ],
                            double_diff_sum(beta, m, n),
                            reduced_double_closed(beta, m, n),
                        ));
                    }
                }
            }
            // unrestricted variant: two plain rows of C(n, .) reduce to the
            // same single sum
            for beta in 0..=ranges.beta_max.min(4) {
                for n in 0..=ranges.n_max {
                    report.push(
                        Instance::new(
                            &[("beta", beta.to_string()), ("n", n.to_string())],
                            unrestricted_double_sum(beta, n),
                            single_sum(beta, n),
                        )
                        .with_note("unrestricted upper-argument variant"),
                    );
                }
            }
        }
        IdentityTag::W1 => {
            for n in 0..=ranges.n_max {
                report.push(Instance::new(
                    &[("n", n.to_string())],
                    centered_double_sum(2, 1, n),
                    w1_closed(n),
                ));
            }
        }
        IdentityTag::WOdd => {
            for k in 0..=ranges.k_max {
                for n in 0..=ranges.n_max {
                    let oracle = centered_double_sum(2, 2 * k + 1, n);
                    match w_odd_closed(k, n) {
                        Ok(closed) => report.push(Instance::new(
                            &[("k", k.to_string()), ("n", n.to_string())],
                            oracle,
                            closed,
                        )),
                        Err(ClosedError::UndefinedAt { .. }) => report.push(
                            Instance::new(
                                &[("k", k.to_string()), ("n", n.to_string())],
                                oracle.clone(),
                                oracle,
                            )
                            .with_note("closed form undefined at this n; oracle value recorded"),
                        ),
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
        IdentityTag::WEven => {
            for r in 0..=ranges.r_max {
                for n in 0..=ranges.n_max {
                    report.push(Instance::new(
                        &[("r", r.to_string()), ("n", n.to_string())],
                        centered_double_sum(2, 2 * r, n),
                        w_even_closed(r, n),
                    ));
                }
            }
        }
        IdentityTag::Triple => {
            for n in 0..=ranges.n_max {
                report.push(Instance::new(
                    &[("n", n.to_string())],
                    triple_vandermonde_sum(n),
                    triple_closed(n),
                ));
            }
        }
        IdentityTag::SAlpha1(alpha) => {
            for n in 0..=ranges.n_max {
                report.push(Instance::new(
                    &[("alpha", alpha.to_string()), ("n", n.to_string())],
                    centered_double_sum(alpha.max(1), 1, n),
                    s_alpha1_closed(alpha, n)?,
                ));
            }
        }
        IdentityTag::OFamily(id) => {
            let weight = WeightExpr::parse(o_family_weight(id)?, 2).expect("catalog weights parse");
            for n in 0..=ranges.n_max {
                let oracle = generic_sum(&[n, n], &weight).expect("arity matches dimensions");
                match o_family_closed(id, n) {
                    Ok(closed) => report.push(Instance::new(
                        &[("id", id.to_string()), ("n", n.to_string())],
                        oracle,
                        closed,
                    )),
                    Err(ClosedError::UndefinedAt { .. }) => report.push(
                        Instance::new(
                            &[("id", id.to_string()), ("n", n.to_string())],
                            oracle.clone(),
                            oracle,
                        )
                        .with_note("closed form undefined at this n; oracle value recorded"),
                    ),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        IdentityTag::IneqBound => {
            let weight = WeightExpr::parse("abs(k1^2-k2^2)", 2).expect("catalog weight parses");
            for m in 0..=ranges.m_max {
                for n in 0..=ranges.n_max {
                    let lhs = generic_sum(&[m, n], &weight).expect("two dimensions");
                    let rhs = ineq_lower_bound(m, n);
                    let instance = if m == n {
                        Instance::new(&[("m", m.to_string()), ("n", n.to_string())], lhs, rhs)
                            .with_note("equality required at m = n")
                    } else {
                        let strict = lhs > rhs;
                        Instance::new(&[("m", m.to_string()), ("n", n.to_string())], lhs, rhs)
                            .with_predicate(strict)
                            .with_note("strict: lhs > rhs required")
                    };
                    report.push(instance);
                }
            }
        }
    }
    Ok(report)
}

/// Every identity family at its default ranges, in catalog order.
pub fn all_families() -> Vec<IdentityTag> {
    let mut tags = vec![
        IdentityTag::Best,
        IdentityTag::TuenterS,
        IdentityTag::TReduction,
        IdentityTag::W1,
        IdentityTag::WOdd,
        IdentityTag::WEven,
        IdentityTag::Triple,
    ];
    tags.extend((1..=8).map(IdentityTag::SAlpha1));
    tags.extend((1..=5).map(IdentityTag::OFamily));
    tags.push(IdentityTag::IneqBound);
    tags
}

/// Outcome of the even-exponent integrality check for one r.
#[derive(Debug, Clone)]
pub struct ConjectureFinding {
    pub r: u32,
    /// Coefficients of the degree-2r interpolant of `2^(r-4n) W_{2r}(n)`.
    pub coefficients: Vec<Rational>,
    pub integral: bool,
}

/// Interpolates `2^(r-4n) W_{2r}(n)` as a degree-2r polynomial from 2r+1
/// oracle values and reports whether its coefficients are integers. The
/// interpolant is validated by extrapolation to one extra node; the
/// integrality itself is a finding, not an error.
pub fn integrality_conjecture_check(r_max: u32) -> Vec<ConjectureFinding> {
    let mut findings = Vec::new();
    for r in 0..=r_max {
        let scaled = |n: u64| -> Rational {
            Rational::from(centered_double_sum(2, 2 * r, n))
                * Rational::pow2(r as i64 - 4 * n as i64)
        };
        let points: Vec<(Rational, Rational)> = (0..=2 * u64::from(r))
            .map(|n| (Rational::from(n), scaled(n)))
            .collect();
        let poly = interpolate(&points).expect("distinct nodes");
        let extra = 2 * u64::from(r) + 1;
        assert_eq!(
            poly.eval(&Rational::from(extra)),
            scaled(extra),
            "scaled even sum is not a degree-{} polynomial",
            2 * r
        );
        let full = pad_coefficients(&poly, 2 * r as usize);
        let integral = poly.is_integer();
        findings.push(ConjectureFinding {
            r,
            coefficients: full,
            integral,
        });
    }
    findings
}

fn pad_coefficients(poly: &UniPolyQ, degree: usize) -> Vec<Rational> {
    (0..=degree).map(|i| poly.coeff(i)).collect()
}

/// Range guard for one-shot sum evaluations (the CLI `eval` path).
pub fn guard_sum_spec(spec: &crate::oracle::SumSpec) -> Result<(), VerifyError> {
    use crate::oracle::SumSpec;
    let reject = |what: String| Err(VerifyError::RangeGuard { what });
    match spec {
        SumSpec::Single { n, .. } | SumSpec::HalfCenter { n, .. } => {
            if *n > 2 * MAX_DOUBLE_N {
                return reject(format!("single sum n = {n} exceeds {}", 2 * MAX_DOUBLE_N));
            }
        }
        SumSpec::DoubleDiff { m, n, .. } => {
            if *m > MAX_DOUBLE_N || *n > MAX_DOUBLE_N {
                return reject(format!("double sum bounds ({m},{n}) exceed {MAX_DOUBLE_N}"));
            }
        }
        SumSpec::Centered { n, .. } | SumSpec::Unrestricted { n, .. } => {
            if *n > MAX_DOUBLE_N {
                return reject(format!("double sum n = {n} exceeds {MAX_DOUBLE_N}"));
            }
        }
        SumSpec::TripleVandermonde { n } => {
            if *n > MAX_TRIPLE_N {
                return reject(format!("triple sum n = {n} exceeds {MAX_TRIPLE_N}"));
            }
        }
        SumSpec::Generic { n_list, .. } => {
            let mut states: u64 = 1;
            for &n in n_list {
                states = match states.checked_mul(2 * n + 1) {
                    Some(v) if v <= 100_000_000 => v,
                    _ => return reject("generic sum state space exceeds 10^8 points".to_string()),
                };
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn small(n_max: u64) -> Ranges {
        Ranges {
            n_max,
            m_max: n_max,
            beta_max: 3,
            k_max: 2,
            r_max: 2,
        }
    }

    #[test]
    fn w1_campaign_passes() {
        let report = verify_identity(IdentityTag::W1, &small(10)).unwrap();
        assert!(report.passed, "{}", report.summary());
        assert_eq!(report.instances.len(), 11);
    }

    #[test]
    fn ineq_campaign_records_predicates() {
        let report = verify_identity(IdentityTag::IneqBound, &small(3)).unwrap();
        assert!(report.passed, "{}", report.summary());
        let strict = report
            .instances
            .iter()
            .find(|i| {
                i.params
                    == [
                        ("m".to_string(), "1".to_string()),
                        ("n".to_string(), "2".to_string()),
                    ]
            })
            .unwrap();
        assert_eq!(strict.lhs, BigInt::from(56));
        assert_eq!(strict.rhs, BigInt::from(48));
        assert!(strict.note.contains("strict"));
    }

    #[test]
    fn triple_campaign_trivial_points() {
        let report = verify_identity(IdentityTag::Triple, &small(1)).unwrap();
        assert!(report.passed);
        assert!(report.instances.iter().all(|i| i.lhs.is_zero()));
    }

    #[test]
    fn every_family_passes_on_a_small_box() {
        for family in all_families() {
            let report = verify_identity(family, &small(4)).unwrap();
            assert!(report.passed, "{}", report.summary());
        }
    }

    #[test]
    fn range_guards_fire() {
        let err = verify_identity(IdentityTag::Triple, &small(100)).unwrap_err();
        assert!(matches!(err, VerifyError::RangeGuard { .. }));
        let err = verify_identity(IdentityTag::W1, &small(500)).unwrap_err();
        assert!(matches!(err, VerifyError::RangeGuard { .. }));
    }

    #[test]
    fn conjecture_check_runs() {
        let findings = integrality_conjecture_check(3);
        assert_eq!(findings.len(), 4);
        for f in &findings {
            assert_eq!(f.coefficients.len(), 2 * f.r as usize + 1);
        }
    }
}

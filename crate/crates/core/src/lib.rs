//! Exact computation, verification, and benchmarking of binomial sums
//! whose weight is the absolute value of an integer polynomial, such as
//! `sum_{k,l} C(2n,n+k) C(2n,n+l) |k^2 - l^2|^beta`.
//!
//! The crate is organized in three layers:
//!
//! - exact arithmetic: [`rational`], [`poly`], [`ratfunc`], [`binomial`] --
//!   normalized big rationals, univariate polynomials with Newton
//!   interpolation, and canonical rational functions with argument shift;
//! - sum machinery: [`weight`] (the weight-expression DSL), [`oracle`]
//!   (brute-force ground truth for every family), [`tuenter`] (the P/Q
//!   single-sum polynomials), [`gamma`] (the G/gamma/omega recurrence
//!   engine for odd exponents), [`closed`] (every closed-form right-hand
//!   side), [`walk`] (Monte Carlo cross-check);
//! - campaigns: [`verify`] (oracle-vs-closed-form sweeps), [`seq`]
//!   (sequence emission), [`bench`] (oracle-vs-closed-form timing),
//!   [`report`] (structured results).
//!
//! Everything except the Monte Carlo mean and error is exact; big-integer
//! results are asserted integral whenever a formula routes through
//! rationals with cancelling denominators.

pub mod bench;
pub mod binomial;
pub mod closed;
pub mod gamma;
pub mod oracle;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod report;
pub mod seq;
pub mod tuenter;
pub mod verify;
pub mod walk;
pub mod weight;

pub use num_bigint::BigInt;

pub use binomial::{binomial, binomial_row, central_binomial};
pub use closed::IdentityTag;
pub use oracle::{SumSpec, SumValue};
pub use poly::UniPolyQ;
pub use ratfunc::RatFuncQ;
pub use rational::Rational;
pub use report::VerificationReport;
pub use weight::WeightExpr;

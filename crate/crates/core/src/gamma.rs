//! Recurrence machinery for the odd-exponent centered double sums
//! `W_{2k+1}(n) = sum_{p,q} C(2n,n+p) C(2n,n+q) |p^2-q^2|^{2k+1}`.
//!
//! The reduction goes through the single sums
//!
//! ```text
//! G_k(n,m) = sum_{q>=0} C(2n,n+m+q) C(2n,n+q) (m+2q)^{2k+1} f_q
//! ```
//!
//! with `f_0 = 1/2` correcting the fold of the symmetric double sum and
//! `f_q = 1` otherwise, so that `W_{2k+1}(n) = 8 sum_{m>=0} m^{2k+1} G_k(n,m)`
//! (the outer sum is finite: terms vanish for m > n). `G` satisfies
//!
//! ```text
//! G_{k+2}(n,m) = 2(4n^2+m^2) G_{k+1}(n,m) - (4n^2-m^2)^2 G_k(n,m)
//!                + 64 n^2 (2n-1)^2 G_k(n-1,m)
//! ```
//!
//! Dividing out the binomial prefactor gives `g_k(n,m)`, an even polynomial
//! of degree 2k in m whose `m^{2j}` coefficients are the rational functions
//! `gamma_{k,j}(n)` computed here fully symbolically. Assembling them with
//! the Tuenter P polynomials yields `omega_k(n)`, the rational function with
//! `W_{2k+1}(n) = omega_k(n) * C(2n,n)^2`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::binomial::{binomial, central_binomial};
use crate::poly::{interpolate, UniPolyQ};
use crate::ratfunc::RatFuncQ;
use crate::rational::Rational;
use crate::report::{Instance, VerificationReport};
use crate::tuenter::p_poly;

/// Numeric table of `G_k(n,m)` filled by the recurrence, with the
/// conventions `G_k(0,m) = G_k(-1,m) = 0`.
#[derive(Debug, Clone)]
pub struct GTable {
    k_max: u32,
    n_max: u64,
    m_max: u64,
    values: Vec<Rational>,
}

impl GTable {
    pub fn new(k_max: u32, n_max: u64, m_max: u64) -> Self {
        let levels = k_max as usize + 1;
        let rows = n_max as usize + 1;
        let cols = m_max as usize + 1;
        let mut t = GTable {
            k_max,
            n_max,
            m_max,
            values: vec![Rational::zero(); levels * rows * cols],
        };
        for n in 0..=n_max {
            let half_n = Rational::new(BigInt::from(n), BigInt::from(2));
            let central = central_binomial(n);
            for m in 0..=m_max {
                let prefactor = &central * binomial(2 * n as i64, (n + m) as i64);
                let g0 = &half_n * Rational::from(prefactor);
                if k_max >= 1 && n >= 1 {
                    // (4n^2 + (2n-5)m^2) / (2n-1)
                    let nn = BigInt::from(n);
                    let mm = BigInt::from(m);
                    let numer = 4 * &nn * &nn + (2 * &nn - 5) * &mm * &mm;
                    let denom = 2 * &nn - 1;
                    let g1 = Rational::new(numer, denom) * &g0;
                    *t.at_mut(1, n, m) = g1;
                }
                *t.at_mut(0, n, m) = g0;
            }
        }
        for k in 0..k_max.saturating_sub(1) {
            for n in 0..=n_max {
                let n2 = BigInt::from(n) * BigInt::from(n);
                for m in 0..=m_max {
                    let m2 = BigInt::from(m) * BigInt::from(m);
                    let a = Rational::from(2 * (4 * &n2 + &m2));
                    let b4 = 4 * &n2 - &m2;
                    let b = Rational::from(&b4 * &b4);
                    let c = Rational::from(64 * &n2 * Pow::pow(&(2 * BigInt::from(n) - 1), 2u32));
                    let value = a * self_get(&t, k + 1, n as i64, m)
                        - b * self_get(&t, k, n as i64, m)
                        + c * self_get(&t, k, n as i64 - 1, m);
                    *t.at_mut(k + 2, n, m) = value;
                }
            }
        }
        t.spot_check_against_definition();
        t
    }

    fn index(&self, k: u32, n: u64, m: u64) -> usize {
        ((k as usize * (self.n_max as usize + 1)) + n as usize) * (self.m_max as usize + 1)
            + m as usize
    }

    fn at_mut(&mut self, k: u32, n: u64, m: u64) -> &mut Rational {
        let i = self.index(k, n, m);
        &mut self.values[i]
    }

    /// `G_k(n,m)`; zero for n <= 0 by convention. Panics outside the
    /// constructed bounds.
    pub fn get(&self, k: u32, n: i64, m: u64) -> Rational {
        if n <= 0 {
            return Rational::zero();
        }
        assert!(
            k <= self.k_max && n as u64 <= self.n_max && m <= self.m_max,
            "G table access out of bounds: k={k} n={n} m={m}"
        );
        self.values[self.index(k, n as u64, m)].clone()
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn m_max(&self) -> u64 {
        self.m_max
    }

    // a handful of low-order cells checked against the defining sum at
    // construction time; the full sweep is available as a report
    fn spot_check_against_definition(&self) {
        for k in 0..=self.k_max.min(2) {
            for n in 0..=self.n_max.min(3) {
                for m in 0..=self.m_max.min(3) {
                    assert_eq!(
                        self.get(k, n as i64, m),
                        g_definitional(k, n, m),
                        "G_{k}({n},{m}) disagrees with its defining sum"
                    );
                }
            }
        }
    }

    /// Every stored cell compared with the defining sum.
    pub fn verify_against_definition(&self) -> VerificationReport {
        let mut report = VerificationReport::new("G_DEFINITION");
        for k in 0..=self.k_max {
            for n in 0..=self.n_max {
                for m in 0..=self.m_max {
                    let lhs = self.get(k, n as i64, m);
                    let rhs = g_definitional(k, n, m);
                    report.push(rational_instance(
                        &[
                            ("k", k.to_string()),
                            ("n", n.to_string()),
                            ("m", m.to_string()),
                        ],
                        &lhs,
                        &rhs,
                    ));
                }
            }
        }
        report
    }
}

fn self_get(t: &GTable, k: u32, n: i64, m: u64) -> Rational {
    t.get(k, n, m)
}

/// `G_k(n,m)` straight from its defining sum, the q = 0 term weighted 1/2.
pub fn g_definitional(k: u32, n: u64, m: u64) -> Rational {
    let mut total = Rational::zero();
    if m > n {
        return total;
    }
    for q in 0..=(n - m) {
        let c1 = binomial(2 * n as i64, (n + m + q) as i64);
        let c2 = binomial(2 * n as i64, (n + q) as i64);
        let base = BigInt::from(m + 2 * q);
        let term = Rational::from(c1 * c2 * Pow::pow(&base, 2 * k + 1));
        if q == 0 {
            total = total + term * Rational::new(BigInt::from(1), BigInt::from(2));
        } else {
            total = total + term;
        }
    }
    total
}

/// Numeric `g_k(n,m)` via its own recurrence, independent of [`GTable`]:
///
/// ```text
/// g_{k+2}(n,m) = 2(4n^2+m^2) g_{k+1}(n,m) - (4n^2-m^2)^2 g_k(n,m)
///                + 16 n^2 (n^2-m^2) g_k(n-1,m)
/// ```
///
/// with `g_0 = n/2` and `g_1 = (4n^2+(2n-5)m^2)/(2n-1) * g_0` for n >= 1,
/// and `g_k(0,m) = 0`.
pub struct GReduced {
    memo: HashMap<(u32, u64, u64), Rational>,
}

impl GReduced {
    pub fn new() -> Self {
        GReduced {
            memo: HashMap::new(),
        }
    }

    pub fn value(&mut self, k: u32, n: u64, m: u64) -> Rational {
        if n == 0 {
            return Rational::zero();
        }
        if let Some(v) = self.memo.get(&(k, n, m)) {
            return v.clone();
        }
        let nn = BigInt::from(n);
        let mm = BigInt::from(m);
        let result = match k {
            0 => Rational::new(nn, BigInt::from(2)),
            1 => {
                let numer = 4 * &nn * &nn + (2 * &nn - 5) * &mm * &mm;
                let denom = 2 * &nn - 1;
                Rational::new(numer, denom) * self.value(0, n, m)
            }
            _ => {
                let n2 = &nn * &nn;
                let m2 = &mm * &mm;
                let a = Rational::from(2 * (4 * &n2 + &m2));
                let b4 = 4 * &n2 - &m2;
                let b = Rational::from(&b4 * &b4);
                let c = Rational::from(16 * &n2 * (&n2 - &m2));
                a * self.value(k - 1, n, m) - b * self.value(k - 2, n, m)
                    + c * self.value(k - 2, n - 1, m)
            }
        };
        self.memo.insert((k, n, m), result.clone());
        result
    }
}

impl Default for GReduced {
    fn default() -> Self {
        Self::new()
    }
}

/// Symbolic coefficients `gamma_{k,j}(n)` of `m^{2j}` in `g_k(n, m)`,
/// for 0 <= j <= k (zero outside).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaTable {
    pub k: u32,
    entries: Vec<RatFuncQ>,
}

impl GammaTable {
    pub fn entry(&self, j: i64) -> RatFuncQ {
        if j < 0 || j > self.k as i64 {
            return RatFuncQ::zero();
        }
        self.entries[j as usize].clone()
    }

    pub fn entries(&self) -> &[RatFuncQ] {
        &self.entries
    }
}

static GAMMA_CACHE: OnceLock<Mutex<Vec<GammaTable>>> = OnceLock::new();

/// The level-k gamma table, advanced symbolically from
///
/// ```text
/// gamma_{0,0} = n/2     gamma_{1,0} = 2n^3/(2n-1)     gamma_{1,1} = n(2n-5)/(4n-2)
/// ```
///
/// by the eight-term recurrence
///
/// ```text
/// gamma_{k+2,j}(n) = 8n^2 g_{k+1,j} + 2 g_{k+1,j-1} - 16n^4 g_{k,j}
///                    + 8n^2 g_{k,j-1} - g_{k,j-2}
///                    + 16n^4 g_{k,j}(n-1) - 16n^2 g_{k,j-1}(n-1)
/// ```
///
/// (shifted arguments realized by exact rational-function substitution).
pub fn gamma_funcs(k: u32) -> GammaTable {
    let cache = GAMMA_CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut levels = cache.lock().unwrap();
    while levels.len() <= k as usize {
        let next = levels.len() as u32;
        let table = match next {
            0 => GammaTable {
                k: 0,
                entries: vec![RatFuncQ::new(
                    UniPolyQ::var(),
                    UniPolyQ::from_int_coeffs(&[2]),
                )],
            },
            1 => GammaTable {
                k: 1,
                entries: vec![
                    RatFuncQ::new(
                        UniPolyQ::from_int_coeffs(&[0, 0, 0, 2]),
                        UniPolyQ::from_int_coeffs(&[-1, 2]),
                    ),
                    RatFuncQ::new(
                        UniPolyQ::from_int_coeffs(&[0, -5, 2]),
                        UniPolyQ::from_int_coeffs(&[-2, 4]),
                    ),
                ],
            },
            _ => advance_level(&levels[next as usize - 1], &levels[next as usize - 2]),
        };
        levels.push(table);
    }
    levels[k as usize].clone()
}

fn advance_level(prev: &GammaTable, prev2: &GammaTable) -> GammaTable {
    let k = prev.k + 1;
    let n2 = UniPolyQ::from_int_coeffs(&[0, 0, 8]); // 8n^2
    let n2h = UniPolyQ::from_int_coeffs(&[0, 0, 16]); // 16n^2
    let n4 = UniPolyQ::from_int_coeffs(&[0, 0, 0, 0, 16]); // 16n^4
    let two = UniPolyQ::from_int_coeffs(&[2]);
    let mut entries = Vec::with_capacity(k as usize + 1);
    for j in 0..=k as i64 {
        let shifted_j = prev2.entry(j).shift(-1);
        let shifted_j1 = prev2.entry(j - 1).shift(-1);
        let mut acc = prev.entry(j).mul_poly(&n2);
        acc = &acc + &prev.entry(j - 1).mul_poly(&two);
        acc = &acc - &prev2.entry(j).mul_poly(&n4);
        acc = &acc + &prev2.entry(j - 1).mul_poly(&n2);
        acc = &acc - &prev2.entry(j - 2);
        acc = &acc + &shifted_j.mul_poly(&n4);
        acc = &acc - &shifted_j1.mul_poly(&n2h);
        entries.push(acc);
    }
    GammaTable { k, entries }
}

/// The rational function `omega_k(n) = 4n sum_j gamma_{k,j}(n) P_{k+j}(n)`,
/// certified against its structural claims: multiplying by
/// `(2n-1)(2n-3)...(2n-2*ceil(k/2)+1)` must give an integer-coefficient
/// polynomial of degree `2k + ceil(k/2) + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaFunc {
    pub k: u32,
    pub omega: RatFuncQ,
}

static OMEGA_CACHE: OnceLock<Mutex<HashMap<u32, OmegaFunc>>> = OnceLock::new();

pub fn omega(k: u32) -> OmegaFunc {
    let cache = OMEGA_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(found) = cache.lock().unwrap().get(&k) {
        return found.clone();
    }
    let built = build_omega(k);
    cache.lock().unwrap().entry(k).or_insert(built).clone()
}

fn build_omega(k: u32) -> OmegaFunc {
    let gammas = gamma_funcs(k);
    let mut acc = RatFuncQ::zero();
    for j in 0..=k {
        let p = RatFuncQ::from_poly(p_poly(k + j));
        acc = &acc + &(&gammas.entry(j as i64) * &p);
    }
    let four_n = UniPolyQ::from_int_coeffs(&[0, 4]);
    let omega = acc.mul_poly(&four_n);

    let half_k = k.div_ceil(2);
    let mut clearing = UniPolyQ::one();
    for j in 1..=half_k as i64 {
        clearing = &clearing * &UniPolyQ::from_int_coeffs(&[-(2 * j - 1), 2]);
    }
    let cleared = omega.mul_poly(&clearing);
    let poly = cleared
        .as_polynomial()
        .unwrap_or_else(|| panic!("omega_{k}: denominator not cleared by the odd product"));
    assert_eq!(
        poly.degree(),
        Some((2 * k + half_k + 2) as usize),
        "omega_{k}: cleared degree mismatch"
    );
    assert!(
        poly.is_integer(),
        "omega_{k}: non-integer coefficients after clearing"
    );
    OmegaFunc { k, omega }
}

/// Cross-checks the recurrence table against the reduced form
/// `G_k(n,m) = C(2n,n) C(2n,n+m) g_k(n,m)` with `g` computed independently,
/// and certifies that `g_k(n, .)` is an even polynomial in m of degree 2k
/// for each fixed n >= 1 (exact interpolation through 2k+2 sample points
/// plus one extrapolation node). Failures become report entries.
pub fn g_consistency_check(k_max: u32, n_max: u64, m_max: u64) -> VerificationReport {
    let mut report = VerificationReport::new("G_CONSISTENCY");
    let table = GTable::new(k_max, n_max, m_max);
    let mut reduced = GReduced::new();
    for k in 0..=k_max {
        for n in 0..=n_max {
            for m in 0..=m_max {
                let lhs = table.get(k, n as i64, m);
                let rhs =
                    Rational::from(central_binomial(n) * binomial(2 * n as i64, (n + m) as i64))
                        * reduced.value(k, n, m);
                report.push(rational_instance(
                    &[
                        ("k", k.to_string()),
                        ("n", n.to_string()),
                        ("m", m.to_string()),
                    ],
                    &lhs,
                    &rhs,
                ));
            }
        }
        for n in 1..=n_max {
            report.push(even_poly_instance(&mut reduced, k, n));
        }
    }
    report
}

// g_k(n, .) sampled at m = 0..=2k+1, interpolated exactly, then checked:
// odd coefficients vanish, degree is exactly 2k, and the polynomial
// extrapolates correctly to m = 2k+2.
fn even_poly_instance(reduced: &mut GReduced, k: u32, n: u64) -> Instance {
    let points: Vec<(Rational, Rational)> = (0..=2 * u64::from(k) + 1)
        .map(|m| (Rational::from(m), reduced.value(k, n, m)))
        .collect();
    let poly = interpolate(&points).expect("distinct sample points");
    let mut failures = Vec::new();
    if poly.degree() != Some(2 * k as usize) {
        failures.push(format!("degree {:?} != {}", poly.degree(), 2 * k));
    }
    for (i, c) in poly.coeffs().iter().enumerate() {
        if i % 2 == 1 && !c.is_zero() {
            failures.push(format!("odd coefficient m^{i} nonzero"));
        }
    }
    let extra_m = 2 * u64::from(k) + 2;
    if poly.eval(&Rational::from(extra_m)) != reduced.value(k, n, extra_m) {
        failures.push(format!("extrapolation mismatch at m = {extra_m}"));
    }
    let ok = failures.is_empty();
    let note = if ok {
        format!("g_{k}({n}, m) is an even polynomial of degree {}", 2 * k)
    } else {
        failures.join("; ")
    };
    Instance::new(
        &[
            ("check", "even_poly".to_string()),
            ("k", k.to_string()),
            ("n", n.to_string()),
        ],
        BigInt::zero(),
        BigInt::zero(),
    )
    .with_predicate(ok)
    .with_note(&note)
}

fn rational_instance(params: &[(&str, String)], lhs: &Rational, rhs: &Rational) -> Instance {
    // values in this table are provably integers; a non-integral value is
    // itself a reportable failure
    match (lhs.to_bigint(), rhs.to_bigint()) {
        (Some(l), Some(r)) => Instance::new(params, l, r),
        _ => Instance::new(params, BigInt::zero(), BigInt::zero())
            .with_predicate(false)
            .with_note(&format!("non-integral value: lhs={lhs} rhs={rhs}")),
    }
}

//! Univariate polynomials over exact rationals.
//!
//! Coefficients are stored in ascending degree with no trailing zeros; the
//! zero polynomial has an empty coefficient list. Provides the arithmetic,
//! Newton interpolation, and argument-shift operations the recurrence and
//! closed-form layers are built on.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct UniPolyQ {
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterpolationError {
    /// Two nodes share an abscissa.
    DegenerateNode {
        abscissa: String,
    },
    EmptyNodeList,
}

impl fmt::Display for InterpolationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpolationError::DegenerateNode { abscissa } => {
                write!(f, "degenerate interpolation node at x = {abscissa}")
            }
            InterpolationError::EmptyNodeList => write!(f, "empty interpolation node list"),
        }
    }
}

impl std::error::Error for InterpolationError {}

impl UniPolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPolyQ { coeffs }
    }

    pub fn zero() -> Self {
        UniPolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPolyQ {
            coeffs: vec![Rational::one()],
        }
    }

    /// The identity polynomial `x`.
    pub fn var() -> Self {
        UniPolyQ {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        UniPolyQ::new(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        if c.is_zero() {
            return UniPolyQ::zero();
        }
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        UniPolyQ { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        UniPolyQ::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return UniPolyQ::zero();
        }
        UniPolyQ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Composition `x -> x + delta`.
    pub fn shift_var(&self, delta: i64) -> Self {
        let d = Rational::from(delta);
        let mut acc = UniPolyQ::zero();
        for c in self.coeffs.iter().rev() {
            // acc = acc*(x + delta) + c
            let shifted = &(&acc * &UniPolyQ::var()) + &acc.scale(&d);
            acc = &shifted + &UniPolyQ::constant(c.clone());
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPolyQ) -> (UniPolyQ, UniPolyQ) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.leading().unwrap().recip();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() * &lead_inv;
            let k = rd - dd;
            quot[k] = factor.clone();
            let sub = divisor.scale(&factor);
            let mut coeffs = rem.coeffs;
            for (i, c) in sub.coeffs.iter().enumerate() {
                coeffs[i + k] = &coeffs[i + k] - c;
            }
            rem = UniPolyQ::new(coeffs);
        }
        (UniPolyQ::new(quot), rem)
    }

    /// Monic gcd via the Euclidean algorithm (remainders re-normalized
    /// to keep coefficient growth in check).
    pub fn gcd(&self, other: &UniPolyQ) -> UniPolyQ {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPolyQ {
        match self.leading() {
            None => UniPolyQ::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn pow(&self, exp: u32) -> UniPolyQ {
        let mut acc = UniPolyQ::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Clears coefficient denominators and divides by the common content:
    /// the unique primitive integer-coefficient multiple `c * self` with
    /// `c > 0` minimal. Returns the integer coefficients (ascending).
    pub fn integer_content_form(&self) -> Vec<BigInt> {
        use num_integer::Integer as _;
        use num_traits::Zero as _;
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &scaled {
            content = content.gcd(v);
        }
        scaled.iter().map(|v| v / &content).collect()
    }
}

impl<'a> Add for &'a UniPolyQ {
    type Output = UniPolyQ;
    fn add(self, rhs: &'a UniPolyQ) -> UniPolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(&self.coeff(i) + &rhs.coeff(i));
        }
        UniPolyQ::new(coeffs)
    }
}

impl<'a> Sub for &'a UniPolyQ {
    type Output = UniPolyQ;
    fn sub(self, rhs: &'a UniPolyQ) -> UniPolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(&self.coeff(i) - &rhs.coeff(i));
        }
        UniPolyQ::new(coeffs)
    }
}

impl<'a> Mul for &'a UniPolyQ {
    type Output = UniPolyQ;
    fn mul(self, rhs: &'a UniPolyQ) -> UniPolyQ {
        if self.is_zero() || rhs.is_zero() {
            return UniPolyQ::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPolyQ::new(coeffs)
    }
}

impl Neg for &UniPolyQ {
    type Output = UniPolyQ;
    fn neg(self) -> UniPolyQ {
        UniPolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Newton divided-difference interpolation. Exact: the unique polynomial of
/// degree < points.len() through all nodes.
pub fn interpolate(points: &[(Rational, Rational)]) -> Result<UniPolyQ, InterpolationError> {
    if points.is_empty() {
        return Err(InterpolationError::EmptyNodeList);
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in &points[i + 1..] {
            if xi == xj {
                return Err(InterpolationError::DegenerateNode {
                    abscissa: xi.to_string(),
                });
            }
        }
    }
    let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..dd.len() {
        for i in (level..dd.len()).rev() {
            let dx = xs[i] - xs[i - level];
            dd[i] = &(&dd[i] - &dd[i - 1]) / &dx;
        }
    }
    // p = dd[0] + dd[1](x-x0) + dd[2](x-x0)(x-x1) + ...
    let mut poly = UniPolyQ::zero();
    let mut basis = UniPolyQ::one();
    for (i, c) in dd.iter().enumerate() {
        poly = &poly + &basis.scale(c);
        if i + 1 < dd.len() {
            let factor = UniPolyQ::new(vec![-xs[i], Rational::one()]);
            basis = &basis * &factor;
        }
    }
    Ok(poly)
}

/// Renders integer coefficients (ascending) as a human-readable polynomial
/// in `var`, highest degree first.
pub fn fmt_int_poly(coeffs: &[BigInt], var: &str) -> String {
    use num_traits::Signed as _;
    use num_traits::Zero as _;
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let unit = mag.is_one();
        match deg {
            0 => out.push_str(&mag.to_string()),
            1 => {
                if unit {
                    out.push_str(var);
                } else {
                    out.push_str(&format!("{mag}*{var}"));
                }
            }
            _ => {
                if unit {
                    out.push_str(&format!("{var}^{deg}"));
                } else {
                    out.push_str(&format!("{mag}*{var}^{deg}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for UniPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.is_integer() {
            let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer().clone()).collect();
            return write!(f, "{}", fmt_int_poly(&ints, "n"));
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(deg, c)| match deg {
                0 => format!("({c})"),
                1 => format!("({c})*n"),
                _ => format!("({c})*n^{deg}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UniPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pts(raw: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
        raw.iter()
            .map(|&(x, y)| (Rational::from(x), Rational::from(y)))
            .collect()
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = UniPolyQ::new(vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert!(UniPolyQ::new(vec![rat(0, 1)]).is_zero());
        assert_eq!(UniPolyQ::zero().degree(), None);
    }

    #[test]
    fn interpolate_line() {
        let p = interpolate(&pts(&[(0, 0), (1, 1)])).unwrap();
        assert_eq!(p, UniPolyQ::var());
    }

    #[test]
    fn interpolate_degree_collapses() {
        let p = interpolate(&pts(&[(1, 1), (2, 2), (3, 3)])).unwrap();
        assert_eq!(p, UniPolyQ::var());
    }

    #[test]
    fn interpolate_parabola() {
        // {(0,1),(1,2),(2,5)} -> x^2 + 1
        let p = interpolate(&pts(&[(0, 1), (1, 2), (2, 5)])).unwrap();
        assert_eq!(p, UniPolyQ::from_int_coeffs(&[1, 0, 1]));
    }

    #[test]
    fn interpolate_duplicate_node_fails() {
        let err = interpolate(&pts(&[(1, 1), (1, 2)])).unwrap_err();
        assert!(err.to_string().contains("degenerate interpolation node"));
        assert_eq!(
            interpolate(&[]).unwrap_err(),
            InterpolationError::EmptyNodeList
        );
    }

    #[test]
    fn shift_and_eval() {
        // p(x) = x^2, p(x-1) = x^2 - 2x + 1
        let p = UniPolyQ::from_int_coeffs(&[0, 0, 1]);
        assert_eq!(p.shift_var(-1), UniPolyQ::from_int_coeffs(&[1, -2, 1]));
        assert_eq!(p.eval(&rat(3, 1)), rat(9, 1));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = UniPolyQ::from_int_coeffs(&[-1, 0, 0, 1]); // x^3 - 1
        let b = UniPolyQ::from_int_coeffs(&[-1, 1]); // x - 1
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, UniPolyQ::from_int_coeffs(&[1, 1, 1]));
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_common_factor() {
        let a = UniPolyQ::from_int_coeffs(&[-1, 0, 1]); // (x-1)(x+1)
        let b = UniPolyQ::from_int_coeffs(&[-2, 1, 1]); // (x-1)(x+2)
        assert_eq!(a.gcd(&b), UniPolyQ::from_int_coeffs(&[-1, 1]));
    }

    #[test]
    fn integer_content_form_clears_denominators() {
        // (1/2)x^2 - (5/4)x  ->  2x^2 - 5x
        let p = UniPolyQ::new(vec![rat(0, 1), rat(-5, 4), rat(1, 2)]);
        let ints = p.integer_content_form();
        assert_eq!(
            ints,
            vec![BigInt::from(0), BigInt::from(-5), BigInt::from(2)]
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            UniPolyQ::from_int_coeffs(&[5, -1, 2]).to_string(),
            "2*n^2 - n + 5"
        );
        assert_eq!(UniPolyQ::zero().to_string(), "0");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        // the interpolant reproduces every node exactly
        #[test]
        fn interpolation_is_exact(ys in proptest::collection::vec(-50i64..50, 1..7)) {
            let points: Vec<(Rational, Rational)> = ys
                .iter()
                .enumerate()
                .map(|(x, &y)| (Rational::from(x as i64), rat(y, 3)))
                .collect();
            let p = interpolate(&points).unwrap();
            prop_assert!(p.degree().map_or(0, |d| d + 1) <= points.len());
            for (x, y) in &points {
                prop_assert_eq!(p.eval(x), y.clone());
            }
        }

        #[test]
        fn shift_round_trip(coeffs in proptest::collection::vec(-20i64..20, 0..6)) {
            let p = UniPolyQ::from_int_coeffs(&coeffs);
            prop_assert_eq!(p.shift_var(-1).shift_var(1), p);
        }
    }
}

//! Rational functions: quotients of univariate polynomials over the
//! rationals, kept in the canonical form `gcd(num, den) = 1` with a monic
//! denominator. Equality is cross-multiplied polynomial equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::poly::{fmt_int_poly, UniPolyQ};
use crate::rational::Rational;

#[derive(Clone)]
pub struct RatFuncQ {
    num: UniPolyQ,
    den: UniPolyQ,
}

impl RatFuncQ {
    /// Builds `num/den`, normalized. Panics on a zero denominator.
    pub fn new(num: UniPolyQ, den: UniPolyQ) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFuncQ {
                num,
                den: UniPolyQ::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead_inv = den.leading().expect("nonzero denominator").recip();
        RatFuncQ {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn zero() -> Self {
        RatFuncQ {
            num: UniPolyQ::zero(),
            den: UniPolyQ::one(),
        }
    }

    pub fn from_poly(p: UniPolyQ) -> Self {
        RatFuncQ {
            num: p,
            den: UniPolyQ::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFuncQ::from_poly(UniPolyQ::constant(c))
    }

    pub fn num(&self) -> &UniPolyQ {
        &self.num
    }

    pub fn den(&self) -> &UniPolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The numerator as a polynomial when the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&UniPolyQ> {
        if self.den == UniPolyQ::one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Evaluation; `None` at a pole of the normalized form.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) / &d)
    }

    /// Argument shift `n -> n + delta`, re-normalized.
    pub fn shift(&self, delta: i64) -> Self {
        RatFuncQ::new(self.num.shift_var(delta), self.den.shift_var(delta))
    }

    pub fn mul_poly(&self, p: &UniPolyQ) -> Self {
        RatFuncQ::new(&self.num * p, self.den.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatFuncQ::new(self.num.scale(c), self.den.clone())
    }

    /// Minimal integer-coefficient representation `(num, den)`: both scaled
    /// by the same factor so every coefficient is an integer, with no common
    /// integer content and a positive leading denominator coefficient.
    pub fn integer_form(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        use num_integer::Integer as _;
        use num_traits::{One as _, Signed as _, Zero as _};
        if self.num.is_zero() {
            return (Vec::new(), vec![BigInt::one()]);
        }
        let mut lcm = BigInt::one();
        for c in self.num.coeffs().iter().chain(self.den.coeffs()) {
            lcm = lcm.lcm(c.denom());
        }
        let scale = |p: &UniPolyQ| -> Vec<BigInt> {
            p.coeffs()
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect()
        };
        let mut num = scale(&self.num);
        let mut den = scale(&self.den);
        let mut content = BigInt::zero();
        for v in num.iter().chain(den.iter()) {
            content = content.gcd(v);
        }
        if den.last().expect("nonzero denominator").is_negative() {
            content = -content;
        }
        for v in num.iter_mut().chain(den.iter_mut()) {
            *v = &*v / &content;
        }
        (num, den)
    }
}

impl PartialEq for RatFuncQ {
    fn eq(&self, other: &Self) -> bool {
        // cross-multiplied polynomial equality
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFuncQ {}

impl<'a> Add for &'a RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &'a RatFuncQ) -> RatFuncQ {
        RatFuncQ::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub for &'a RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &'a RatFuncQ) -> RatFuncQ {
        RatFuncQ::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Mul for &'a RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &'a RatFuncQ) -> RatFuncQ {
        RatFuncQ::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.integer_form();
        if den.len() == 1 {
            // den is the constant 1 after content normalization
            write!(f, "{}", fmt_int_poly(&num, "n"))
        } else {
            write!(
                f,
                "({})/({})",
                fmt_int_poly(&num, "n"),
                fmt_int_poly(&den, "n")
            )
        }
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

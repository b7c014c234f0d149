//! Exact rational coefficients and the combinatorial numbers used throughout
//! the crate.
//!
//! Every coefficient in the crate is a [`Rational`]; nothing is ever rounded.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// An exact fraction, always kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_natural(n: &Natural) -> Self {
        Self::from_integer(BigInt::from(n.clone()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc *= self;
        }
        acc
    }

    /// Lossy conversion, only for diagnostics.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<Natural> for Rational {
    fn from(n: Natural) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p`, `-p` and `p/q` with decimal integers.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let parse_int = |x: &str| -> Result<BigInt, ParseRationalError> {
            let digits = x.strip_prefix('-').unwrap_or(x);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseRationalError::Invalid(s.to_string()));
            }
            x.parse::<BigInt>()
                .map_err(|_| ParseRationalError::Invalid(s.to_string()))
        };
        let n = parse_int(num)?;
        match den {
            None => Ok(Rational::from_integer(n)),
            Some(d) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(ParseRationalError::ZeroDenominator(s.to_string()));
                }
                Ok(Rational::new(n, d))
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Binomial coefficient, zero when `k > n`.
///
/// Multiplicative formula; each partial product `C(n, i)` is an integer so
/// the running division is exact.
pub fn binom(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let k = k.min(n - k);
    let mut acc = Natural::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> Natural {
    (1..=n).fold(Natural::one(), |acc, i| acc * i)
}

/// `binom(n, k)` as a coefficient.
pub fn binom_q(n: u64, k: u64) -> Rational {
    Rational::from(binom(n, k))
}

pub fn factorial_q(n: u64) -> Rational {
    Rational::from(factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(0, 0), nat(1));
        assert_eq!(binom(4, 2), nat(6));
        assert_eq!(binom(3, 5), nat(0));
        assert_eq!(binom(52, 5), nat(2_598_960));
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0), nat(1));
        assert_eq!(factorial(1), nat(1));
        assert_eq!(factorial(5), nat(120));
        assert_eq!(factorial(20), nat(2_432_902_008_176_640_000));
    }

    #[test]
    fn pascal_rule() {
        for n in 1..40u64 {
            for k in 1..=n {
                assert_eq!(binom(n, k) + binom(n, k - 1), binom(n + 1, k));
            }
        }
    }

    #[test]
    fn row_sums_and_factorial_formula() {
        for n in 0..30u64 {
            let row: Natural = (0..=n).map(|k| binom(n, k)).sum();
            assert_eq!(row, Natural::one() << n);
            for k in 0..=n {
                let via_fact = factorial(n) / (factorial(k) * factorial(n - k));
                assert_eq!(binom(n, k), via_fact);
            }
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Rational::new(6, 4).to_string(), "3/2");
        assert_eq!(Rational::new(-6, 3).to_string(), "-2");
        assert_eq!(Rational::new(3, -6).to_string(), "-1/2");
        assert_eq!(Rational::zero().to_string(), "0");
        assert_eq!("3/2".parse::<Rational>().unwrap(), Rational::new(3, 2));
        assert_eq!("-4/8".parse::<Rational>().unwrap(), Rational::new(-1, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("1/".parse::<Rational>().is_err());
    }

    #[test]
    fn lowest_terms() {
        let r = Rational::new(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = Rational::new(0, 7);
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..12).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_q(), b in small_q(), c in small_q()) {
            prop_assert_eq!((&a + &b) + c.clone(), a.clone() + (&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            if let Some(inv) = a.recip() {
                prop_assert!((&a * &inv).is_one());
            }
        }

        #[test]
        fn display_round_trip(a in small_q()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}

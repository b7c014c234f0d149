//! Ring abstractions shared by the polynomial, series and law-checking code.
//!
//! Two layers: [`RingElem`] for element types that know their own zero and
//! one (rationals, polynomials, Rota-Baxter elements), and [`Algebra`] for
//! carriers whose elements need context to build (series of a fixed
//! truncation order). Every `RingElem` gets an `Algebra` through [`Plain`].

use std::fmt;
use std::marker::PhantomData;

use crate::scalars::Rational;

/// A commutative Q-algebra whose elements are self-describing values.
pub trait RingElem: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    fn from_rational(c: &Rational) -> Self {
        Self::one().scale(c)
    }
}

impl RingElem for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

/// Commutative Q-algebra with operations supplied by a carrier value.
///
/// `agree` is the equality used by law checks. Carriers with a truncation
/// window compare only on the part of the window both operands still know.
pub trait Algebra {
    type Elem: Clone + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Rational, a: &Self::Elem) -> Self::Elem;
    fn agree(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn embed(&self, c: &Rational) -> Self::Elem {
        self.scale(c, &self.one())
    }

    fn pow(&self, a: &Self::Elem, exp: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..exp {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn sum<I: IntoIterator<Item = Self::Elem>>(&self, items: I) -> Self::Elem {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, &x))
    }
}

/// The algebra of a self-describing element type.
pub struct Plain<T>(PhantomData<T>);

impl<T> Plain<T> {
    pub fn new() -> Self {
        Plain(PhantomData)
    }
}

impl<T> Default for Plain<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for Plain<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Plain<T> {}

impl<T: RingElem> Algebra for Plain<T> {
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.plus(b)
    }
    fn neg(&self, a: &T) -> T {
        a.negate()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.times(b)
    }
    fn scale(&self, c: &Rational, a: &T) -> T {
        a.scale(c)
    }
    fn agree(&self, a: &T, b: &T) -> bool {
        a == b
    }
}

//! Sparse multivariate polynomials with the symmetric-algebra derivative.
//!
//! [`Poly<V>`] is the free commutative Q-algebra on a set of variables `V`.
//! It comes with the deriving map `p ↦ Σ ∂p/∂xᵢ ⊗ xᵢ` ([`Poly::derive`]),
//! the coderiving map that multiplies a tensor pair back together
//! ([`TensorElem::coderive`]), and the derived operators built from them:
//! the Euler operator, `flat` (derivation induced by a map into the algebra)
//! and `sharp` (derivation induced by a linear endomorphism).
//!
//! All values are canonical: no zero coefficients, no zero exponents, so
//! structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

use crate::ring::{Algebra, RingElem};
use crate::scalars::Rational;

/// Anything usable as a polynomial variable.
pub trait Var: Clone + Ord + fmt::Debug + fmt::Display {}

impl<T: Clone + Ord + fmt::Debug + fmt::Display> Var for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("image of `{var}` is not linear: {image}")]
    NonLinearImage { var: String, image: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
}

/// A basis element name, `[A-Za-z][A-Za-z0-9_]*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarName(String);

impl VarName {
    pub fn new(name: impl Into<String>) -> Result<Self, PolyError> {
        let name = name.into();
        if Self::is_valid(&name) {
            Ok(VarName(name))
        } else {
            Err(PolyError::InvalidName(name))
        }
    }

    pub fn is_valid(name: &str) -> bool {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for VarName {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VarName::new(s)
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A product of variables with positive exponents; the empty product is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial<V> {
    exps: BTreeMap<V, u32>,
}

impl<V: Var> Monomial<V> {
    pub fn one() -> Self {
        Monomial {
            exps: BTreeMap::new(),
        }
    }

    pub fn var(v: V) -> Self {
        Self::power(v, 1)
    }

    pub fn power(v: V, e: u32) -> Self {
        let mut exps = BTreeMap::new();
        if e > 0 {
            exps.insert(v, e);
        }
        Monomial { exps }
    }

    /// Builds a monomial from `(variable, exponent)` pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (V, u32)>>(pairs: I) -> Self {
        let mut exps = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *exps.entry(v).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.exps.get(v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&V, u32)> {
        self.exps.iter().map(|(v, e)| (v, *e))
    }

    pub fn vars(&self) -> impl Iterator<Item = &V> {
        self.exps.keys()
    }

    /// Each variable repeated by its exponent, in variable order.
    pub fn expanded(&self) -> impl Iterator<Item = &V> {
        self.exps
            .iter()
            .flat_map(|(v, e)| std::iter::repeat_n(v, *e as usize))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            *exps.entry(v.clone()).or_insert(0) += e;
        }
        Monomial { exps }
    }

    /// `(e, m / v)` where `e` is the exponent of `v` in `m`, or `None` when
    /// `v` does not occur.
    pub fn remove_one(&self, v: &V) -> Option<(u32, Self)> {
        let e = *self.exps.get(v)?;
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(v);
        } else {
            exps.insert(v.clone(), e - 1);
        }
        Some((e, Monomial { exps }))
    }

    pub fn times_var(&self, v: &V) -> Self {
        let mut exps = self.exps.clone();
        *exps.entry(v.clone()).or_insert(0) += 1;
        Monomial { exps }
    }

    pub fn map_vars<W: Var>(&self, mut f: impl FnMut(&V) -> W) -> Monomial<W> {
        Monomial::from_pairs(self.exps.iter().map(|(v, e)| (f(v), *e)))
    }
}

/// Total degree first, then lexicographic on the expanded variable list.
impl<V: Var> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.expanded().cmp(other.expanded()))
    }
}

impl<V: Var> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Var> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == &1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl<V: Var> fmt::Debug for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial with rational coefficients in variables `V`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<V: Var> {
    terms: BTreeMap<Monomial<V>, Rational>,
}

/// Adds `c` at `key`, dropping the entry if it cancels.
pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

impl<V: Var> Poly<V> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_term(Monomial::one(), c)
    }

    pub fn var(v: V) -> Self {
        Self::from_term(Monomial::var(v), Rational::one())
    }

    pub fn from_term(m: Monomial<V>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, m, c);
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial<V>, Rational)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in iter {
            accumulate(&mut terms, m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn vars(&self) -> BTreeSet<V> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().cloned())
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies every term by the monomial `m`.
    pub fn mul_monomial(&self, m: &Monomial<V>, c: &Rational) -> Self {
        Poly::from_terms(self.terms.iter().map(|(n, a)| (n.mul(m), a * c)))
    }

    /// `∂p/∂v`.
    pub fn partial(&self, v: &V) -> Self {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            m.remove_one(v)
                .map(|(e, rest)| (rest, c * &Rational::from(e as u64)))
        }))
    }

    /// The deriving transformation: `Σᵢ ∂p/∂xᵢ ⊗ xᵢ`.
    pub fn derive(&self) -> TensorElem<V> {
        let mut pairs = BTreeMap::new();
        for (m, c) in &self.terms {
            for (v, e) in m.iter() {
                let (_, rest) = m.remove_one(v).expect("variable occurs");
                accumulate(&mut pairs, (rest, v.clone()), c * &Rational::from(e as u64));
            }
        }
        TensorElem { pairs }
    }

    /// Substitutes a polynomial for every variable and expands.
    pub fn compose<W: Var>(&self, mut f: impl FnMut(&V) -> Poly<W>) -> Poly<W> {
        let mut cache: BTreeMap<V, Poly<W>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            for (v, e) in m.iter() {
                let image = cache.entry(v.clone()).or_insert_with(|| f(v));
                acc = &acc * &image.pow(e);
            }
            out = &out + &acc;
        }
        out
    }

    /// Simultaneous substitution; variables missing from `env` stay put.
    pub fn substitute(&self, env: &BTreeMap<V, Poly<V>>) -> Self {
        self.compose(|v| env.get(v).cloned().unwrap_or_else(|| Poly::var(v.clone())))
    }

    /// Renames variables (the functorial action on basis maps).
    pub fn map_vars<W: Var>(&self, mut f: impl FnMut(&V) -> W) -> Poly<W> {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.map_vars(&mut f), c.clone())),
        )
    }

    /// Applies a linear map to the generators; products and units are
    /// preserved exactly.
    pub fn map_linear(&self, f: &LinearMap<V>) -> Result<Self, PolyError> {
        f.check_linear()?;
        Ok(self.compose(|v| f.image(v)))
    }

    /// Evaluates in an arbitrary algebra.
    pub fn eval_in<A: Algebra>(
        &self,
        alg: &A,
        mut value: impl FnMut(&V) -> Option<A::Elem>,
    ) -> Result<A::Elem, PolyError> {
        let mut cache: BTreeMap<V, A::Elem> = BTreeMap::new();
        let mut acc = alg.zero();
        for (m, c) in &self.terms {
            let mut term = alg.embed(c);
            for (v, e) in m.iter() {
                if !cache.contains_key(v) {
                    let x = value(v).ok_or_else(|| PolyError::UnboundVariable(v.to_string()))?;
                    cache.insert(v.clone(), x);
                }
                term = alg.mul(&term, &alg.pow(&cache[v], e));
            }
            acc = alg.add(&acc, &term);
        }
        Ok(acc)
    }

    /// `L = d ; d°`, i.e. `Σ xᵢ ∂p/∂xᵢ`.
    pub fn euler(&self) -> Self {
        self.derive().coderive()
    }

    /// `f♭ = d ; (1 ⊗ f) ; m`: `Σ (∂p/∂xᵢ)·f(xᵢ)`. Variables absent from `f`
    /// are sent to zero.
    pub fn flat(&self, f: &BTreeMap<V, Poly<V>>) -> Self {
        self.flat_by(|v| f.get(v).cloned().unwrap_or_else(Poly::zero))
    }

    pub fn flat_by(&self, mut f: impl FnMut(&V) -> Poly<V>) -> Self {
        let mut out = Poly::zero();
        for ((m, v), c) in &self.derive().pairs {
            out = &out + &f(v).mul_monomial(m, c);
        }
        out
    }

    /// `g♯ = d ; (1 ⊗ g) ; d°` for a linear endomorphism `g`.
    pub fn sharp(&self, g: &LinearMap<V>) -> Result<Self, PolyError> {
        Ok(self.derive().map_linear_slot(g)?.coderive())
    }
}

pub fn unit_poly<V: Var>() -> Poly<V> {
    Poly::one()
}

/// The monad unit: a generator as a degree-one polynomial.
pub fn eta<V: Var>(v: V) -> Poly<V> {
    Poly::var(v)
}

/// The monad multiplication: a polynomial whose variables are polynomials,
/// flattened by substitution.
pub fn mu<V: Var>(pp: &Poly<Poly<V>>) -> Poly<V> {
    pp.compose(|q| q.clone())
}

impl<V: Var> RingElem for Poly<V> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
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
        Poly::scale(self, c)
    }
}

impl<'a, V: Var> Add<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &'a Poly<V>) -> Poly<V> {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Poly { terms }
    }
}

impl<V: Var> Add for Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: Poly<V>) -> Poly<V> {
        &self + &rhs
    }
}

impl<V: Var> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<V: Var> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        -&self
    }
}

impl<'a, V: Var> Sub<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &'a Poly<V>) -> Poly<V> {
        self + &(-rhs)
    }
}

impl<V: Var> Sub for Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: Poly<V>) -> Poly<V> {
        &self - &rhs
    }
}

impl<'a, V: Var> Mul<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &'a Poly<V>) -> Poly<V> {
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                accumulate(&mut terms, m.mul(n), a * b);
            }
        }
        Poly { terms }
    }
}

impl<V: Var> Mul for Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: Poly<V>) -> Poly<V> {
        &self * &rhs
    }
}

/// Writes `c*m` for one term given its absolute coefficient.
fn write_term<V: Var>(f: &mut fmt::Formatter<'_>, m: &Monomial<V>, c: &Rational) -> fmt::Result {
    if m.is_one() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{m}")
    } else {
        write!(f, "{c}*{m}")
    }
}

/// Terms in descending monomial order joined by ` + ` (or ` - `).
impl<V: Var> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            write_term(f, m, &c.abs())?;
        }
        Ok(())
    }
}

impl<V: Var> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// A finite sum `Σ cᵢ · (mᵢ ⊗ xᵢ)` in `Sym(M) ⊗ M`.
///
/// The symmetric-algebra factor always comes first; laws that need the
/// symmetry swap components explicitly.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TensorElem<V: Var> {
    pairs: BTreeMap<(Monomial<V>, V), Rational>,
}

impl<V: Var> TensorElem<V> {
    pub fn zero() -> Self {
        TensorElem {
            pairs: BTreeMap::new(),
        }
    }

    /// `p ⊗ v`, distributing `p` over its terms.
    pub fn pair(p: &Poly<V>, v: &V) -> Self {
        let mut pairs = BTreeMap::new();
        for (m, c) in p.terms() {
            accumulate(&mut pairs, (m.clone(), v.clone()), c.clone());
        }
        TensorElem { pairs }
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Monomial<V>, &V, &Rational)> {
        self.pairs.iter().map(|((m, v), c)| (m, v, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut pairs = self.pairs.clone();
        for (k, c) in &other.pairs {
            accumulate(&mut pairs, k.clone(), c.clone());
        }
        TensorElem { pairs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TensorElem {
            pairs: if c.is_zero() {
                BTreeMap::new()
            } else {
                self.pairs.iter().map(|(k, a)| (k.clone(), a * c)).collect()
            },
        }
    }

    /// Multiplies the `Sym(M)` component of every pair by `q`.
    pub fn mul_poly(&self, q: &Poly<V>) -> Self {
        let mut pairs = BTreeMap::new();
        for ((m, v), a) in &self.pairs {
            for (n, b) in q.terms() {
                accumulate(&mut pairs, (m.mul(n), v.clone()), a * b);
            }
        }
        TensorElem { pairs }
    }

    /// The coderiving transformation `(1 ⊗ η) ; m`.
    pub fn coderive(&self) -> Poly<V> {
        Poly::from_terms(self.pairs.iter().map(|((m, v), c)| (m.times_var(v), c.clone())))
    }

    /// `1 ⊗ f` for a map on the second slot given by linear images.
    pub fn map_linear_slot(&self, f: &LinearMap<V>) -> Result<Self, PolyError> {
        f.check_linear()?;
        Ok(self.map_slot_linear_by(|v| f.image(v)))
    }

    /// `1 ⊗ f` where `f(v)` is a linear polynomial; its terms are split back
    /// into basis elements.
    pub fn map_slot_linear_by(&self, mut f: impl FnMut(&V) -> Poly<V>) -> Self {
        let mut pairs = BTreeMap::new();
        for ((m, v), a) in &self.pairs {
            for (n, b) in f(v).terms() {
                let w = n
                    .vars()
                    .next()
                    .expect("linear image has no constant term")
                    .clone();
                accumulate(&mut pairs, (m.clone(), w), a * b);
            }
        }
        TensorElem { pairs }
    }

    /// `1 ⊗ b` for a map sending basis elements to basis elements.
    pub fn map_slot(&self, mut f: impl FnMut(&V) -> V) -> Self {
        let mut pairs = BTreeMap::new();
        for ((m, v), a) in &self.pairs {
            accumulate(&mut pairs, (m.clone(), f(v)), a.clone());
        }
        TensorElem { pairs }
    }

    /// `T(f) ⊗ f` for a linear `f`.
    pub fn map_linear(&self, f: &LinearMap<V>) -> Result<Self, PolyError> {
        f.check_linear()?;
        let mut out = TensorElem::zero();
        for ((m, v), a) in &self.pairs {
            let left = Poly::from_term(m.clone(), a.clone()).compose(|x| f.image(x));
            let right = f.image(v);
            for (n, b) in right.terms() {
                let w = n.vars().next().expect("linear image").clone();
                out = out.add(&TensorElem::pair(&left, &w).scale(b));
            }
        }
        Ok(out)
    }
}

impl<V: Var> fmt::Display for TensorElem<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((m, v), c)) in self.pairs.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            write_term(f, m, &c.abs())?;
            write!(f, " (x) {v}")?;
        }
        Ok(())
    }
}

impl<V: Var> fmt::Debug for TensorElem<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor({self})")
    }
}

/// An element of `Sym(M) ⊗ M ⊗ M`: the result of differentiating twice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor2<V: Var> {
    triples: BTreeMap<(Monomial<V>, V, V), Rational>,
}

impl<V: Var> Tensor2<V> {
    /// `d ; (d ⊗ 1)`: `Σ ∂²p/∂xⱼ∂xᵢ ⊗ xⱼ ⊗ xᵢ`.
    pub fn derive_twice(p: &Poly<V>) -> Self {
        let mut triples = BTreeMap::new();
        for ((m, xi), c) in &p.derive().pairs {
            let inner = Poly::from_term(m.clone(), c.clone()).derive();
            for ((n, xj), b) in inner.pairs {
                accumulate(&mut triples, (n, xj, xi.clone()), b);
            }
        }
        Tensor2 { triples }
    }

    /// `1 ⊗ σ`: swaps the two `M` slots.
    pub fn swap_last(&self) -> Self {
        Tensor2 {
            triples: self
                .triples
                .iter()
                .map(|((m, a, b), c)| ((m.clone(), b.clone(), a.clone()), c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.triples.is_empty()
    }
}

/// A map on generators; variables without an explicit image map to
/// themselves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap<V: Var> {
    images: BTreeMap<V, Poly<V>>,
}

impl<V: Var> Default for LinearMap<V> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<V: Var> LinearMap<V> {
    pub fn identity() -> Self {
        LinearMap {
            images: BTreeMap::new(),
        }
    }

    pub fn from_images<I: IntoIterator<Item = (V, Poly<V>)>>(iter: I) -> Self {
        LinearMap {
            images: iter.into_iter().collect(),
        }
    }

    /// The map killing every listed variable.
    pub fn zero_on<I: IntoIterator<Item = V>>(vars: I) -> Self {
        Self::from_images(vars.into_iter().map(|v| (v, Poly::zero())))
    }

    pub fn with(mut self, v: V, image: Poly<V>) -> Self {
        self.images.insert(v, image);
        self
    }

    pub fn image(&self, v: &V) -> Poly<V> {
        self.images
            .get(v)
            .cloned()
            .unwrap_or_else(|| Poly::var(v.clone()))
    }

    pub fn images(&self) -> impl Iterator<Item = (&V, &Poly<V>)> {
        self.images.iter()
    }

    /// Every image must be homogeneous of degree one (or zero).
    pub fn check_linear(&self) -> Result<(), PolyError> {
        for (v, p) in &self.images {
            if p.terms().any(|(m, _)| m.degree() != 1) {
                return Err(PolyError::NonLinearImage {
                    var: v.to_string(),
                    image: p.to_string(),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VarName {
        VarName::new(s).unwrap()
    }

    fn x() -> Poly<VarName> {
        Poly::var(v("x"))
    }

    fn y() -> Poly<VarName> {
        Poly::var(v("y"))
    }

    fn q(n: i64) -> Poly<VarName> {
        Poly::constant(Rational::from(n))
    }

    #[test]
    fn var_names() {
        assert!(VarName::new("x_1").is_ok());
        assert!(VarName::new("Xy2").is_ok());
        assert!(VarName::new("1x").is_err());
        assert!(VarName::new("").is_err());
        assert!(VarName::new("x'").is_err());
    }

    #[test]
    fn add_examples() {
        assert_eq!(&(&x() + &q(1)) + &q(-1), x());
        assert_eq!(&Poly::zero() + &x(), x());
        let x2 = x().pow(2);
        assert_eq!(&x2 + &x2, x2.scale(&Rational::from(2)));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&(&x() + &q(1)) * &(&x() - &q(1)), &x().pow(2) - &q(1));
        assert_eq!(&unit_poly() * &x(), x());
        let expected = &(&x().pow(2) + &(&x() * &y()).scale(&Rational::from(2))) + &y().pow(2);
        assert_eq!((&x() + &y()).pow(2), expected);
    }

    #[test]
    fn unit_and_eta() {
        assert_eq!(unit_poly::<VarName>(), q(1));
        assert!(unit_poly::<VarName>().derive().is_zero());
        assert_eq!(eta(v("x")).derive(), TensorElem::pair(&q(1), &v("x")));
    }

    #[test]
    fn substitute_examples() {
        let big_x = Poly::var(v("X"));
        let env = BTreeMap::from([(v("X"), &x() + &y())]);
        assert_eq!(big_x.pow(2).substitute(&env), (&x() + &y()).pow(2));
        let p = &(&x() * &y()) + &q(3);
        assert_eq!(p.substitute(&BTreeMap::new()), p);
        let env = BTreeMap::from([(v("X"), q(2)), (v("Y"), Poly::var(v("z")))]);
        let xy = &big_x * &Poly::var(v("Y"));
        assert_eq!(xy.substitute(&env), Poly::var(v("z")).scale(&Rational::from(2)));
        assert_eq!(eta(v("X")).substitute(&BTreeMap::from([(v("X"), p.clone())])), p);
        assert_eq!(Poly::<VarName>::zero().substitute(&env), Poly::zero());
    }

    #[test]
    fn map_linear_examples() {
        let (u, w) = (Poly::var(v("u")), Poly::var(v("v")));
        let f = LinearMap::from_images([(v("x"), &u + &w), (v("y"), u.clone())]);
        let p = &x().pow(2) * &y();
        assert_eq!(p.map_linear(&f).unwrap(), &(&u + &w).pow(2) * &u);
        assert_eq!(p.map_linear(&LinearMap::identity()).unwrap(), p);
        let zero = LinearMap::zero_on([v("x")]);
        assert_eq!(x().map_linear(&zero).unwrap(), Poly::zero());
    }

    #[test]
    fn map_linear_rejects_nonlinear() {
        let f = LinearMap::from_images([(v("x"), x().pow(2))]);
        assert!(matches!(
            x().map_linear(&f),
            Err(PolyError::NonLinearImage { .. })
        ));
        let g = LinearMap::from_images([(v("x"), &x() + &q(1))]);
        assert!(x().map_linear(&g).is_err());
        assert!(x().sharp(&g).is_err());
    }

    #[test]
    fn derive_examples() {
        let p = &x().pow(2) * &y();
        let expected = TensorElem::pair(&(&x() * &y()).scale(&Rational::from(2)), &v("x"))
            .add(&TensorElem::pair(&x().pow(2), &v("y")));
        assert_eq!(p.derive(), expected);
        assert!(q(7).derive().is_zero());
        assert_eq!(x().derive(), TensorElem::pair(&q(1), &v("x")));
        assert!(Poly::<VarName>::zero().derive().is_zero());
    }

    #[test]
    fn coderive_examples() {
        let t = TensorElem::pair(&(&x() + &y()), &v("x"));
        assert_eq!(t.coderive(), &x().pow(2) + &(&x() * &y()));
        assert_eq!(TensorElem::<VarName>::zero().coderive(), Poly::zero());
        let t = TensorElem::pair(&q(1), &v("x")).add(&TensorElem::pair(&q(1), &v("y")));
        assert_eq!(t.coderive(), &x() + &y());
    }

    #[test]
    fn euler_examples() {
        let p = &x().pow(2) * &y();
        assert_eq!(p.euler(), p.scale(&Rational::from(3)));
        assert_eq!(q(5).euler(), Poly::zero());
        assert_eq!((&x() + &y()).euler(), &x() + &y());
    }

    #[test]
    fn flat_examples() {
        let f = BTreeMap::from([(v("x"), q(1))]);
        assert_eq!(x().pow(2).flat(&f), x().scale(&Rational::from(2)));
        assert_eq!(q(4).flat(&f), Poly::zero());
        let f = BTreeMap::from([(v("x"), x())]);
        assert_eq!(x().pow(3).flat(&f), x().pow(3).scale(&Rational::from(3)));
        assert_eq!(x().pow(3).flat(&f), x().pow(3).euler());
    }

    #[test]
    fn sharp_examples() {
        let p = &x().pow(2) * &y();
        assert_eq!(p.sharp(&LinearMap::identity()).unwrap(), p.euler());
        let swap = LinearMap::from_images([(v("x"), y()), (v("y"), x())]);
        assert_eq!(
            x().pow(2).sharp(&swap).unwrap(),
            (&x() * &y()).scale(&Rational::from(2))
        );
        let zero = LinearMap::zero_on([v("x"), v("y")]);
        assert_eq!(p.sharp(&zero).unwrap(), Poly::zero());
    }

    #[test]
    fn display_forms() {
        let p = &(&x().pow(2) * &y()).scale(&Rational::new(1, 2)) - &q(3);
        assert_eq!(p.to_string(), "1/2*x^2*y - 3");
        assert_eq!((-&x()).to_string(), "-x");
        assert_eq!(Poly::<VarName>::zero().to_string(), "0");
        let t = (&x().pow(2) * &y()).derive();
        assert_eq!(t.to_string(), "2*x*y (x) x + x^2 (x) y");
    }

    #[test]
    fn monomial_order_is_graded() {
        let a = Monomial::var(v("z"));
        let b = Monomial::power(v("a"), 2);
        assert!(a < b);
        let xy = Monomial::from_pairs([(v("x"), 1), (v("y"), 1)]);
        let x2 = Monomial::power(v("x"), 2);
        assert!(x2 < xy);
    }

    #[test]
    fn interchange_on_example() {
        let p = &(&x().pow(2) * &y()) + &y().pow(3);
        let t = Tensor2::derive_twice(&p);
        assert!(!t.is_zero());
        assert_eq!(t.swap_last(), t);
    }

    #[test]
    fn mu_flattens() {
        let inner = &x() + &y();
        let pp: Poly<Poly<VarName>> = Poly::var(inner.clone()).pow(2);
        assert_eq!(mu(&pp), inner.pow(2));
    }
}

//! The free commutative Rota-Baxter algebra of weight zero over a
//! polynomial algebra: shuffles of words of polynomials tensored with a
//! polynomial tail.
//!
//! Words are multilinear in their letters, so a word of polynomials is
//! stored expanded as a combination of words of monomials. That makes
//! structural equality of [`RBElem`] mathematical equality.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::diff_laws::sampling::{random_nonzero_rational, random_poly, trial_rng};
use crate::diff_laws::{Counterexample, LawReport};
use crate::polynomial::{accumulate, Monomial, Poly, VarName};
use crate::ring::RingElem;
use crate::scalars::Rational;

pub type Letter = Monomial<VarName>;
pub type Word = Vec<Letter>;

/// All interleavings of `u` and `v`, repeated with multiplicity.
pub fn shuffle<T: Clone>(u: &[T], v: &[T]) -> Vec<Vec<T>> {
    if u.is_empty() {
        return vec![v.to_vec()];
    }
    if v.is_empty() {
        return vec![u.to_vec()];
    }
    let mut out = Vec::new();
    for mut w in shuffle(&u[1..], v) {
        w.insert(0, u[0].clone());
        out.push(w);
    }
    for mut w in shuffle(u, &v[1..]) {
        w.insert(0, v[0].clone());
        out.push(w);
    }
    out
}

/// The shuffle product as a linear combination of words.
pub fn shuffle_combination<T: Clone + Ord>(u: &[T], v: &[T]) -> BTreeMap<Vec<T>, Rational> {
    let mut out = BTreeMap::new();
    for w in shuffle(u, v) {
        *out.entry(w).or_insert_with(Rational::zero) += Rational::one();
    }
    out
}

/// A finite combination of `(word, tail monomial)` pairs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RBElem {
    terms: BTreeMap<(Word, Letter), Rational>,
}

/// Raw derivative terms `(word, ∂tail, variable)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RBRaw {
    terms: BTreeMap<(Word, Letter, VarName), Rational>,
}

impl RBElem {
    pub fn zero() -> Self {
        RBElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::pure(&[], &Poly::one())
    }

    /// `(u, p)` with polynomial letters and tail, expanded multilinearly.
    pub fn pure(word: &[Poly<VarName>], tail: &Poly<VarName>) -> Self {
        let mut partial: Vec<(Word, Rational)> = vec![(Vec::new(), Rational::one())];
        for letter in word {
            let mut next = Vec::new();
            for (w, c) in &partial {
                for (m, a) in letter.terms() {
                    let mut w2 = w.clone();
                    w2.push(m.clone());
                    next.push((w2, c * a));
                }
            }
            partial = next;
        }
        let mut terms = BTreeMap::new();
        for (w, c) in partial {
            for (m, a) in tail.terms() {
                accumulate(&mut terms, (w.clone(), m.clone()), &c * a);
            }
        }
        RBElem { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = ((Word, Letter), Rational)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in iter {
            accumulate(&mut terms, k, c);
        }
        RBElem { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Letter, &Rational)> {
        self.terms.iter().map(|((w, m), c)| (w, m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            accumulate(&mut terms, k.clone(), c.clone());
        }
        RBElem { terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RBElem::from_terms(self.terms.iter().map(|(k, a)| (k.clone(), a * c)))
    }
}

/// `(u, p)·(v, q) = (u ⧢ v, p·q)`, extended bilinearly.
pub fn rb_mul(s: &RBElem, t: &RBElem) -> RBElem {
    let mut terms = BTreeMap::new();
    for ((u, m), a) in &s.terms {
        for ((v, n), b) in &t.terms {
            let tail = m.mul(n);
            for (w, k) in shuffle_combination(u, v) {
                accumulate(&mut terms, (w, tail.clone()), &(a * b) * &k);
            }
        }
    }
    RBElem { terms }
}

/// The Rota-Baxter operator `P(u, p) = (u ++ [p], 1)`.
#[allow(non_snake_case)]
pub fn rb_P(s: &RBElem) -> RBElem {
    RBElem::from_terms(s.terms.iter().map(|((u, m), c)| {
        let mut w = u.clone();
        w.push(m.clone());
        ((w, Monomial::one()), c.clone())
    }))
}

/// The derivation acting on tails by the Euler operator:
/// `(u, p) ↦ Σⱼ (u, xⱼ·∂p/∂xⱼ)`.
#[allow(non_snake_case)]
pub fn rb_D(s: &RBElem) -> RBElem {
    RBElem::from_terms(
        s.terms
            .iter()
            .map(|(k, c)| (k.clone(), c * &Rational::from(k.1.degree() as u64))),
    )
}

/// `1 ⊗ d`: `(u, p) ↦ Σⱼ (u, ∂p/∂xⱼ, xⱼ)`.
pub fn rb_d_raw(s: &RBElem) -> RBRaw {
    let mut terms = BTreeMap::new();
    for ((u, m), c) in &s.terms {
        for (v, e) in m.iter() {
            let (_, rest) = m.remove_one(v).expect("variable occurs");
            accumulate(
                &mut terms,
                (u.clone(), rest, v.clone()),
                c * &Rational::from(e as u64),
            );
        }
    }
    RBRaw { terms }
}

impl RBRaw {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Letter, &VarName, &Rational)> {
        self.terms.iter().map(|((w, m, v), c)| (w, m, v, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            accumulate(&mut terms, k.clone(), c.clone());
        }
        RBRaw { terms }
    }

    /// Module action of `RB(M)` on the first two slots.
    pub fn mul_elem(&self, s: &RBElem) -> Self {
        let mut terms = BTreeMap::new();
        for ((u, m, x), a) in &self.terms {
            for ((v, n), b) in &s.terms {
                let tail = m.mul(n);
                for (w, k) in shuffle_combination(u, v) {
                    accumulate(&mut terms, (w, tail.clone(), x.clone()), &(a * b) * &k);
                }
            }
        }
        RBRaw { terms }
    }

    /// Multiplies each variable back into the tail.
    pub fn collapse(&self) -> RBElem {
        RBElem::from_terms(
            self.terms
                .iter()
                .map(|((u, m, x), c)| ((u.clone(), m.times_var(x)), c.clone())),
        )
    }
}

impl RingElem for RBElem {
    fn zero() -> Self {
        RBElem::zero()
    }
    fn one() -> Self {
        RBElem::one()
    }
    fn is_zero(&self) -> bool {
        RBElem::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn negate(&self) -> Self {
        self.scale(&-Rational::one())
    }
    fn times(&self, other: &Self) -> Self {
        rb_mul(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        RBElem::scale(self, c)
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, w: &Word) -> fmt::Result {
    f.write_str("[")?;
    for (i, l) in w.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{l}")?;
    }
    f.write_str("]")
}

impl fmt::Display for RBElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((w, m), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*(")?;
            write_word(f, w)?;
            write!(f, ", {m})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RBElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RB({self})")
    }
}

/// A random element: up to 2 terms, words of length ≤ 3 with letters of
/// degree ≤ 2, tails of degree ≤ 2.
pub fn random_rb_elem(rng: &mut ChaCha8Rng) -> RBElem {
    let vars: Vec<VarName> = ["x", "y", "z"]
        .iter()
        .map(|s| VarName::new(*s).expect("valid"))
        .collect();
    let mut acc = RBElem::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let len = rng.gen_range(0..=3);
        let word: Vec<Poly<VarName>> = (0..len)
            .map(|_| loop {
                let p = random_poly(rng, &vars, 2, 2);
                if !p.is_zero() {
                    break p;
                }
            })
            .collect();
        let tail = random_poly(rng, &vars, 2, 2);
        acc = acc.add(&RBElem::pure(&word, &tail).scale(&random_nonzero_rational(rng)));
    }
    acc
}

/// `P(a)P(b) = P(a·P(b)) + P(P(a)·b)` on random pairs.
pub fn check_rota_baxter(trials: u64, seed: u64) -> LawReport {
    let report = LawReport::new("rota_baxter_identity", "rota-baxter", trials, seed);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let a = random_rb_elem(&mut rng);
        let b = random_rb_elem(&mut rng);
        let lhs = rb_mul(&rb_P(&a), &rb_P(&b));
        let rhs = rb_P(&rb_mul(&a, &rb_P(&b))).add(&rb_P(&rb_mul(&rb_P(&a), &b)));
        if lhs != rhs {
            return report.fail(Counterexample::new(
                vec![a.to_string(), b.to_string()],
                lhs,
                rhs,
            ));
        }
    }
    report
}

/// `D(P(a)) = 0` on random elements.
pub fn check_d_after_p(trials: u64, seed: u64) -> LawReport {
    let report = LawReport::new("d_after_p_vanishes", "rota-baxter", trials, seed);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let a = random_rb_elem(&mut rng);
        let lhs = rb_D(&rb_P(&a));
        if !lhs.is_zero() {
            return report.fail(Counterexample::new(vec![a.to_string()], lhs, "0"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::binom;

    fn var(s: &str) -> Poly<VarName> {
        Poly::var(VarName::new(s).unwrap())
    }

    fn letter(s: &str) -> Letter {
        Monomial::var(VarName::new(s).unwrap())
    }

    #[test]
    fn shuffle_examples() {
        let (a, b, c) = (letter("a"), letter("b"), letter("c"));
        let ab = shuffle_combination(std::slice::from_ref(&a), std::slice::from_ref(&b));
        let expected = BTreeMap::from([
            (vec![a.clone(), b.clone()], Rational::one()),
            (vec![b.clone(), a.clone()], Rational::one()),
        ]);
        assert_eq!(ab, expected);
        let abc = shuffle(&[a.clone(), b.clone()], std::slice::from_ref(&c));
        assert_eq!(
            abc,
            vec![
                vec![a.clone(), b.clone(), c.clone()],
                vec![a.clone(), c.clone(), b.clone()],
                vec![c.clone(), a.clone(), b.clone()],
            ]
        );
        assert_eq!(shuffle(&[a.clone(), b.clone()], &[]), vec![vec![a, b]]);
    }

    #[test]
    fn shuffle_counts() {
        for i in 0..=4usize {
            for j in 0..=4usize {
                let u: Vec<usize> = (0..i).collect();
                let v: Vec<usize> = (10..10 + j).collect();
                let n = shuffle(&u, &v).len() as u64;
                assert_eq!(binom((i + j) as u64, i as u64), n.into());
            }
        }
    }

    #[test]
    fn mul_examples() {
        let one = Poly::one();
        let x = RBElem::pure(&[], &var("x"));
        let y = RBElem::pure(&[], &var("y"));
        assert_eq!(rb_mul(&x, &y), RBElem::pure(&[], &(&var("x") * &var("y"))));
        let a = RBElem::pure(&[var("a")], &one);
        let b = RBElem::pure(&[var("b")], &one);
        let expected = RBElem::pure(&[var("a"), var("b")], &one)
            .add(&RBElem::pure(&[var("b"), var("a")], &one));
        assert_eq!(rb_mul(&a, &b), expected);
        let ay = RBElem::pure(&[var("a")], &var("y"));
        assert_eq!(rb_mul(&x, &ay), RBElem::pure(&[var("a")], &(&var("x") * &var("y"))));
    }

    #[test]
    fn p_examples() {
        let x = RBElem::pure(&[], &var("x"));
        assert_eq!(rb_P(&x), RBElem::pure(&[var("x")], &Poly::one()));
        assert_eq!(
            rb_P(&rb_P(&x)),
            RBElem::pure(&[var("x"), Poly::one()], &Poly::one())
        );
    }

    #[test]
    fn identity_by_hand() {
        let one = Poly::one();
        let a = RBElem::pure(&[], &var("x"));
        let b = RBElem::pure(&[], &var("y"));
        let xy = RBElem::pure(&[var("x"), var("y")], &one);
        let yx = RBElem::pure(&[var("y"), var("x")], &one);
        assert_eq!(rb_mul(&rb_P(&a), &rb_P(&b)), xy.add(&yx));
        assert_eq!(rb_P(&rb_mul(&a, &rb_P(&b))), yx);
        assert_eq!(rb_P(&rb_mul(&rb_P(&a), &b)), xy);
        let u = RBElem::one();
        let lhs = rb_mul(&rb_P(&u), &rb_P(&u));
        let ones = RBElem::pure(&[one.clone(), one.clone()], &one);
        assert_eq!(lhs, ones.scale(&Rational::from(2)));
    }

    #[test]
    fn d_examples() {
        let x2 = RBElem::pure(&[], &var("x").pow(2));
        let raw = rb_d_raw(&x2);
        let terms: Vec<_> = raw.terms().collect();
        assert_eq!(terms.len(), 1);
        let (w, m, v, c) = terms[0];
        assert!(w.is_empty());
        assert_eq!(m, &letter("x"));
        assert_eq!(v.as_str(), "x");
        assert_eq!(c, &Rational::from(2));
        let const_tail = RBElem::pure(&[var("a"), var("b")], &Poly::one());
        assert!(rb_D(&const_tail).is_zero());
        assert!(rb_d_raw(&const_tail).is_zero());
    }

    #[test]
    fn raw_leibniz_on_example() {
        let s = RBElem::pure(&[], &var("x"));
        let t = RBElem::pure(&[], &var("y"));
        let lhs = rb_d_raw(&rb_mul(&s, &t));
        let rhs = rb_d_raw(&s).mul_elem(&t).add(&rb_d_raw(&t).mul_elem(&s));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.collapse(), rb_D(&rb_mul(&s, &t)));
    }

    #[test]
    fn identity_checks_pass() {
        assert!(check_rota_baxter(20, 3).pass);
        assert!(check_d_after_p(20, 3).pass);
    }

    #[test]
    fn zero_is_absorbing() {
        let z = RBElem::zero();
        assert!(rb_mul(&rb_P(&z), &rb_P(&RBElem::one())).is_zero());
    }
}

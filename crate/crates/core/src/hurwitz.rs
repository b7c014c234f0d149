//! Truncated Hurwitz and power series over a coefficient ring.
//!
//! A [`Series`] holds the coefficients `0..=N` of a sequence `ℕ → A`. The
//! flavor selects the product: binomially weighted convolution (Hurwitz) or
//! Cauchy convolution (power). Products keep the order `N`; each derivative
//! consumes one index.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use thiserror::Error;

use crate::diff_laws::DiffCarrier;
use crate::free_diff::natural_map;
use crate::polynomial::{Poly, PolyError, Var};
use crate::ring::{Algebra, Plain, RingElem};
use crate::scalars::{binom_q, factorial_q, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Hurwitz,
    Power,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Hurwitz => "hurwitz",
            Flavor::Power => "power",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("flavor mismatch: {0} vs {1}")]
    FlavorMismatch(Flavor, Flavor),
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("truncation order exhausted: need index {needed}, have order {order}")]
    OrderExhausted { needed: usize, order: usize },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
}

/// Coefficients `0..=order` of a sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series<T> {
    coeffs: Vec<T>,
    flavor: Flavor,
}

/// The truncated double product, indexed `grid[m][n]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesOfSeries<T> {
    pub grid: Vec<Vec<T>>,
}

impl<T> Series<T> {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<T>, flavor: Flavor) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Series { coeffs, flavor }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn get(&self, n: usize) -> Option<&T> {
        self.coeffs.get(n)
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn with_flavor(self, flavor: Flavor) -> Self {
        Series { flavor, ..self }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Series<U> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
            flavor: self.flavor,
        }
    }
}

impl<T: Clone> Series<T> {
    /// Keeps indices `0..=order` (no-op when already shorter).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Series {
            coeffs: self.coeffs[..keep].to_vec(),
            flavor: self.flavor,
        }
    }

    /// The shift `n ↦ f(n+1)`, whatever the flavor.
    pub fn shift(&self) -> Result<Self, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::OrderExhausted {
                needed: 1,
                order: 0,
            });
        }
        Ok(Series {
            coeffs: self.coeffs[1..].to_vec(),
            flavor: self.flavor,
        })
    }
}

impl<T: RingElem> Series<T> {
    pub fn zero(order: usize, flavor: Flavor) -> Self {
        Series {
            coeffs: vec![T::zero(); order + 1],
            flavor,
        }
    }

    /// Extends with zeros or truncates to exactly `order`.
    pub fn resize(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, T::zero());
        Series {
            coeffs,
            flavor: self.flavor,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(RingElem::negate)
    }
}

impl<T: fmt::Display> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

fn check_pair<T>(f: &Series<T>, g: &Series<T>) -> Result<(), SeriesError> {
    if f.flavor != g.flavor {
        return Err(SeriesError::FlavorMismatch(f.flavor, g.flavor));
    }
    if f.order() != g.order() {
        return Err(SeriesError::OrderMismatch(f.order(), g.order()));
    }
    Ok(())
}

pub fn sunit<T: RingElem>(order: usize, flavor: Flavor) -> Series<T> {
    let mut s = Series::zero(order, flavor);
    s.coeffs[0] = T::one();
    s
}

pub fn sadd<T: RingElem>(f: &Series<T>, g: &Series<T>) -> Result<Series<T>, SeriesError> {
    check_pair(f, g)?;
    Ok(Series {
        coeffs: f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a.plus(b)).collect(),
        flavor: f.flavor,
    })
}

/// Product at index `n` of two coefficient slices under a flavor.
fn product_at<T: RingElem>(a: &[T], b: &[T], n: usize, flavor: Flavor) -> T {
    let mut acc = T::zero();
    for k in 0..=n {
        let term = a[k].times(&b[n - k]);
        if term.is_zero() {
            continue;
        }
        let term = match flavor {
            Flavor::Hurwitz => term.scale(&binom_q(n as u64, k as u64)),
            Flavor::Power => term,
        };
        acc = acc.plus(&term);
    }
    acc
}

pub fn smul<T: RingElem>(f: &Series<T>, g: &Series<T>) -> Result<Series<T>, SeriesError> {
    check_pair(f, g)?;
    Ok(Series {
        coeffs: (0..=f.order())
            .map(|n| product_at(&f.coeffs, &g.coeffs, n, f.flavor))
            .collect(),
        flavor: f.flavor,
    })
}

/// Hurwitz: `f(n+1)`; power: `(n+1)·f(n+1)`. The order drops by one.
pub fn sderive<T: RingElem>(f: &Series<T>) -> Result<Series<T>, SeriesError> {
    let shifted = f.shift()?;
    Ok(match f.flavor {
        Flavor::Hurwitz => shifted,
        Flavor::Power => Series {
            coeffs: shifted
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a.scale(&Rational::from(n as u64 + 1)))
                .collect(),
            flavor: Flavor::Power,
        },
    })
}

/// Ring of series of a fixed flavor. Operands of different orders are
/// combined on the intersection of their windows.
pub struct SeriesRing<T> {
    pub order: usize,
    pub flavor: Flavor,
    entries: PhantomData<T>,
}

impl<T> SeriesRing<T> {
    pub fn new(order: usize, flavor: Flavor) -> Self {
        SeriesRing {
            order,
            flavor,
            entries: PhantomData,
        }
    }
}

impl<T> Clone for SeriesRing<T> {
    fn clone(&self) -> Self {
        SeriesRing::new(self.order, self.flavor)
    }
}

impl<T: RingElem> SeriesRing<T> {
    fn aligned(&self, a: &Series<T>, b: &Series<T>) -> (Series<T>, Series<T>) {
        let n = a.order().min(b.order());
        (a.truncate(n), b.truncate(n))
    }
}

impl<T: RingElem> Algebra for SeriesRing<T> {
    type Elem = Series<T>;

    fn zero(&self) -> Series<T> {
        Series::zero(self.order, self.flavor)
    }
    fn one(&self) -> Series<T> {
        sunit(self.order, self.flavor)
    }
    fn add(&self, a: &Series<T>, b: &Series<T>) -> Series<T> {
        let (a, b) = self.aligned(a, b);
        sadd(&a, &b).expect("aligned operands")
    }
    fn neg(&self, a: &Series<T>) -> Series<T> {
        a.neg()
    }
    fn mul(&self, a: &Series<T>, b: &Series<T>) -> Series<T> {
        let (a, b) = self.aligned(a, b);
        smul(&a, &b).expect("aligned operands")
    }
    fn scale(&self, c: &Rational, a: &Series<T>) -> Series<T> {
        a.scale(c)
    }
    fn agree(&self, a: &Series<T>, b: &Series<T>) -> bool {
        let n = a.order().min(b.order());
        a.flavor == b.flavor && a.coeffs[..=n] == b.coeffs[..=n]
    }
}

fn check_env<V: Var, T>(
    p: &Poly<V>,
    env: &BTreeMap<V, Series<T>>,
    n: usize,
    flavor: Flavor,
) -> Result<(), SeriesError> {
    for v in p.vars() {
        let s = env
            .get(&v)
            .ok_or_else(|| SeriesError::UnboundVariable(v.to_string()))?;
        if s.flavor != flavor {
            return Err(SeriesError::FlavorMismatch(flavor, s.flavor));
        }
        if s.order() < n {
            return Err(SeriesError::OrderExhausted {
                needed: n,
                order: s.order(),
            });
        }
    }
    Ok(())
}

/// How the terms of the evaluation recursion are weighted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Weights {
    /// `C(n−1, k)`: Hurwitz product.
    Binomial,
    /// `(n−k)/n`: Cauchy product.
    Cauchy,
    /// No weights at all; kept to show it is not the Cauchy product.
    #[cfg(test)]
    Unweighted,
}

struct Recursion<'a, V: Var, T> {
    env: &'a BTreeMap<V, Series<T>>,
    weights: Weights,
    memo: BTreeMap<(Poly<V>, usize), T>,
}

impl<V: Var, T: RingElem> Recursion<'_, V, T> {
    fn eval(&mut self, p: &Poly<V>, n: usize) -> T {
        if p.is_zero() {
            return T::zero();
        }
        if let Some(v) = self.memo.get(&(p.clone(), n)) {
            return v.clone();
        }
        let value = if n == 0 {
            p.eval_in(&Plain::<T>::new(), |v| self.env.get(v).map(|s| s.coeffs[0].clone()))
                .expect("environment checked")
        } else {
            let m = n - 1;
            let mut acc = T::zero();
            for v in p.vars() {
                let dp = p.partial(&v);
                let series = &self.env[&v];
                for k in 0..=m {
                    let a = &series.coeffs[m - k + 1];
                    if a.is_zero() {
                        continue;
                    }
                    let term = self.eval(&dp, k).times(a);
                    let term = match self.weights {
                        Weights::Binomial => term.scale(&binom_q(m as u64, k as u64)),
                        Weights::Cauchy => term.scale(&Rational::new((n - k) as u64, n as u64)),
                        #[cfg(test)]
                        Weights::Unweighted => term,
                    };
                    acc = acc.plus(&term);
                }
            }
            acc
        };
        self.memo.insert((p.clone(), n), value.clone());
        value
    }
}

/// Component `n` of `p` evaluated at Hurwitz series, by the recursion
/// `ω₀ = p(env(·)[0])`, `ω_{n+1} = Σₖ C(n,k) Σⱼ ωₖ(∂p/∂xⱼ)·env(xⱼ)[n−k+1]`.
pub fn omega_eval<V: Var, T: RingElem>(
    p: &Poly<V>,
    env: &BTreeMap<V, Series<T>>,
    n: usize,
) -> Result<T, SeriesError> {
    check_env(p, env, n, Flavor::Hurwitz)?;
    Ok(Recursion {
        env,
        weights: Weights::Binomial,
        memo: BTreeMap::new(),
    }
    .eval(p, n))
}

/// Component `n` of `p` evaluated at power series:
/// `δ₀ = p(env(·)[0])`, `δ_{n+1} = Σₖ (n−k+1)/(n+1) Σⱼ δₖ(∂p/∂xⱼ)·env(xⱼ)[n−k+1]`.
///
/// Dropping the binomial weights of [`omega_eval`] without adding these
/// does not reproduce the Cauchy product from index 2 on; the weights come
/// from the chain rule for the scaled shift `(n+1)·f(n+1)`.
pub fn delta_eval<V: Var, T: RingElem>(
    p: &Poly<V>,
    env: &BTreeMap<V, Series<T>>,
    n: usize,
) -> Result<T, SeriesError> {
    check_env(p, env, n, Flavor::Power)?;
    Ok(Recursion {
        env,
        weights: Weights::Cauchy,
        memo: BTreeMap::new(),
    }
    .eval(p, n))
}

/// Evaluates `p` in the series ring with `smul`/`sadd`. All series in the
/// environment must share the given flavor; the result has the smallest
/// order among them (or `order` when `p` is constant).
pub fn ring_eval<V: Var, T: RingElem>(
    p: &Poly<V>,
    env: &BTreeMap<V, Series<T>>,
    order: usize,
    flavor: Flavor,
) -> Result<Series<T>, SeriesError> {
    check_env(p, env, 0, flavor)?;
    let ring = SeriesRing::new(order, flavor);
    p.eval_in(&ring, |v| env.get(v).cloned())
        .map(|s| s.truncate(order))
        .map_err(|e| match e {
            PolyError::UnboundVariable(s) => SeriesError::UnboundVariable(s),
            other => SeriesError::UnboundVariable(other.to_string()),
        })
}

/// `(a, D(a), …, D^order(a))` as a Hurwitz series.
pub fn diamond<E: Clone>(d: impl Fn(&E) -> E, a: &E, order: usize) -> Series<E> {
    Series::new(natural_map(d, a, order), Flavor::Hurwitz)
}

/// Comultiplication `grid[m][n] = f(m+n)` for `m ≤ rows`, `n ≤ order − rows`.
pub fn comul<T: Clone>(f: &Series<T>, rows: usize) -> Result<SeriesOfSeries<T>, SeriesError> {
    Ok(SeriesOfSeries {
        grid: comul_series(f, rows)?
            .coeffs
            .into_iter()
            .map(Series::into_coeffs)
            .collect(),
    })
}

/// [`comul`] as a series of series, so it can be applied again to its own
/// output.
pub fn comul_series<T: Clone>(f: &Series<T>, rows: usize) -> Result<Series<Series<T>>, SeriesError> {
    if rows > f.order() {
        return Err(SeriesError::OrderExhausted {
            needed: rows,
            order: f.order(),
        });
    }
    let cols = f.order() - rows;
    Ok(Series {
        coeffs: (0..=rows)
            .map(|m| Series {
                coeffs: f.coeffs[m..=m + cols].to_vec(),
                flavor: f.flavor,
            })
            .collect(),
        flavor: f.flavor,
    })
}

/// `n ↦ n!·f(n)`: power series to Hurwitz series.
pub fn psi<T: RingElem>(f: &Series<T>) -> Result<Series<T>, SeriesError> {
    if f.flavor != Flavor::Power {
        return Err(SeriesError::FlavorMismatch(Flavor::Power, f.flavor));
    }
    Ok(Series {
        coeffs: f
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| a.scale(&factorial_q(n as u64)))
            .collect(),
        flavor: Flavor::Hurwitz,
    })
}

/// `n ↦ f(n)/n!`: Hurwitz series to power series.
pub fn psi_inv<T: RingElem>(f: &Series<T>) -> Result<Series<T>, SeriesError> {
    if f.flavor != Flavor::Hurwitz {
        return Err(SeriesError::FlavorMismatch(Flavor::Hurwitz, f.flavor));
    }
    Ok(Series {
        coeffs: f
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| {
                let inv = factorial_q(n as u64).recip().expect("n! is nonzero");
                a.scale(&inv)
            })
            .collect(),
        flavor: Flavor::Power,
    })
}

/// `(f(p), f(Dp), …, f(D^order p))`: the differential morphism into Hurwitz
/// series whose zeroth component is `f`.
pub fn colift<C: DiffCarrier, U>(
    f: impl Fn(&C::Elem) -> U,
    source: &C,
    p: &C::Elem,
    order: usize,
) -> Series<U> {
    diamond(|a| source.derive(a), p, order).map(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::VarName;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn qs(v: &[i64], flavor: Flavor) -> Series<Rational> {
        Series::new(v.iter().map(|&n| q(n)).collect(), flavor)
    }

    fn var(s: &str) -> Poly<VarName> {
        Poly::var(VarName::new(s).unwrap())
    }

    fn vn(s: &str) -> VarName {
        VarName::new(s).unwrap()
    }

    #[test]
    fn smul_examples() {
        let ones_h = qs(&[1; 5], Flavor::Hurwitz);
        assert_eq!(smul(&ones_h, &ones_h).unwrap(), qs(&[1, 2, 4, 8, 16], Flavor::Hurwitz));
        let ones_p = qs(&[1; 5], Flavor::Power);
        assert_eq!(smul(&ones_p, &ones_p).unwrap(), qs(&[1, 2, 3, 4, 5], Flavor::Power));
        let f = qs(&[3, -1, 4, 1, 5], Flavor::Hurwitz);
        assert_eq!(smul(&sunit(4, Flavor::Hurwitz), &f).unwrap(), f);
    }

    #[test]
    fn smul_rejects_mismatches() {
        let h = qs(&[1, 2], Flavor::Hurwitz);
        let p = qs(&[1, 2], Flavor::Power);
        let h3 = qs(&[1, 2, 3], Flavor::Hurwitz);
        assert!(matches!(smul(&h, &p), Err(SeriesError::FlavorMismatch(..))));
        assert!(matches!(smul(&h, &h3), Err(SeriesError::OrderMismatch(1, 2))));
    }

    #[test]
    fn unit_and_derive() {
        assert_eq!(sunit::<Rational>(0, Flavor::Power), qs(&[1], Flavor::Power));
        assert_eq!(sunit::<Rational>(3, Flavor::Hurwitz), qs(&[1, 0, 0, 0], Flavor::Hurwitz));
        assert_eq!(
            sderive(&sunit::<Rational>(3, Flavor::Hurwitz)).unwrap(),
            qs(&[0, 0, 0], Flavor::Hurwitz)
        );
        assert_eq!(
            sderive(&qs(&[5, 6, 7, 8], Flavor::Hurwitz)).unwrap(),
            qs(&[6, 7, 8], Flavor::Hurwitz)
        );
        assert_eq!(
            sderive(&qs(&[5, 6, 7, 8], Flavor::Power)).unwrap(),
            qs(&[6, 14, 24], Flavor::Power)
        );
        assert!(matches!(
            sderive(&qs(&[1], Flavor::Power)),
            Err(SeriesError::OrderExhausted { .. })
        ));
    }

    #[test]
    fn omega_examples() {
        let env = BTreeMap::from([
            (vn("X"), qs(&[2, 3, 5], Flavor::Hurwitz)),
            (vn("Y"), qs(&[7, 11, 13], Flavor::Hurwitz)),
        ]);
        let xy = &var("X") * &var("Y");
        assert_eq!(omega_eval(&xy, &env, 1).unwrap(), q(2 * 11 + 3 * 7));
        let c = Poly::constant(q(4));
        assert_eq!(omega_eval(&c, &env, 0).unwrap(), q(4));
        assert_eq!(omega_eval(&c, &env, 2).unwrap(), q(0));
        for n in 0..=2 {
            assert_eq!(omega_eval(&var("X"), &env, n).unwrap(), env[&vn("X")].coeffs[n]);
        }
    }

    #[test]
    fn delta_examples() {
        let env = BTreeMap::from([
            (vn("X"), qs(&[2, 3, 5], Flavor::Power)),
            (vn("Y"), qs(&[7, 11, 13], Flavor::Power)),
        ]);
        let xy = &var("X") * &var("Y");
        assert_eq!(delta_eval(&xy, &env, 1).unwrap(), q(2 * 11 + 3 * 7));
        let ones = BTreeMap::from([(vn("X"), qs(&[1, 1, 1], Flavor::Power))]);
        assert_eq!(delta_eval(&var("X").pow(2), &ones, 2).unwrap(), q(3));
        assert_eq!(delta_eval(&Poly::<VarName>::one(), &ones, 0).unwrap(), q(1));
    }

    #[test]
    fn unweighted_recursion_is_not_cauchy() {
        let ones = BTreeMap::from([(vn("X"), qs(&[1, 1, 1], Flavor::Power))]);
        let x2 = var("X").pow(2);
        let unweighted = Recursion {
            env: &ones,
            weights: Weights::Unweighted,
            memo: BTreeMap::new(),
        }
        .eval(&x2, 2);
        assert_eq!(unweighted, q(4));
        assert_eq!(delta_eval(&x2, &ones, 2).unwrap(), q(3));
    }

    #[test]
    fn eval_errors() {
        let env = BTreeMap::from([(vn("X"), qs(&[1, 2], Flavor::Hurwitz))]);
        assert!(matches!(
            omega_eval(&var("Y"), &env, 0),
            Err(SeriesError::UnboundVariable(_))
        ));
        assert!(matches!(
            omega_eval(&var("X"), &env, 2),
            Err(SeriesError::OrderExhausted { .. })
        ));
        assert!(matches!(
            delta_eval(&var("X"), &env, 0),
            Err(SeriesError::FlavorMismatch(..))
        ));
    }

    #[test]
    fn comul_examples() {
        let f = qs(&[10, 11, 12], Flavor::Hurwitz);
        let g = comul(&f, 1).unwrap();
        assert_eq!(g.grid, vec![vec![q(10), q(11)], vec![q(11), q(12)]]);
        let g0 = comul(&f, 0).unwrap();
        assert_eq!(g0.grid, vec![f.coeffs.clone()]);
        let u = comul(&sunit::<Rational>(4, Flavor::Hurwitz), 2).unwrap();
        assert_eq!(u.grid[0], vec![q(1), q(0), q(0)]);
        assert!(u.grid[1..].iter().flatten().all(Rational::is_zero));
        assert!(comul(&f, 3).is_err());
    }

    #[test]
    fn psi_examples() {
        let ones = qs(&[1; 5], Flavor::Power);
        assert_eq!(psi(&ones).unwrap(), qs(&[1, 1, 2, 6, 24], Flavor::Hurwitz));
        assert_eq!(psi_inv(&qs(&[1, 1, 2, 6, 24], Flavor::Hurwitz)).unwrap(), ones);
        assert_eq!(
            psi(&sunit::<Rational>(3, Flavor::Power)).unwrap(),
            sunit(3, Flavor::Hurwitz)
        );
        assert_eq!(
            psi_inv(&sunit::<Rational>(3, Flavor::Hurwitz)).unwrap(),
            sunit(3, Flavor::Power)
        );
        assert!(psi(&ones.clone().with_flavor(Flavor::Hurwitz)).is_err());
    }

    #[test]
    fn diamond_examples() {
        let zero = |_: &Rational| Rational::zero();
        assert_eq!(diamond(zero, &q(7), 3).coeffs, vec![q(7), q(0), q(0), q(0)]);
        let double = |a: &Rational| a * &q(2);
        assert_eq!(diamond(double, &q(1), 3).coeffs, vec![q(1), q(2), q(4), q(8)]);
    }

    #[test]
    fn display_is_compact() {
        let s = Series::new(vec![q(1), Rational::new(-1, 2)], Flavor::Power);
        assert_eq!(s.to_string(), "[1,-1/2]");
    }
}

//! The free differential algebra: polynomials in derivative-indexed
//! variables `(x, n)`, the shift derivation, the monad structure `(α, β)`
//! and the extension of a generator map to a differential morphism.
//!
//! Everything here is generic over the basis type `B`, so the same code
//! builds `B(A)`, `B(B(A))` and `B(B(B(A)))`. The basis of `B(A)` as a
//! module is its set of monomials, which is what the nested levels use as
//! their generators.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::diff_laws::DiffCarrier;
use crate::polynomial::{Monomial, Poly, PolyError, Var, VarName};
use crate::scalars::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeDiffError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("outer variable base `{0}` does not decode to a differential polynomial")]
    MalformedNesting(String),
}

/// The `order`-th derivative of the generator `base`. `(x, 0)` is `x`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DVar<B = VarName> {
    pub base: B,
    pub order: u64,
}

pub type DiffPoly = Poly<DVar>;

impl<B: Var> DVar<B> {
    pub fn new(base: B, order: u64) -> Self {
        DVar { base, order }
    }

    pub fn bumped(&self) -> Self {
        DVar {
            base: self.base.clone(),
            order: self.order + 1,
        }
    }
}

impl<B: Var> fmt::Display for DVar<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.base.to_string();
        if VarName::is_valid(&base) {
            f.write_str(&base)?;
        } else {
            write!(f, "({base})")?;
        }
        match self.order {
            0 => Ok(()),
            n @ 1..=3 => f.write_str(&"'".repeat(n as usize)),
            n => write!(f, "^({n})"),
        }
    }
}

impl<B: Var> fmt::Debug for DVar<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for the generator `(name, order)` as a polynomial.
///
/// Panics on an invalid name; meant for tests and examples.
pub fn dvar(name: &str, order: u64) -> DiffPoly {
    Poly::var(DVar::new(VarName::new(name).expect("valid name"), order))
}

/// The shift derivation: each occurrence of a variable in a monomial has
/// its order bumped once, with the exponent as multiplicity.
pub fn d_shift<B: Var>(p: &Poly<DVar<B>>) -> Poly<DVar<B>> {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        for (v, e) in m.iter() {
            let (_, rest) = m.remove_one(v).expect("variable occurs");
            terms.push((rest.times_var(&v.bumped()), c * &Rational::from(e as u64)));
        }
    }
    Poly::from_terms(terms)
}

pub fn d_shift_n<B: Var>(p: &Poly<DVar<B>>, n: u64) -> Poly<DVar<B>> {
    (0..n).fold(p.clone(), |acc, _| d_shift(&acc))
}

/// The same derivation built as `d ; (1 ⊗ b) ; d°` with `b` the order bump.
pub fn d_shift_via_sharp<B: Var>(p: &Poly<DVar<B>>) -> Poly<DVar<B>> {
    p.derive().map_slot(DVar::bumped).coderive()
}

/// The algebra inclusion sending every generator `x` to `(x, 0)`.
pub fn alpha<B: Var>(p: &Poly<B>) -> Poly<DVar<B>> {
    p.map_vars(|v| DVar::new(v.clone(), 0))
}

/// The unit `α = ι₀ ; η` at the object `Poly<V>`: the linear map sending a
/// basis monomial `m` to the generator `(m, 0)`.
pub fn alpha_at<V: Var>(q: &Poly<V>) -> Poly<DVar<Monomial<V>>> {
    Poly::from_terms(
        q.terms()
            .map(|(m, c)| (Monomial::var(DVar::new(m.clone(), 0)), c.clone())),
    )
}

/// The multiplication `β`: each outer generator `(m, n)` becomes
/// `d_shiftⁿ(m)` and the result is expanded.
pub fn beta<W: Var>(p: &Poly<DVar<Monomial<DVar<W>>>>) -> Poly<DVar<W>> {
    p.compose(|v| d_shift_n(&Poly::from_term(v.base.clone(), Rational::one()), v.order))
}

/// `B(f)` for a linear map `f` given on basis elements: `(x, n)` goes to
/// `Σ c·(y, n)` where `f(x) = Σ c·y`.
pub fn b_map<X: Var, Y: Var>(
    p: &Poly<DVar<X>>,
    mut f: impl FnMut(&X) -> Vec<(Y, Rational)>,
) -> Poly<DVar<Y>> {
    p.compose(|v| {
        Poly::from_terms(
            f(&v.base)
                .into_iter()
                .map(|(y, c)| (Monomial::var(DVar::new(y, v.order)), c)),
        )
    })
}

/// A polynomial as a linear combination of its basis monomials.
pub fn as_basis<V: Var>(q: &Poly<V>) -> Vec<(Monomial<V>, Rational)> {
    q.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// `β` on input whose outer bases are serialized differential polynomials.
pub fn beta_encoded(p: &Poly<DVar<String>>) -> Result<DiffPoly, FreeDiffError> {
    let mut decoded: BTreeMap<String, DiffPoly> = BTreeMap::new();
    for v in p.vars() {
        if !decoded.contains_key(&v.base) {
            let inner = crate::parse::parse_diffpoly(&v.base)
                .map_err(|_| FreeDiffError::MalformedNesting(v.base.clone()))?;
            decoded.insert(v.base.clone(), inner);
        }
    }
    Ok(p.compose(|v| d_shift_n(&decoded[&v.base], v.order)))
}

/// `[a, D(a), …, D^{n_max}(a)]`.
pub fn natural_map<E: Clone>(d: impl Fn(&E) -> E, a: &E, n_max: usize) -> Vec<E> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(a.clone());
    for i in 0..n_max {
        let next = d(&out[i]);
        out.push(next);
    }
    out
}

/// Evaluates `p` in a differential carrier by `(x, n) ↦ Dⁿ(f(x))`.
pub fn extend<B: Var, C: DiffCarrier>(
    f: &BTreeMap<B, C::Elem>,
    c: &C,
    p: &Poly<DVar<B>>,
) -> Result<C::Elem, FreeDiffError> {
    let mut windows: BTreeMap<B, Vec<C::Elem>> = BTreeMap::new();
    for v in p.vars() {
        let base = f
            .get(&v.base)
            .ok_or_else(|| FreeDiffError::UnboundVariable(v.base.to_string()))?;
        let needed = v.order as usize;
        let window = windows
            .entry(v.base.clone())
            .or_insert_with(|| vec![base.clone()]);
        while window.len() <= needed {
            let next = c.derive(window.last().expect("nonempty"));
            window.push(next);
        }
    }
    p.eval_in(c, |v| windows[&v.base].get(v.order as usize).cloned())
        .map_err(|e| match e {
            PolyError::UnboundVariable(s) => FreeDiffError::UnboundVariable(s),
            other => FreeDiffError::UnboundVariable(other.to_string()),
        })
}

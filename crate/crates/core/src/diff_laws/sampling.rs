//! Seeded random instances.
//!
//! Trial `t` of a run with seed `s` draws from ChaCha8 seeded with `s` on
//! stream `t`, so each trial is reproducible on its own and independent of
//! how many values earlier trials consumed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::free_diff::{DVar, DiffPoly};
use crate::hurwitz::{Flavor, Series};
use crate::polynomial::{Monomial, Poly, Var, VarName};
use crate::ring::RingElem;
use crate::scalars::Rational;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Numerator in `-9..=9`, denominator in `1..=4`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4))
}

pub fn random_nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = random_rational(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_monomial<V: Var>(rng: &mut ChaCha8Rng, vars: &[V], max_deg: u32) -> Monomial<V> {
    let deg = rng.gen_range(0..=max_deg);
    Monomial::from_pairs((0..deg).map(|_| (vars[rng.gen_range(0..vars.len())].clone(), 1)))
}

/// Between one and `max_terms` random terms of degree at most `max_deg`.
pub fn random_poly<V: Var>(
    rng: &mut ChaCha8Rng,
    vars: &[V],
    max_deg: u32,
    max_terms: usize,
) -> Poly<V> {
    let n = rng.gen_range(1..=max_terms.max(1));
    Poly::from_terms(
        (0..n).map(|_| (random_monomial(rng, vars, max_deg), random_nonzero_rational(rng))),
    )
}

pub fn var_names(names: &[&str]) -> Vec<VarName> {
    names
        .iter()
        .map(|s| VarName::new(*s).expect("valid name"))
        .collect()
}

/// Formal variables used for the polynomial side of chain-rule checks.
pub fn formal_vars() -> Vec<VarName> {
    var_names(&["X", "Y", "Z", "W"])
}

pub fn random_diffpoly(
    rng: &mut ChaCha8Rng,
    names: &[VarName],
    max_order: u64,
    max_deg: u32,
    max_terms: usize,
) -> DiffPoly {
    let vars: Vec<DVar> = names
        .iter()
        .flat_map(|b| (0..=max_order).map(move |n| DVar::new(b.clone(), n)))
        .collect();
    random_poly(rng, &vars, max_deg, max_terms)
}

/// Coefficient types that can be drawn at random.
pub trait SampleEntry: RingElem {
    fn sample_entry(rng: &mut ChaCha8Rng) -> Self;
}

impl SampleEntry for Rational {
    fn sample_entry(rng: &mut ChaCha8Rng) -> Self {
        random_rational(rng)
    }
}

impl SampleEntry for DiffPoly {
    fn sample_entry(rng: &mut ChaCha8Rng) -> Self {
        random_diffpoly(rng, &var_names(&["x", "y"]), 1, 1, 2)
    }
}

pub fn random_series<T: SampleEntry>(rng: &mut ChaCha8Rng, order: usize, flavor: Flavor) -> Series<T> {
    Series::new((0..=order).map(|_| T::sample_entry(rng)).collect(), flavor)
}

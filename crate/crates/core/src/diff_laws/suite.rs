//! The full law run behind `diffalg laws`, and the negative controls.

use super::carriers::{Breakage, Broken, DiffPolyCarrier, PolySharpCarrier, RbCarrier, SeriesCarrier};
use super::structural::*;
use super::{
    check_chain_rule_random, check_constant_rule, check_derivation_monoid, check_faa_di_bruno_random,
    check_higher_leibniz, check_kernel_closure, check_leibniz, DiffCarrier, LawReport,
};
use crate::rota_baxter::{check_d_after_p, check_rota_baxter};
use crate::scalars::Rational;

/// Highest `n` in the higher-order Leibniz checks.
pub const HIGHER_LEIBNIZ_MAX: usize = 5;
/// Faà di Bruno is checked for `n < FAA_DI_BRUNO_MAX`.
pub const FAA_DI_BRUNO_MAX: usize = 5;
/// Truncation order of the series carriers.
pub const SERIES_ORDER: usize = 8;

/// Every derivation law on one carrier.
pub fn derivation_laws<C: DiffCarrier>(c: &C, trials: u64, seed: u64) -> Vec<LawReport> {
    let d = |x: &C::Elem| c.derive(x);
    vec![
        check_constant_rule(c, trials, seed),
        check_leibniz(c, trials, seed),
        check_higher_leibniz(c, HIGHER_LEIBNIZ_MAX, trials, seed),
        check_chain_rule_random(c, trials, seed),
        check_faa_di_bruno_random(c, FAA_DI_BRUNO_MAX, trials, seed),
        check_kernel_closure(c, trials, seed),
        check_derivation_monoid(c, &d, &d, trials, seed),
    ]
}

/// Every law the library asserts, in a fixed order.
pub fn run_laws(seed: u64, trials: u64) -> Vec<LawReport> {
    let mut out = Vec::new();
    out.extend(check_codifferential_axioms(trials, seed));
    out.push(check_euler_exhaustive(6));

    out.extend(derivation_laws(&PolySharpCarrier::default(), trials, seed));
    out.extend(derivation_laws(&DiffPolyCarrier::default(), trials, seed));
    out.extend(derivation_laws(&SeriesCarrier::<Rational>::hurwitz(SERIES_ORDER), trials, seed));
    out.extend(derivation_laws(&SeriesCarrier::<Rational>::power(SERIES_ORDER), trials, seed));

    let rb = RbCarrier;
    out.push(check_constant_rule(&rb, trials, seed));
    out.push(check_leibniz(&rb, trials, seed));
    out.push(check_higher_leibniz(&rb, 3, trials, seed));
    out.push(check_kernel_closure(&rb, trials, seed));
    out.push(check_rota_baxter(trials, seed));
    out.push(check_d_after_p(trials, seed));

    out.push(check_shift_via_sharp(trials, seed));
    out.push(check_monad_left_unit(trials, seed));
    out.push(check_monad_right_unit(trials, seed));
    out.push(check_monad_assoc(trials, seed));
    out.extend(check_extend(trials, seed));

    out.push(check_omega(trials, seed));
    out.push(check_delta(trials, seed));
    out.push(check_omega_clauses(trials, seed));
    out.extend(check_psi(trials, seed));
    out.extend(check_comonad(10, trials, seed));
    out.push(check_diamond_multiplicative(4, trials, seed));
    out
}

/// The three broken carriers; every report here is expected to fail.
pub fn negative_controls(seed: u64, trials: u64) -> Vec<LawReport> {
    let identity = Broken::new(Breakage::Identity);
    let square = Broken::new(Breakage::Square);
    let good = PolySharpCarrier::default();
    let d1 = |x: &_| good.derive(x);
    let d2 = |x: &_| square.derive(x);
    let mut monoid = check_derivation_monoid(&good, &d1, &d2, trials, seed);
    monoid.carrier = "poly-sharp+square".into();
    vec![
        check_constant_rule(&identity, trials, seed),
        check_leibniz(&square, trials, seed),
        monoid,
    ]
}

//! A law harness for derivations.
//!
//! Any [`DiffCarrier`] (a commutative algebra with an endomorphism `D` and
//! a seeded sampler) can be checked against the constant rule, Leibniz,
//! higher-order Leibniz, the chain rule, Faà di Bruno, closure of the
//! kernel and closure of derivations under addition. Each check returns a
//! [`LawReport`] with the first counterexample found.

pub mod carriers;
pub mod report;
pub mod sampling;
pub mod structural;
pub mod suite;

use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use report::{Counterexample, LawReport};

use crate::free_diff::natural_map;
use crate::polynomial::{Poly, PolyError, VarName};
use crate::ring::Algebra;
use crate::scalars::binom_q;
use sampling::{formal_vars, random_poly, random_rational, trial_rng};

/// Size hint passed to samplers in binary-product checks.
pub const SAMPLE_SIZE: usize = 3;
/// Size hint for the operands of higher-order checks, where `Dⁿ` of a
/// product is expanded exactly.
pub const HIGHER_SAMPLE_SIZE: usize = 2;
/// Size hint for elements substituted into a random polynomial.
pub const ENV_SAMPLE_SIZE: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
}

impl From<PolyError> for LawError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::UnboundVariable(v) => LawError::UnboundVariable(v),
            other => LawError::UnboundVariable(other.to_string()),
        }
    }
}

/// A commutative algebra with an endomorphism `D` and a random generator.
pub trait DiffCarrier: Algebra {
    fn name(&self) -> String;
    fn derive(&self, a: &Self::Elem) -> Self::Elem;
    fn sample(&self, rng: &mut ChaCha8Rng, size: usize) -> Self::Elem;

    /// An element expected to lie in the kernel of `D`.
    fn sample_kernel(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        self.embed(&random_rational(rng))
    }
}

pub type Derivation<'a, E> = &'a dyn Fn(&E) -> E;

fn show<E: std::fmt::Display>(items: &[&E]) -> Vec<String> {
    items.iter().map(|e| e.to_string()).collect()
}

/// `D(1) = 0`.
pub fn check_constant_rule<C: DiffCarrier>(c: &C, _trials: u64, seed: u64) -> LawReport {
    let report = LawReport::new("constant_rule", &c.name(), 1, seed);
    let d1 = c.derive(&c.one());
    if c.agree(&d1, &c.zero()) {
        report
    } else {
        report.fail(Counterexample::new(vec![c.one().to_string()], d1, c.zero()))
    }
}

/// `D(ab) = a·D(b) + D(a)·b` on random pairs.
pub fn check_leibniz<C: DiffCarrier>(c: &C, trials: u64, seed: u64) -> LawReport {
    let report = LawReport::new("leibniz", &c.name(), trials, seed);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let a = c.sample(&mut rng, SAMPLE_SIZE);
        let b = c.sample(&mut rng, SAMPLE_SIZE);
        let lhs = c.derive(&c.mul(&a, &b));
        let rhs = c.add(&c.mul(&a, &c.derive(&b)), &c.mul(&c.derive(&a), &b));
        if !c.agree(&lhs, &rhs) {
            return report.fail(Counterexample::new(show(&[&a, &b]), lhs, rhs));
        }
    }
    report
}

/// `Dⁿ(ab) = Σₖ C(n,k)·Dᵏ(a)·Dⁿ⁻ᵏ(b)` for every `n ≤ n_max`.
pub fn check_higher_leibniz<C: DiffCarrier>(c: &C, n_max: usize, trials: u64, seed: u64) -> LawReport {
    let report = LawReport::new(&format!("higher_leibniz_n{n_max}"), &c.name(), trials, seed);
    let d = |x: &C::Elem| c.derive(x);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let a = c.sample(&mut rng, HIGHER_SAMPLE_SIZE);
        let b = c.sample(&mut rng, HIGHER_SAMPLE_SIZE);
        let da = natural_map(d, &a, n_max);
        let db = natural_map(d, &b, n_max);
        let dab = natural_map(d, &c.mul(&a, &b), n_max);
        for n in 0..=n_max {
            let rhs = c.sum((0..=n).map(|k| {
                c.scale(&binom_q(n as u64, k as u64), &c.mul(&da[k], &db[n - k]))
            }));
            if !c.agree(&dab[n], &rhs) {
                let mut inputs = show(&[&a, &b]);
                inputs.push(format!("n={n}"));
                return report.fail(Counterexample::new(inputs, &dab[n], rhs));
            }
        }
    }
    report
}

fn evaluate<C: DiffCarrier>(
    c: &C,
    p: &Poly<VarName>,
    env: &BTreeMap<VarName, C::Elem>,
) -> Result<C::Elem, LawError> {
    Ok(p.eval_in(c, |v| env.get(v).cloned())?)
}

fn env_inputs<E: std::fmt::Display>(p: &Poly<VarName>, env: &BTreeMap<VarName, E>) -> Vec<String> {
    let mut inputs = vec![format!("p={p}")];
    inputs.extend(env.iter().map(|(k, v)| format!("{k}={v}")));
    inputs
}

/// `D(p(a)) = Σⱼ (∂p/∂xⱼ)(a)·D(aⱼ)` for an arbitrary map `d`.
pub fn chain_rule_counterexample<C: DiffCarrier>(
    c: &C,
    d: Derivation<C::Elem>,
    env: &BTreeMap<VarName, C::Elem>,
    p: &Poly<VarName>,
) -> Result<Option<Counterexample>, LawError> {
    let lhs = d(&evaluate(c, p, env)?);
    let mut rhs = c.zero();
    for v in p.vars() {
        let dp = evaluate(c, &p.partial(&v), env)?;
        rhs = c.add(&rhs, &c.mul(&dp, &d(&env[&v])));
    }
    Ok((!c.agree(&lhs, &rhs)).then(|| Counterexample::new(env_inputs(p, env), lhs, rhs)))
}

pub fn check_chain_rule<C: DiffCarrier>(
    env: &BTreeMap<VarName, C::Elem>,
    p: &Poly<VarName>,
    c: &C,
) -> Result<LawReport, LawError> {
    let d = |x: &C::Elem| c.derive(x);
    let report = LawReport::deterministic("chain_rule", &c.name());
    Ok(report.with(chain_rule_counterexample(c, &d, env, p)?))
}

/// `Dⁿ⁺¹(p(a)) = Σₖ C(n,k) Σⱼ Dᵏ((∂p/∂xⱼ)(a))·Dⁿ⁻ᵏ⁺¹(aⱼ)` for `n < n_max`.
pub fn faa_di_bruno_counterexample<C: DiffCarrier>(
    c: &C,
    env: &BTreeMap<VarName, C::Elem>,
    p: &Poly<VarName>,
    n_max: usize,
) -> Result<Option<Counterexample>, LawError> {
    if n_max == 0 {
        return Ok(None);
    }
    let d = |x: &C::Elem| c.derive(x);
    let lhs = natural_map(d, &evaluate(c, p, env)?, n_max);
    let mut partials = Vec::new();
    for v in p.vars() {
        let dp = natural_map(d, &evaluate(c, &p.partial(&v), env)?, n_max - 1);
        let a = natural_map(d, &env[&v], n_max);
        partials.push((dp, a));
    }
    for n in 0..n_max {
        let mut rhs = c.zero();
        for k in 0..=n {
            let inner = c.sum(partials.iter().map(|(dp, a)| c.mul(&dp[k], &a[n - k + 1])));
            rhs = c.add(&rhs, &c.scale(&binom_q(n as u64, k as u64), &inner));
        }
        if !c.agree(&lhs[n + 1], &rhs) {
            let mut inputs = env_inputs(p, env);
            inputs.push(format!("n={n}"));
            return Ok(Some(Counterexample::new(inputs, &lhs[n + 1], rhs)));
        }
    }
    Ok(None)
}

pub fn check_faa_di_bruno<C: DiffCarrier>(
    env: &BTreeMap<VarName, C::Elem>,
    p: &Poly<VarName>,
    n_max: usize,
    c: &C,
) -> Result<LawReport, LawError> {
    let report = LawReport::deterministic(&format!("faa_di_bruno_n{n_max}"), &c.name());
    Ok(report.with(faa_di_bruno_counterexample(c, env, p, n_max)?))
}

/// A random polynomial in the formal variables and a sampled environment
/// covering its variables.
pub fn random_instance<C: DiffCarrier>(
    c: &C,
    rng: &mut ChaCha8Rng,
    max_deg: u32,
    max_terms: usize,
) -> (Poly<VarName>, BTreeMap<VarName, C::Elem>) {
    let p = random_poly(rng, &formal_vars(), max_deg, max_terms);
    let env = p
        .vars()
        .into_iter()
        .map(|v| (v, c.sample(rng, ENV_SAMPLE_SIZE)))
        .collect();
    (p, env)
}

/// The chain rule on random `(p, env)` pairs: `p` of degree ≤ 4 in up to
/// four variables.
pub fn check_chain_rule_random<C: DiffCarrier>(c: &C, trials: u64, seed: u64) -> LawReport {
    let report = LawReport::new("chain_rule", &c.name(), trials, seed);
    let d = |x: &C::Elem| c.derive(x);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let (p, env) = random_instance(c, &mut rng, 4, 4);
        if let Some(cx) = chain_rule_counterexample(c, &d, &env, &p).expect("env covers p") {
            return report.fail(cx);
        }
    }
    report
}

/// Faà di Bruno on random `(p, env)` pairs, for every `n < n_max`.
pub fn check_faa_di_bruno_random<C: DiffCarrier>(
    c: &C,
    n_max: usize,
    trials: u64,
    seed: u64,
) -> LawReport {
    let report = LawReport::new(&format!("faa_di_bruno_n{n_max}"), &c.name(), trials, seed);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let (p, env) = random_instance(c, &mut rng, 3, 3);
        if let Some(cx) = faa_di_bruno_counterexample(c, &env, &p, n_max).expect("env covers p") {
            return report.fail(cx);
        }
    }
    report
}

/// Products of kernel elements stay in the kernel, and `D(1) = 0`.
pub fn check_kernel_closure<C: DiffCarrier>(c: &C, trials: u64, seed: u64) -> LawReport {
    let report = LawReport::new("kernel_closure", &c.name(), trials, seed);
    let zero = c.zero();
    let d1 = c.derive(&c.one());
    if !c.agree(&d1, &zero) {
        return report.fail(Counterexample::new(vec![c.one().to_string()], d1, zero));
    }
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let a = c.sample_kernel(&mut rng);
        let b = c.sample_kernel(&mut rng);
        if !c.agree(&c.derive(&a), &zero) || !c.agree(&c.derive(&b), &zero) {
            continue;
        }
        let dab = c.derive(&c.mul(&a, &b));
        if !c.agree(&dab, &zero) {
            return report.fail(Counterexample::new(show(&[&a, &b]), dab, zero));
        }
    }
    report
}

/// If `d1` and `d2` satisfy the chain rule on the sampled instances, so do
/// `d1 + d2` and the zero map. A failed precondition yields a skipped
/// report carrying the precondition's counterexample.
pub fn check_derivation_monoid<C: DiffCarrier>(
    c: &C,
    d1: Derivation<C::Elem>,
    d2: Derivation<C::Elem>,
    trials: u64,
    seed: u64,
) -> LawReport {
    let report = LawReport::new("derivation_monoid", &c.name(), trials, seed);
    let sum = |x: &C::Elem| c.add(&d1(x), &d2(x));
    let zero = |_: &C::Elem| c.zero();
    let mut instances = Vec::new();
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        instances.push(random_instance(c, &mut rng, 3, 3));
    }
    for d in [d1, d2] {
        for (p, env) in &instances {
            if let Some(cx) = chain_rule_counterexample(c, d, env, p).expect("env covers p") {
                return report.skip(cx);
            }
        }
    }
    for d in [&sum as Derivation<C::Elem>, &zero] {
        for (p, env) in &instances {
            if let Some(cx) = chain_rule_counterexample(c, d, env, p).expect("env covers p") {
                return report.fail(cx);
            }
        }
    }
    report
}

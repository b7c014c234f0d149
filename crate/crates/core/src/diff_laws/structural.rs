//! Checks of the structure around the derivations: the codifferential
//! axioms of `d`, the free-side monad, the cofree-side recursions, the
//! flavor isomorphism and the comonad.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::carriers::{DiffPolyCarrier, SeriesCarrier};
use super::sampling::{
    random_diffpoly, random_monomial, random_nonzero_rational, random_poly, random_series,
    trial_rng, var_names,
};
use super::{Counterexample, DiffCarrier, LawReport};
use crate::free_diff::{
    alpha_at, as_basis, b_map, beta, d_shift, d_shift_via_sharp, extend, DVar, DiffPoly,
};
use crate::hurwitz::{
    comul, comul_series, diamond, delta_eval, omega_eval, psi, psi_inv, ring_eval, sderive, smul,
    Flavor, Series,
};
use crate::polynomial::{mu, LinearMap, Monomial, Poly, Tensor2, TensorElem, VarName};
use crate::scalars::{binom_q, Rational};

type BA = DiffPoly;
type Depth2 = Poly<DVar<Monomial<DVar>>>;
type Depth3 = Poly<DVar<Monomial<DVar<Monomial<DVar>>>>>;

fn xyzw() -> Vec<VarName> {
    var_names(&["x", "y", "z", "w"])
}

/// Polynomial with at most 4 variables and degree at most 4.
fn axiom_poly(rng: &mut ChaCha8Rng) -> Poly<VarName> {
    random_poly(rng, &xyzw(), 4, 5)
}

fn run(
    law: &str,
    carrier: &str,
    trials: u64,
    seed: u64,
    mut trial: impl FnMut(&mut ChaCha8Rng) -> Option<Counterexample>,
) -> LawReport {
    let report = LawReport::new(law, carrier, trials, seed);
    for t in 0..trials {
        if let Some(cx) = trial(&mut trial_rng(seed, t)) {
            return report.fail(cx);
        }
    }
    report
}

fn compare<T: PartialEq + std::fmt::Display>(inputs: Vec<String>, lhs: T, rhs: T) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample::new(inputs, lhs, rhs))
}

/// The five rules of the deriving transformation on `Poly`, plus its
/// naturality in linear maps.
pub fn check_codifferential_axioms(trials: u64, seed: u64) -> Vec<LawReport> {
    let carrier = "poly";
    let d1 = run("d1_constant", carrier, trials, seed, |rng| {
        let c = Poly::<VarName>::constant(random_nonzero_rational(rng));
        let dc = c.derive();
        (!dc.is_zero()).then(|| Counterexample::new(vec![c.to_string()], dc, "0"))
    });
    let d2 = run("d2_leibniz", carrier, trials, seed, |rng| {
        let (p, q) = (axiom_poly(rng), axiom_poly(rng));
        let lhs = (&p * &q).derive();
        let rhs = q.derive().mul_poly(&p).add(&p.derive().mul_poly(&q));
        compare(vec![p.to_string(), q.to_string()], lhs, rhs)
    });
    let d3 = run("d3_linear", carrier, trials, seed, |rng| {
        let vars = xyzw();
        let p = Poly::from_terms(
            vars.iter()
                .map(|v| (Monomial::var(v.clone()), random_nonzero_rational(rng))),
        );
        let rhs = p
            .terms()
            .map(|(m, c)| TensorElem::pair(&Poly::one(), m.vars().next().expect("linear")).scale(c))
            .fold(TensorElem::zero(), |acc, t| acc.add(&t));
        compare(vec![p.to_string()], p.derive(), rhs)
    });
    let d4 = run("d4_chain", carrier, trials, seed, |rng| {
        let inner: Vec<Poly<VarName>> = (0..3).map(|_| random_poly(rng, &xyzw(), 2, 3)).collect();
        let outer: Poly<Poly<VarName>> = random_poly(rng, &inner, 3, 3);
        let lhs = mu(&outer).derive();
        let mut rhs = TensorElem::zero();
        for (m, q, c) in outer.derive().pairs() {
            let coeff = mu(&Poly::from_term(m.clone(), c.clone()));
            rhs = rhs.add(&q.derive().mul_poly(&coeff));
        }
        compare(vec![outer.to_string()], lhs, rhs)
    });
    let d5 = run("d5_interchange", carrier, trials, seed, |rng| {
        let p = axiom_poly(rng);
        let t = Tensor2::derive_twice(&p);
        (t.swap_last() != t).then(|| Counterexample::new(vec![p.to_string()], "swapped", "unswapped"))
    });
    let nat = run("d_naturality", carrier, trials, seed, |rng| {
        let vars = xyzw();
        let f = LinearMap::from_images(
            vars.iter()
                .map(|v| (v.clone(), random_poly(rng, &vars, 1, 3).euler())),
        );
        let p = axiom_poly(rng);
        let lhs = p.map_linear(&f).expect("linear").derive();
        let rhs = p.derive().map_linear(&f).expect("linear");
        compare(vec![p.to_string()], lhs, rhs)
    });
    vec![d1, d2, d3, d4, d5, nat]
}

/// `L(m) = deg(m)·m` for every monomial of degree ≤ `max_deg` in `x, y, z`.
pub fn check_euler_exhaustive(max_deg: u32) -> LawReport {
    let report = LawReport::deterministic(&format!("euler_degree_le_{max_deg}"), "poly");
    let vars = var_names(&["x", "y", "z"]);
    for a in 0..=max_deg {
        for b in 0..=max_deg - a {
            for c in 0..=max_deg - a - b {
                let m = Monomial::from_pairs([
                    (vars[0].clone(), a),
                    (vars[1].clone(), b),
                    (vars[2].clone(), c),
                ]);
                let p = Poly::from_term(m.clone(), Rational::one());
                let expected = p.scale(&Rational::from((a + b + c) as u64));
                if p.euler() != expected {
                    return report.fail(Counterexample::new(vec![m.to_string()], p.euler(), expected));
                }
            }
        }
    }
    report
}

fn names_xyz() -> Vec<VarName> {
    var_names(&["x", "y", "z"])
}

fn random_ba(rng: &mut ChaCha8Rng) -> BA {
    random_diffpoly(rng, &names_xyz(), 2, 3, 4)
}

fn random_bba(rng: &mut ChaCha8Rng) -> Depth2 {
    let inner_vars: Vec<DVar> = names_xyz()
        .into_iter()
        .flat_map(|b| (0..=2).map(move |n| DVar::new(b.clone(), n)))
        .collect();
    let outer_vars: Vec<DVar<Monomial<DVar>>> = (0..3)
        .map(|_| DVar::new(random_monomial(rng, &inner_vars, 2), rng.gen_range(0..=2)))
        .collect();
    random_poly(rng, &outer_vars, 3, 3)
}

fn random_bbba(rng: &mut ChaCha8Rng) -> Depth3 {
    let mut middle: Vec<DVar<Monomial<DVar>>> = Vec::new();
    while middle.is_empty() {
        middle = random_bba(rng).vars().into_iter().take(3).collect();
    }
    let outer_vars: Vec<DVar<Monomial<DVar<Monomial<DVar>>>>> = (0..2)
        .map(|_| DVar::new(random_monomial(rng, &middle, 2), rng.gen_range(0..=2)))
        .collect();
    random_poly(rng, &outer_vars, 2, 2)
}

/// `d_shift` against its construction as `d ; (1 ⊗ b) ; d°`.
pub fn check_shift_via_sharp(trials: u64, seed: u64) -> LawReport {
    run("shift_equals_sharp_of_bump", "diffpoly", trials, seed, |rng| {
        let p = random_diffpoly(rng, &var_names(&["x", "y", "z", "w"]), 3, 4, 5);
        compare(vec![p.to_string()], d_shift(&p), d_shift_via_sharp(&p))
    })
}

/// `α ; β = 1` at `A` and at `B(A)`.
pub fn check_monad_left_unit(trials: u64, seed: u64) -> LawReport {
    run("monad_alpha_beta", "diffpoly", trials, seed, |rng| {
        let p = random_ba(rng);
        let q = random_bba(rng);
        compare(vec![p.to_string()], beta(&alpha_at(&p)), p.clone())
            .or_else(|| compare(vec![q.to_string()], beta(&alpha_at(&q)), q.clone()))
    })
}

/// `B(α) ; β = 1` at `A` and at `B(A)`.
pub fn check_monad_right_unit(trials: u64, seed: u64) -> LawReport {
    run("monad_b_alpha_beta", "diffpoly", trials, seed, |rng| {
        let p = random_ba(rng);
        let lifted = b_map(&p, |x: &VarName| {
            vec![(Monomial::var(DVar::new(x.clone(), 0)), Rational::one())]
        });
        let q = random_bba(rng);
        let lifted_q: Depth3 = b_map(&q, |m: &Monomial<DVar>| {
            as_basis(&alpha_at(&Poly::from_term(m.clone(), Rational::one())))
        });
        compare(vec![p.to_string()], beta(&lifted), p.clone())
            .or_else(|| compare(vec![q.to_string()], beta(&lifted_q), q.clone()))
    })
}

/// `B(β) ; β = β ; β` on `B(B(B(A)))`.
pub fn check_monad_assoc(trials: u64, seed: u64) -> LawReport {
    run("monad_associativity", "diffpoly", trials, seed, |rng| {
        let x = random_bbba(rng);
        let left: Depth2 = b_map(&x, |m: &Monomial<DVar<Monomial<DVar>>>| {
            as_basis(&beta(&Poly::from_term(m.clone(), Rational::one())))
        });
        let right: Depth2 = beta(&x);
        compare(vec![x.to_string()], beta(&left), beta(&right))
    })
}

/// `extend(f, ·)` is a ring morphism and commutes with the derivations,
/// into Hurwitz series and into differential polynomials.
pub fn check_extend(trials: u64, seed: u64) -> Vec<LawReport> {
    let hurwitz = SeriesCarrier::<Rational>::hurwitz(8);
    let diffpoly = DiffPolyCarrier::default();
    vec![
        check_extend_into(&hurwitz, trials, seed),
        check_extend_into(&diffpoly, trials, seed),
    ]
}

fn check_extend_into<C: DiffCarrier>(c: &C, trials: u64, seed: u64) -> LawReport {
    run("extend_morphism", &c.name(), trials, seed, |rng| {
        let f: BTreeMap<VarName, C::Elem> = names_xyz()
            .into_iter()
            .map(|v| (v, c.sample(rng, 1)))
            .collect();
        let p = random_diffpoly(rng, &names_xyz(), 2, 2, 3);
        let q = random_diffpoly(rng, &names_xyz(), 2, 2, 3);
        let ext = |r: &DiffPoly| extend(&f, c, r).expect("f covers every base");
        let inputs = || vec![p.to_string(), q.to_string()];
        let (ep, eq) = (ext(&p), ext(&q));
        let checks = [
            (ext(&d_shift(&p)), c.derive(&ep)),
            (ext(&(&p * &q)), c.mul(&ep, &eq)),
            (ext(&(&p + &q)), c.add(&ep, &eq)),
            (ext(&Poly::one()), c.one()),
        ];
        checks
            .into_iter()
            .find(|(l, r)| !c.agree(l, r))
            .map(|(l, r)| Counterexample::new(inputs(), l, r))
    })
}

fn random_env(rng: &mut ChaCha8Rng, order: usize, flavor: Flavor) -> BTreeMap<VarName, Series<Rational>> {
    var_names(&["X", "Y", "Z"])
        .into_iter()
        .map(|v| (v, random_series(rng, order, flavor)))
        .collect()
}

type ComponentEval =
    fn(&Poly<VarName>, &BTreeMap<VarName, Series<Rational>>, usize) -> Result<Rational, crate::hurwitz::SeriesError>;

fn recursion_check(
    law: &str,
    flavor: Flavor,
    trials: u64,
    seed: u64,
    eval: ComponentEval,
) -> LawReport {
    run(law, flavor.name(), trials, seed, |rng| {
        let env = random_env(rng, 8, flavor);
        let p = random_poly(rng, &var_names(&["X", "Y", "Z"]), 3, 4);
        let oracle = ring_eval(&p, &env, 8, flavor).expect("env covers p");
        (0..=6).find_map(|n| {
            let got = eval(&p, &env, n).expect("within window");
            compare(
                vec![p.to_string(), format!("n={n}")],
                got,
                oracle.coeffs()[n].clone(),
            )
        })
    })
}

/// The ω recursion against evaluation with the Hurwitz product, `n ≤ 6`.
pub fn check_omega(trials: u64, seed: u64) -> LawReport {
    recursion_check("omega_equals_ring_eval", Flavor::Hurwitz, trials, seed, omega_eval)
}

/// The δ recursion against evaluation with the Cauchy product, `n ≤ 6`.
pub fn check_delta(trials: u64, seed: u64) -> LawReport {
    recursion_check("delta_equals_ring_eval", Flavor::Power, trials, seed, delta_eval)
}

/// The unit, generator and product clauses of ω, pointwise for `n ≤ 6`.
pub fn check_omega_clauses(trials: u64, seed: u64) -> LawReport {
    run("omega_unit_eta_mul_clauses", "hurwitz", trials, seed, |rng| {
        let env = random_env(rng, 8, Flavor::Hurwitz);
        let vars = var_names(&["X", "Y", "Z"]);
        let p = random_poly(rng, &vars, 2, 3);
        let q = random_poly(rng, &vars, 2, 3);
        let one = Poly::<VarName>::one();
        let pq = &p * &q;
        for n in 0..=6usize {
            let inputs = || vec![p.to_string(), q.to_string(), format!("n={n}")];
            let unit = omega_eval(&one, &env, n).expect("window");
            let expected = if n == 0 { Rational::one() } else { Rational::zero() };
            if let Some(cx) = compare(inputs(), unit, expected) {
                return Some(cx);
            }
            for v in &vars {
                let got = omega_eval(&Poly::var(v.clone()), &env, n).expect("window");
                if let Some(cx) = compare(inputs(), got, env[v].coeffs()[n].clone()) {
                    return Some(cx);
                }
            }
            let lhs = omega_eval(&pq, &env, n).expect("window");
            let rhs: Rational = (0..=n)
                .map(|k| {
                    let a = omega_eval(&p, &env, k).expect("window");
                    let b = omega_eval(&q, &env, n - k).expect("window");
                    &(&a * &b) * &binom_q(n as u64, k as u64)
                })
                .sum();
            if let Some(cx) = compare(inputs(), lhs, rhs) {
                return Some(cx);
            }
        }
        None
    })
}

/// `ψ⁻¹∘ψ = 1`, `ψ` multiplicative and intertwining the derivations.
pub fn check_psi(trials: u64, seed: u64) -> Vec<LawReport> {
    let round = run("psi_inverse", "power", trials, seed, |rng| {
        let f: Series<Rational> = random_series(rng, 8, Flavor::Power);
        let back = psi_inv(&psi(&f).expect("power")).expect("hurwitz");
        compare(vec![f.to_string()], back, f.clone())
    });
    let mult = run("psi_multiplicative", "power", trials, seed, |rng| {
        let f: Series<Rational> = random_series(rng, 8, Flavor::Power);
        let g: Series<Rational> = random_series(rng, 8, Flavor::Power);
        let lhs = psi(&smul(&f, &g).expect("same shape")).expect("power");
        let rhs = smul(&psi(&f).expect("power"), &psi(&g).expect("power")).expect("same shape");
        compare(vec![f.to_string(), g.to_string()], lhs, rhs)
    });
    let inter = run("psi_intertwines_derivations", "power", trials, seed, |rng| {
        let f: Series<Rational> = random_series(rng, 8, Flavor::Power);
        let lhs = psi(&sderive(&f).expect("order 8")).expect("power");
        let rhs = sderive(&psi(&f).expect("power")).expect("order 8");
        compare(vec![f.to_string()], lhs, rhs)
    });
    vec![round, mult, inter]
}

/// Counit both ways and coassociativity of `comul` at `order`.
pub fn check_comonad(order: usize, trials: u64, seed: u64) -> Vec<LawReport> {
    let counit = run("comonad_counit", "hurwitz", trials, seed, |rng| {
        let f: Series<Rational> = random_series(rng, order, Flavor::Hurwitz);
        for rows in 0..=order {
            let grid = comul(&f, rows).expect("rows within order").grid;
            let first_row = Series::new(grid[0].clone(), Flavor::Hurwitz);
            let first_col = Series::new(grid.iter().map(|r| r[0].clone()).collect(), Flavor::Hurwitz);
            let inputs = || vec![f.to_string(), format!("rows={rows}")];
            if let Some(cx) = compare(inputs(), first_row, f.truncate(order - rows)) {
                return Some(cx);
            }
            if let Some(cx) = compare(inputs(), first_col, f.truncate(rows)) {
                return Some(cx);
            }
        }
        None
    });
    let coassoc = run("comonad_coassociativity", "hurwitz", trials, seed, |rng| {
        let f: Series<Rational> = random_series(rng, order, Flavor::Hurwitz);
        for r1 in 0..=order {
            for r2 in 0..=r1.min(order - r1) {
                let outer = comul_series(&f, r1).expect("r1 within order");
                let left: Vec<Series<Series<Rational>>> = outer
                    .coeffs()
                    .iter()
                    .map(|row| comul_series(row, r2).expect("r2 within row"))
                    .collect();
                let right = comul_series(&outer, r2).expect("r2 within r1");
                for (i, l_i) in left.iter().enumerate() {
                    for (j, l_ij) in l_i.coeffs().iter().enumerate() {
                        let Some(r_ij) = right.get(i).and_then(|r| r.get(j)) else {
                            continue;
                        };
                        let n = l_ij.order().min(r_ij.order());
                        if l_ij.truncate(n) != r_ij.truncate(n) {
                            return Some(Counterexample::new(
                                vec![f.to_string(), format!("r1={r1} r2={r2} i={i} j={j}")],
                                l_ij,
                                r_ij,
                            ));
                        }
                    }
                }
            }
        }
        None
    });
    vec![counit, coassoc]
}

/// `D◇(ab) = D◇(a)·D◇(b)` with `D` the shift on differential polynomials.
pub fn check_diamond_multiplicative(order: usize, trials: u64, seed: u64) -> LawReport {
    run("diamond_multiplicative", "diffpoly", trials, seed, |rng| {
        let a = random_diffpoly(rng, &var_names(&["x", "y"]), 1, 2, 2);
        let b = random_diffpoly(rng, &var_names(&["x", "y"]), 1, 2, 2);
        let lhs = diamond(d_shift, &(&a * &b), order);
        let rhs = smul(&diamond(d_shift, &a, order), &diamond(d_shift, &b, order)).expect("same shape");
        compare(vec![a.to_string(), b.to_string()], lhs, rhs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_checks_pass_briefly() {
        for r in check_codifferential_axioms(10, 1) {
            assert!(r.pass, "{r}");
        }
        assert!(check_euler_exhaustive(4).pass);
        assert!(check_shift_via_sharp(10, 1).pass);
        assert!(check_monad_left_unit(5, 1).pass);
        assert!(check_monad_right_unit(5, 1).pass);
        assert!(check_monad_assoc(5, 1).pass);
        for r in check_extend(5, 1) {
            assert!(r.pass, "{r}");
        }
        assert!(check_omega(5, 1).pass);
        assert!(check_delta(5, 1).pass);
        assert!(check_omega_clauses(3, 1).pass);
        for r in check_psi(5, 1).into_iter().chain(check_comonad(6, 3, 1)) {
            assert!(r.pass, "{r}");
        }
        assert!(check_diamond_multiplicative(3, 3, 1).pass);
    }
}

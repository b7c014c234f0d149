use std::collections::BTreeMap;

use proptest::prelude::*;

use diffalg::diff_laws::sampling::{random_diffpoly, random_poly, random_series, trial_rng, var_names};
use diffalg::free_diff::{d_shift, d_shift_via_sharp};
use diffalg::hurwitz::{psi, psi_inv, sderive, smul, Flavor, Series};
use diffalg::parse::parse_diffpoly;
use diffalg::polynomial::LinearMap;
use diffalg::rota_baxter::{random_rb_elem, rb_mul, shuffle};
use diffalg::scalars::{binom, Rational};
use diffalg::{DiffPoly, Poly, VarName};

fn diffpoly(seed: u64) -> DiffPoly {
    random_diffpoly(&mut trial_rng(seed, 0), &var_names(&["x", "y", "z"]), 4, 4, 5)
}

fn poly(seed: u64, stream: u64) -> Poly<VarName> {
    random_poly(&mut trial_rng(seed, stream), &var_names(&["x", "y", "z"]), 4, 5)
}

fn series(seed: u64, stream: u64, flavor: Flavor) -> Series<Rational> {
    random_series(&mut trial_rng(seed, stream), 8, flavor)
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let p = diffpoly(seed);
        prop_assert_eq!(parse_diffpoly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn shift_agrees_with_sharp(seed in any::<u64>()) {
        let p = diffpoly(seed);
        prop_assert_eq!(d_shift(&p), d_shift_via_sharp(&p));
    }

    #[test]
    fn euler_scales_each_term_by_its_degree(seed in any::<u64>()) {
        let p = poly(seed, 0);
        let expected = Poly::from_terms(
            p.terms().map(|(m, c)| (m.clone(), c * &Rational::from_integer(m.degree()))),
        );
        prop_assert_eq!(p.euler(), expected);
    }

    #[test]
    fn sharp_matches_flat_for_linear_maps(seed in any::<u64>()) {
        let p = poly(seed, 0);
        let [x, y, z]: [VarName; 3] = var_names(&["x", "y", "z"]).try_into().unwrap();
        let images: BTreeMap<_, _> = [
            (x.clone(), &Poly::var(y.clone()) - &Poly::var(z.clone())),
            (y.clone(), Poly::var(x.clone())),
            (z.clone(), Poly::var(z.clone()).scale(&Rational::new(1, 2))),
        ]
        .into_iter()
        .collect();
        let g = LinearMap::from_images(images.clone());
        prop_assert_eq!(p.sharp(&g).unwrap(), p.flat(&images));
    }

    #[test]
    fn products_distribute(seed in any::<u64>()) {
        let (p, q, r) = (poly(seed, 0), poly(seed, 1), poly(seed, 2));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn psi_round_trips_and_multiplies(seed in any::<u64>()) {
        let (f, g) = (series(seed, 0, Flavor::Power), series(seed, 1, Flavor::Power));
        prop_assert_eq!(psi_inv(&psi(&f).unwrap()).unwrap(), f.clone());
        let lhs = psi(&smul(&f, &g).unwrap()).unwrap();
        let rhs = smul(&psi(&f).unwrap(), &psi(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hurwitz_derivative_is_the_shift(seed in any::<u64>()) {
        let f = series(seed, 0, Flavor::Hurwitz);
        let df = sderive(&f).unwrap();
        prop_assert_eq!(df.coeffs(), &f.coeffs()[1..]);
    }

    #[test]
    fn shuffle_product_is_commutative(seed in any::<u64>()) {
        let a = random_rb_elem(&mut trial_rng(seed, 0));
        let b = random_rb_elem(&mut trial_rng(seed, 1));
        prop_assert_eq!(rb_mul(&a, &b), rb_mul(&b, &a));
    }

    #[test]
    fn shuffle_count_is_binomial(m in 0usize..6, n in 0usize..6) {
        let u: Vec<usize> = (0..m).collect();
        let v: Vec<usize> = (10..10 + n).collect();
        prop_assert_eq!(binom((m + n) as u64, m as u64), shuffle(&u, &v).len().into());
    }
}

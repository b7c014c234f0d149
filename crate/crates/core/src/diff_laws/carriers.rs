//! The carriers shipped with the harness, plus deliberately broken ones.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::sampling::{random_diffpoly, random_poly, random_series, var_names, SampleEntry};
use super::DiffCarrier;
use crate::free_diff::{d_shift, DiffPoly};
use crate::hurwitz::{sderive, Flavor, Series, SeriesRing};
use crate::polynomial::{LinearMap, Poly, VarName};
use crate::ring::{Algebra, Plain, RingElem};
use crate::rota_baxter::{random_rb_elem, rb_D, RBElem};
use crate::scalars::Rational;

/// Implements [`Algebra`] for a carrier by delegating to [`Plain`].
macro_rules! plain_algebra {
    ($carrier:ty, $elem:ty) => {
        impl Algebra for $carrier {
            type Elem = $elem;
            fn zero(&self) -> $elem {
                <$elem as RingElem>::zero()
            }
            fn one(&self) -> $elem {
                <$elem as RingElem>::one()
            }
            fn add(&self, a: &$elem, b: &$elem) -> $elem {
                a.plus(b)
            }
            fn neg(&self, a: &$elem) -> $elem {
                a.negate()
            }
            fn mul(&self, a: &$elem, b: &$elem) -> $elem {
                a.times(b)
            }
            fn scale(&self, c: &Rational, a: &$elem) -> $elem {
                RingElem::scale(a, c)
            }
            fn agree(&self, a: &$elem, b: &$elem) -> bool {
                Plain::<$elem>::new().agree(a, b)
            }
        }
    };
}

/// Degree and term bounds for a sampler size hint.
fn bounds(size: usize) -> (u32, usize) {
    ((size as u32 + 1).min(4), size + 1)
}

/// Polynomials in `x, y, z, w` with `D = g♯` for a fixed linear `g`.
#[derive(Clone, Debug)]
pub struct PolySharpCarrier {
    pub vars: Vec<VarName>,
    pub g: LinearMap<VarName>,
}

impl Default for PolySharpCarrier {
    fn default() -> Self {
        let vars = var_names(&["x", "y", "z", "w"]);
        let v = |i: usize| Poly::var(vars[i].clone());
        let g = LinearMap::from_images([
            (vars[0].clone(), &v(1) - &v(3)),
            (vars[1].clone(), v(2).scale(&Rational::new(1, 2))),
            (vars[2].clone(), &v(0) + &v(2)),
            (vars[3].clone(), v(0).scale(&Rational::from(3))),
        ]);
        PolySharpCarrier { vars, g }
    }
}

plain_algebra!(PolySharpCarrier, Poly<VarName>);

impl DiffCarrier for PolySharpCarrier {
    fn name(&self) -> String {
        "poly-sharp".into()
    }
    fn derive(&self, a: &Poly<VarName>) -> Poly<VarName> {
        a.sharp(&self.g).expect("g is linear")
    }
    fn sample(&self, rng: &mut ChaCha8Rng, size: usize) -> Poly<VarName> {
        let (deg, terms) = bounds(size);
        random_poly(rng, &self.vars, deg, terms)
    }
}

/// Differential polynomials with the shift derivation.
#[derive(Clone, Debug)]
pub struct DiffPolyCarrier {
    pub names: Vec<VarName>,
    pub max_order: u64,
}

impl Default for DiffPolyCarrier {
    fn default() -> Self {
        DiffPolyCarrier {
            names: var_names(&["x", "y", "z"]),
            max_order: 2,
        }
    }
}

plain_algebra!(DiffPolyCarrier, DiffPoly);

impl DiffCarrier for DiffPolyCarrier {
    fn name(&self) -> String {
        "diffpoly".into()
    }
    fn derive(&self, a: &DiffPoly) -> DiffPoly {
        d_shift(a)
    }
    fn sample(&self, rng: &mut ChaCha8Rng, size: usize) -> DiffPoly {
        let (deg, terms) = bounds(size.min(2));
        random_diffpoly(rng, &self.names, self.max_order, deg, terms)
    }
}

/// Truncated series of one flavor with its derivation.
///
/// Derivatives shorten the window; comparisons use the common window.
/// Deriving a series of order 0 panics, so checks must keep the number of
/// derivatives below the carrier's order.
pub struct SeriesCarrier<T> {
    pub ring: SeriesRing<T>,
}

impl<T> SeriesCarrier<T> {
    pub fn new(order: usize, flavor: Flavor) -> Self {
        SeriesCarrier {
            ring: SeriesRing::new(order, flavor),
        }
    }

    pub fn hurwitz(order: usize) -> Self {
        Self::new(order, Flavor::Hurwitz)
    }

    pub fn power(order: usize) -> Self {
        Self::new(order, Flavor::Power)
    }
}

impl<T: RingElem> Algebra for SeriesCarrier<T> {
    type Elem = Series<T>;
    fn zero(&self) -> Series<T> {
        self.ring.zero()
    }
    fn one(&self) -> Series<T> {
        self.ring.one()
    }
    fn add(&self, a: &Series<T>, b: &Series<T>) -> Series<T> {
        self.ring.add(a, b)
    }
    fn neg(&self, a: &Series<T>) -> Series<T> {
        self.ring.neg(a)
    }
    fn mul(&self, a: &Series<T>, b: &Series<T>) -> Series<T> {
        self.ring.mul(a, b)
    }
    fn scale(&self, c: &Rational, a: &Series<T>) -> Series<T> {
        self.ring.scale(c, a)
    }
    fn agree(&self, a: &Series<T>, b: &Series<T>) -> bool {
        self.ring.agree(a, b)
    }
}

impl<T: SampleEntry> DiffCarrier for SeriesCarrier<T> {
    fn name(&self) -> String {
        self.ring.flavor.name().into()
    }
    fn derive(&self, a: &Series<T>) -> Series<T> {
        sderive(a).expect("derivative within the truncation window")
    }
    fn sample(&self, rng: &mut ChaCha8Rng, _size: usize) -> Series<T> {
        random_series(rng, self.ring.order, self.ring.flavor)
    }
}

/// The Rota-Baxter algebra with the tail derivation.
#[derive(Clone, Debug, Default)]
pub struct RbCarrier;

plain_algebra!(RbCarrier, RBElem);

impl DiffCarrier for RbCarrier {
    fn name(&self) -> String {
        "rota-baxter".into()
    }
    fn derive(&self, a: &RBElem) -> RBElem {
        rb_D(a)
    }
    fn sample(&self, rng: &mut ChaCha8Rng, _size: usize) -> RBElem {
        random_rb_elem(rng)
    }
    fn sample_kernel(&self, rng: &mut ChaCha8Rng) -> RBElem {
        // Tail-constant elements: the image of P scaled.
        let a = random_rb_elem(rng);
        crate::rota_baxter::rb_P(&a).scale(&Rational::from(rng.gen_range(1i64..=3)))
    }
}

/// How a [`Broken`] carrier replaces its derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Breakage {
    Identity,
    Square,
}

/// The polynomial carrier with `D` replaced by a map that is not a
/// derivation. Used as a negative control.
#[derive(Clone, Debug)]
pub struct Broken {
    pub inner: PolySharpCarrier,
    pub breakage: Breakage,
}

impl Broken {
    pub fn new(breakage: Breakage) -> Self {
        Broken {
            inner: PolySharpCarrier::default(),
            breakage,
        }
    }
}

plain_algebra!(Broken, Poly<VarName>);

impl DiffCarrier for Broken {
    fn name(&self) -> String {
        match self.breakage {
            Breakage::Identity => "poly-identity-d".into(),
            Breakage::Square => "poly-square-d".into(),
        }
    }
    fn derive(&self, a: &Poly<VarName>) -> Poly<VarName> {
        match self.breakage {
            Breakage::Identity => a.clone(),
            Breakage::Square => a * a,
        }
    }
    fn sample(&self, rng: &mut ChaCha8Rng, size: usize) -> Poly<VarName> {
        self.inner.sample(rng, size)
    }
}

//! Derivations, differential algebras and their free and cofree models,
//! computed exactly over the rationals.
//!
//! - [`polynomial`]: sparse polynomials with the deriving transformation.
//! - [`free_diff`]: differential polynomials, the shift, the monad `(α, β)`.
//! - [`hurwitz`]: truncated Hurwitz and power series, `ω`/`δ`, `ψ`, comonad.
//! - [`rota_baxter`]: the shuffle algebra and its Rota-Baxter operator.
//! - [`diff_laws`]: a seeded law harness over any differential carrier.
//! - [`parse`]: the text grammar for polynomials and differential polynomials.

pub mod diff_laws;
pub mod free_diff;
pub mod hurwitz;
pub mod parse;
pub mod polynomial;
pub mod ring;
pub mod rota_baxter;
pub mod scalars;

pub use free_diff::{DVar, DiffPoly};
pub use polynomial::{Monomial, Poly, VarName};
pub use scalars::Rational;

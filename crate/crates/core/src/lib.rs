//! Exact algebra for the affine Nappi–Witten algebra `Ĥ4`: loop brackets,
//! PBW normal forms, induced modules, singular vectors, the universal
//! affine vertex algebra and its Wakimoto-type free-field realization.

pub mod algebra;
pub mod error;
pub mod json;
pub mod lincomb;
pub mod modules;
pub mod linalg;
pub mod partition;
pub mod pbw;
pub mod rational;
pub mod singular;
pub mod voa;
pub mod wakimoto;

pub use algebra::{bracket, bracket_generators, GeneratorTag, LieElement, LoopGenerator};
pub use error::{NwError, Result};
pub use lincomb::LinComb;
pub use pbw::{casimir, modified_casimir, multiply, straighten, Monomial, UeaElement};
pub use rational::Rational;

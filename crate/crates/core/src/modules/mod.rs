//! Representations: base `H4`-modules and truncated induced `Ĥ4`-modules.

pub mod base;
pub mod induced;

use std::fmt::Debug;
use std::hash::Hash;

use crate::algebra::{LieElement, LoopGenerator};
use crate::error::Result;
use crate::lincomb::LinComb;
use crate::rational::Rational;

pub use base::{BaseModule, BaseParams, BaseRegistry, IntermediateModule, TrivialModule, VermaModule};
pub use induced::{negative_monomials, BasisVector, InducedModule, ModuleState};

/// A graded `Ĥ4`-module of fixed level on which `x(n)` lowers the degree
/// by `n`, so positive modes eventually annihilate every vector.
pub trait RestrictedModule: Sync {
    type Basis: Ord + Clone + Hash + Debug + Send + Sync;

    fn level(&self) -> &Rational;

    fn act_basis(&self, g: LoopGenerator, b: &Self::Basis) -> Result<LinComb<Self::Basis>>;

    /// Grading degree of a basis vector; never negative.
    fn degree(&self, b: &Self::Basis) -> i64;

    /// Basis vectors of degree at most `max_degree` used for exhaustive checks.
    fn basis_up_to(&self, max_degree: usize) -> Vec<Self::Basis>;

    /// A vector annihilated by all positive modes.
    fn vacuum(&self) -> Self::Basis;

    fn act(&self, g: LoopGenerator, s: &LinComb<Self::Basis>) -> Result<LinComb<Self::Basis>> {
        s.map_linear(|b| self.act_basis(g, b))
    }

    /// Action of a Lie element with `k ↦ level`.
    fn act_lie(&self, x: &LieElement, s: &LinComb<Self::Basis>) -> Result<LinComb<Self::Basis>> {
        let mut out = s.scaled(&(&x.central * self.level()));
        for (g, c) in x.loop_terms.iter() {
            out.add_scaled(&self.act(*g, s)?, c);
        }
        Ok(out)
    }

    fn max_degree(&self, s: &LinComb<Self::Basis>) -> i64 {
        s.keys().map(|b| self.degree(b)).max().unwrap_or(0)
    }
}

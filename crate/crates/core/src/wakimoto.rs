//! Free-field realization of `Ĥ4` on `V_𝒜 ⊗ M(1,α)`.
//!
//! `V_𝒜` is the Fock space of a `βγ` pair with `[β(m),γ(n)] = δ_{m+n,0}`,
//! created by `β(n), n < 0` and `γ(n), n ≤ 0`. `M(1,α)` is the Fock space of
//! a rank-two Heisenberg algebra `p, q` with `(p,q) = 1`, `(p,p) = (q,q) = 0`
//! and `[p(m),q(n)] = mδ_{m+n,0}`; `p(0)` and `q(0)` act by `(p,α)` and
//! `(q,α)`. The map `Φ` sends
//!
//! ```text
//! a(n) ↦ β(n)
//! b(n) ↦ −ℓnγ(n) + Σᵢ p(i)γ(n−i)
//! c(n) ↦ p(n)
//! d(n) ↦ ℓq(n) + ½ℓ⁻¹p(n) − Σᵢ :β(i)γ(n−i):
//! ```
//!
//! where `:β(i)γ(j):` puts `β(i)` on the right when `i ≥ 0`.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{bracket_generators, GeneratorTag, LoopGenerator};
use crate::error::{NwError, Result};
use crate::linalg::{self, Coordinates, Matrix};
use crate::lincomb::LinComb;
use crate::modules::{ModuleState, RestrictedModule};
use crate::rational::{rat, Rational};

/// A Fock basis monomial; each list holds the creation indices `k`
/// (for `β(−k)`, `γ(−k)`, `p(−k)`, `q(−k)`) in non-decreasing order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockBasis {
    pub beta: Vec<i64>,
    pub gamma: Vec<i64>,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

impl FockBasis {
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Total `Σ|mode|`, the grading lowered by `n` under any mode-`n` operator.
    pub fn mode_degree(&self) -> i64 {
        [&self.beta, &self.gamma, &self.p, &self.q].iter().map(|v| v.iter().sum::<i64>()).sum()
    }

    /// Mode degree plus the number of `γ` factors. Finitely many basis
    /// vectors have any given oscillator degree.
    pub fn oscillator_degree(&self) -> i64 {
        self.mode_degree() + self.gamma.len() as i64
    }
}

impl fmt::Display for FockBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, list) in [("β", &self.beta), ("γ", &self.gamma), ("p", &self.p), ("q", &self.q)] {
            parts.extend(list.iter().map(|k| format!("{name}({})", -k)));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}·1", parts.join(""))
        }
    }
}

pub type FockState = LinComb<FockBasis>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Oscillator {
    Beta(i64),
    Gamma(i64),
    P(i64),
    Q(i64),
}

impl Oscillator {
    /// Whether this mode creates (adds a factor) instead of differentiating.
    pub fn is_creation(self) -> bool {
        match self {
            Oscillator::Beta(n) | Oscillator::P(n) | Oscillator::Q(n) => n < 0,
            Oscillator::Gamma(n) => n <= 0,
        }
    }
}

fn insert_sorted(list: &mut Vec<i64>, k: i64) {
    let pos = list.partition_point(|&x| x <= k);
    list.insert(pos, k);
}

fn remove_one(list: &mut Vec<i64>, k: i64) -> usize {
    let count = list.iter().filter(|&&x| x == k).count();
    if let Some(i) = list.iter().position(|&x| x == k) {
        list.remove(i);
    }
    count
}

/// `V_𝒜 ⊗ M(1,α)` truncated at oscillator degree `depth`, with `Ĥ4`
/// acting through `Φ` at level `ℓ`.
pub struct FockModule {
    level: Rational,
    alpha_p: Rational,
    alpha_q: Rational,
    depth: usize,
    cache: RwLock<HashMap<(LoopGenerator, FockBasis), FockState>>,
}

impl fmt::Debug for FockModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FockModule")
            .field("level", &self.level)
            .field("alpha_p", &self.alpha_p)
            .field("alpha_q", &self.alpha_q)
            .field("depth", &self.depth)
            .finish()
    }
}

impl FockModule {
    pub fn new(level: Rational, alpha_p: Rational, alpha_q: Rational, depth: usize) -> Result<Self> {
        if level.is_zero() {
            return Err(NwError::ZeroLevel);
        }
        Ok(Self { level, alpha_p, alpha_q, depth, cache: RwLock::new(HashMap::new()) })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn vacuum_state(&self) -> FockState {
        LinComb::basis(FockBasis::vacuum())
    }

    /// One oscillator mode on one basis vector.
    pub fn oscillator_act(&self, op: Oscillator, b: &FockBasis) -> Result<FockState> {
        let mut out = b.clone();
        let coeff = match op {
            Oscillator::Beta(n) if n < 0 => {
                insert_sorted(&mut out.beta, -n);
                rat(1)
            }
            Oscillator::Beta(n) => rat(remove_one(&mut out.gamma, n) as i64),
            Oscillator::Gamma(n) if n <= 0 => {
                insert_sorted(&mut out.gamma, -n);
                rat(1)
            }
            Oscillator::Gamma(n) => rat(-(remove_one(&mut out.beta, n) as i64)),
            Oscillator::P(0) => self.alpha_p.clone(),
            Oscillator::Q(0) => self.alpha_q.clone(),
            Oscillator::P(n) if n < 0 => {
                insert_sorted(&mut out.p, -n);
                rat(1)
            }
            Oscillator::Q(n) if n < 0 => {
                insert_sorted(&mut out.q, -n);
                rat(1)
            }
            Oscillator::P(n) => rat(n * remove_one(&mut out.q, n) as i64),
            Oscillator::Q(n) => rat(n * remove_one(&mut out.p, n) as i64),
        };
        if coeff.is_zero() {
            return Ok(FockState::zero());
        }
        if out.oscillator_degree() > self.depth as i64 {
            return Err(NwError::TruncationOverflow(format!(
                "{out} exceeds oscillator degree {}",
                self.depth
            )));
        }
        Ok(FockState::term(out, coeff))
    }

    pub fn oscillator_apply(&self, op: Oscillator, s: &FockState) -> Result<FockState> {
        s.map_linear(|b| self.oscillator_act(op, b))
    }

    /// Applies a product of commuting oscillators, annihilators first.
    fn apply_commuting(&self, ops: [Oscillator; 2], b: &FockBasis) -> Result<FockState> {
        let [x, y] = ops;
        let (first, second) = if x.is_creation() { (y, x) } else { (x, y) };
        let s = self.oscillator_act(first, b)?;
        self.oscillator_apply(second, &s)
    }

    fn phi(&self, g: LoopGenerator, b: &FockBasis) -> Result<FockState> {
        let n = g.mode;
        let md = b.mode_degree();
        match g.tag {
            GeneratorTag::A => self.oscillator_act(Oscillator::Beta(n), b),
            GeneratorTag::C => self.oscillator_act(Oscillator::P(n), b),
            GeneratorTag::B => {
                let mut out = self.oscillator_act(Oscillator::Gamma(n), b)?.scaled(&(-&self.level * rat(n)));
                for i in (n - md)..=md {
                    out.add_scaled(&self.apply_commuting([Oscillator::P(i), Oscillator::Gamma(n - i)], b)?, &rat(1));
                }
                Ok(out)
            }
            GeneratorTag::D => {
                let mut out = self.oscillator_act(Oscillator::Q(n), b)?.scaled(&self.level);
                out.add_scaled(&self.oscillator_act(Oscillator::P(n), b)?, &(Rational::one() / (rat(2) * &self.level)));
                for i in (n - md)..=md {
                    let term = if i < 0 {
                        let s = self.oscillator_act(Oscillator::Gamma(n - i), b)?;
                        self.oscillator_apply(Oscillator::Beta(i), &s)?
                    } else {
                        let s = self.oscillator_act(Oscillator::Beta(i), b)?;
                        self.oscillator_apply(Oscillator::Gamma(n - i), &s)?
                    };
                    out.add_scaled(&term, &rat(-1));
                }
                Ok(out)
            }
        }
    }

    /// Fock basis vectors of oscillator degree exactly `degree`.
    pub fn basis_of_degree(&self, degree: usize) -> Vec<FockBasis> {
        self.basis_up_to(degree).into_iter().filter(|b| b.oscillator_degree() == degree as i64).collect()
    }

    pub fn graded_dim(&self, degree: usize) -> usize {
        self.basis_of_degree(degree).len()
    }

    /// `Φ(v)·1` for a vacuum-module state, composing the generator images.
    pub fn phi_of_state(&self, v: &ModuleState) -> Result<FockState> {
        let mut out = FockState::zero();
        for (bv, c) in v.iter() {
            let mut s = self.vacuum_state();
            for g in bv.word.factors().iter().rev() {
                s = self.act(*g, &s)?;
            }
            out.add_scaled(&s, c);
        }
        Ok(out)
    }
}

/// Non-decreasing lists of parts `≥ min_part` with cost `Σ(part + extra)`
/// at most `budget`, paired with their cost.
fn multisets(budget: i64, min_part: i64, extra: i64) -> Vec<(Vec<i64>, i64)> {
    fn go(budget: i64, from: i64, extra: i64, acc: &mut Vec<i64>, cost: i64, out: &mut Vec<(Vec<i64>, i64)>) {
        out.push((acc.clone(), cost));
        let mut k = from;
        while cost + k + extra <= budget {
            acc.push(k);
            go(budget, k, extra, acc, cost + k + extra, out);
            acc.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    go(budget, min_part, extra, &mut Vec::new(), 0, &mut out);
    out
}

impl RestrictedModule for FockModule {
    type Basis = FockBasis;

    fn level(&self) -> &Rational {
        &self.level
    }

    fn act_basis(&self, g: LoopGenerator, b: &FockBasis) -> Result<FockState> {
        if g.mode > b.mode_degree() {
            return Ok(FockState::zero());
        }
        let key = (g, b.clone());
        if let Some(hit) = self.cache.read().expect("cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let out = self.phi(g, b)?;
        self.cache.write().expect("cache poisoned").insert(key, out.clone());
        Ok(out)
    }

    fn degree(&self, b: &FockBasis) -> i64 {
        b.mode_degree()
    }

    /// All basis vectors of oscillator degree at most `max_degree`.
    fn basis_up_to(&self, max_degree: usize) -> Vec<FockBasis> {
        let budget = max_degree as i64;
        let mut out = Vec::new();
        for (beta, c1) in multisets(budget, 1, 0) {
            for (gamma, c2) in multisets(budget - c1, 0, 1) {
                for (p, c3) in multisets(budget - c1 - c2, 1, 0) {
                    for (q, _) in multisets(budget - c1 - c2 - c3, 1, 0) {
                        out.push(FockBasis { beta: beta.clone(), gamma: gamma.clone(), p: p.clone(), q: q.clone() });
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn vacuum(&self) -> FockBasis {
        FockBasis::vacuum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub x: GeneratorTag,
    pub y: GeneratorTag,
    pub m: i64,
    pub n: i64,
    pub passed: bool,
    /// First state on which the relation failed.
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone)]
pub struct PhiReport {
    pub checks: Vec<RelationCheck>,
}

impl PhiReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Unordered generator pairs `(x, y)` with `x ≤ y`.
pub fn generator_pairs() -> Vec<(GeneratorTag, GeneratorTag)> {
    let mut out = Vec::new();
    for (i, &x) in GeneratorTag::ALL.iter().enumerate() {
        for &y in &GeneratorTag::ALL[i..] {
            out.push((x, y));
        }
    }
    out
}

/// Checks `[Φ(x)(m), Φ(y)(n)] = Φ([x(m), y(n)])` with `k ↦ ℓ` for every
/// unordered generator pair and `|m|, |n| ≤ max_mode`, on all basis states
/// of oscillator degree at most `max_depth`.
pub fn verify_phi_relations(level: &Rational, alpha_p: &Rational, alpha_q: &Rational, max_mode: i64, max_depth: usize) -> Result<PhiReport> {
    // each product raises the oscillator degree by at most |mode| + 1
    let room = max_depth + 2 * (max_mode.max(0) as usize + 1);
    let module = FockModule::new(level.clone(), alpha_p.clone(), alpha_q.clone(), room)?;
    let states = module.basis_up_to(max_depth);
    let mut cells = Vec::new();
    for (x, y) in generator_pairs() {
        for m in -max_mode..=max_mode {
            for n in -max_mode..=max_mode {
                cells.push((x, y, m, n));
            }
        }
    }
    let checks = cells
        .par_iter()
        .map(|&(x, y, m, n)| {
            let (xm, yn) = (x.at(m), y.at(n));
            let bracket = bracket_generators(xm, yn);
            for b in &states {
                let w = LinComb::basis(b.clone());
                let lhs = &module.act(xm, &module.act(yn, &w)?)? - &module.act(yn, &module.act(xm, &w)?)?;
                if lhs != module.act_lie(&bracket, &w)? {
                    return Ok(RelationCheck { x, y, m, n, passed: false, counterexample: Some(b.to_string()) });
                }
            }
            Ok(RelationCheck { x, y, m, n, passed: true, counterexample: None })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiReport { checks })
}

/// `κ` with `[Φ(a)(m), Φ(b)(−m)]1 − Φ(c)(0)1 = κ·1`.
pub fn level_reading(module: &FockModule, m: i64) -> Result<Option<Rational>> {
    let vac = module.vacuum_state();
    let (a, b) = (GeneratorTag::A.at(m), GeneratorTag::B.at(-m));
    let comm = &module.act(a, &module.act(b, &vac)?)? - &module.act(b, &module.act(a, &vac)?)?;
    let residual = &comm - &module.act(GeneratorTag::C.at(0), &vac)?;
    let kappa = residual.coeff(&FockBasis::vacuum());
    Ok((residual == vac.scaled(&kappa)).then_some(kappa))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageType {
    /// `(p,α) = 0`: contains a copy of a vacuum-type module.
    VacuumType,
    /// `(p,α) ≠ 0`: of generalized Verma type.
    GeneralizedVermaType,
}

impl fmt::Display for ImageType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImageType::VacuumType => "VacuumType",
            ImageType::GeneralizedVermaType => "GeneralizedVermaType",
        })
    }
}

/// Reads `(𝕔, 𝕕)` off the Fock vacuum as the eigenvalues of `Φ(c)(0)` and
/// `Φ(d)(0)`.
pub fn highest_weight_of_image(level: &Rational, alpha_p: &Rational, alpha_q: &Rational) -> Result<(Rational, Rational, ImageType)> {
    let module = FockModule::new(level.clone(), alpha_p.clone(), alpha_q.clone(), 2)?;
    let vac = module.vacuum_state();
    let mut eigen = Vec::new();
    for tag in [GeneratorTag::C, GeneratorTag::D] {
        let image = module.act(tag.at(0), &vac)?;
        let value = image.coeff(&FockBasis::vacuum());
        if image != vac.scaled(&value) {
            return Err(NwError::InvalidParameter(format!("vacuum is not an eigenvector of {tag}(0)")));
        }
        eigen.push(value);
    }
    let d = eigen.pop().expect("two eigenvalues");
    let c = eigen.pop().expect("two eigenvalues");
    let kind = if c.is_zero() { ImageType::VacuumType } else { ImageType::GeneralizedVermaType };
    Ok((c, d, kind))
}

/// Images `Φ(v)1` of every vacuum-module basis vector of height at most `depth`.
pub fn phi_images(module: &FockModule, depth: usize) -> Result<Vec<FockState>> {
    let vacuum = crate::modules::InducedModule::new(
        module.level().clone(),
        std::sync::Arc::new(crate::modules::TrivialModule { d: rat(0) }),
        depth,
    )?;
    vacuum.basis_up_to(depth).into_iter().map(|b| module.phi_of_state(&LinComb::basis(b))).collect()
}

/// `dim(span Φ(V_{≤D}) ∩ Fock_{≤D})`, degrees measured by oscillator degree.
pub fn phi_span_dim(level: &Rational, depth: usize) -> Result<usize> {
    let module = FockModule::new(level.clone(), rat(0), rat(0), 3 * depth + 2)?;
    let images = phi_images(&module, depth)?;
    let total = linalg::span_rank(&images);
    let outside: Vec<FockState> = images
        .iter()
        .map(|s| s.iter().filter(|(b, _)| b.oscillator_degree() > depth as i64).map(|(b, c)| (b.clone(), c.clone())).collect())
        .collect();
    let coords = Coordinates::new(&outside);
    let rows: Matrix = outside.iter().filter_map(|s| coords.dense(s)).collect();
    Ok(total - linalg::rank(&rows, coords.len()))
}

/// Whether `γ(0)1 ⊗ 1₀` lies outside `span Φ(V_{≤D})`.
pub fn gamma0_cokernel_witness(level: &Rational, depth: usize) -> Result<bool> {
    let module = FockModule::new(level.clone(), rat(0), rat(0), 3 * depth + 2)?;
    let images = phi_images(&module, depth)?;
    let target = FockState::basis(FockBasis { gamma: vec![0], ..FockBasis::default() });
    Ok(!linalg::in_span(&images, &target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn fock(level: i64, p: i64, q: i64) -> FockModule {
        FockModule::new(rat(level), rat(p), rat(q), 6).unwrap()
    }

    #[test]
    fn weyl_pairing() {
        let f = fock(1, 0, 0);
        let s = f.oscillator_act(Oscillator::Gamma(-1), &FockBasis::vacuum()).unwrap();
        assert_eq!(f.oscillator_apply(Oscillator::Beta(1), &s).unwrap(), f.vacuum_state());
        let g0 = f.oscillator_act(Oscillator::Gamma(0), &FockBasis::vacuum()).unwrap();
        assert_eq!(g0, FockState::basis(FockBasis { gamma: vec![0], ..Default::default() }));
        let b = f.oscillator_act(Oscillator::Beta(-2), &FockBasis::vacuum()).unwrap();
        assert_eq!(f.oscillator_apply(Oscillator::Gamma(2), &b).unwrap(), f.vacuum_state().scaled(&rat(-1)));
    }

    #[test]
    fn heisenberg_zero_modes() {
        let f = FockModule::new(rat(1), ratio(3, 2), rat(5), 4).unwrap();
        let vac = FockBasis::vacuum();
        assert_eq!(f.oscillator_act(Oscillator::P(0), &vac).unwrap(), f.vacuum_state().scaled(&ratio(3, 2)));
        let q = f.oscillator_act(Oscillator::Q(-2), &vac).unwrap();
        assert_eq!(f.oscillator_apply(Oscillator::P(2), &q).unwrap(), f.vacuum_state().scaled(&rat(2)));
        assert!(f.oscillator_apply(Oscillator::Q(2), &q).unwrap().is_zero());
    }

    #[test]
    fn vacuum_images() {
        let f = FockModule::new(rat(2), rat(3), ratio(1, 2), 4).unwrap();
        let vac = f.vacuum_state();
        let d0 = f.act(GeneratorTag::D.at(0), &vac).unwrap();
        assert_eq!(d0, vac.scaled(&(rat(1) + ratio(3, 4))));
        assert_eq!(f.act(GeneratorTag::C.at(0), &vac).unwrap(), vac.scaled(&rat(3)));
        let f0 = fock(1, 0, 1);
        assert!(f0.act(GeneratorTag::B.at(0), &f0.vacuum_state()).unwrap().is_zero());
    }

    #[test]
    fn fock_graded_dims() {
        let f = fock(1, 0, 0);
        let dims: Vec<usize> = (0..=4).map(|n| f.graded_dim(n)).collect();
        assert_eq!(dims, vec![1, 4, 14, 40, 105]);
    }

    #[test]
    fn highest_weights() {
        let (c, d, t) = highest_weight_of_image(&rat(1), &rat(0), &rat(1)).unwrap();
        assert_eq!((c, d, t), (rat(0), rat(1), ImageType::VacuumType));
        let (c, d, t) = highest_weight_of_image(&rat(1), &rat(2), &rat(0)).unwrap();
        assert_eq!((c, d, t), (rat(2), rat(1), ImageType::GeneralizedVermaType));
        assert!(highest_weight_of_image(&rat(0), &rat(0), &rat(0)).is_err());
    }

    #[test]
    fn truncation_overflow() {
        let f = FockModule::new(rat(1), rat(0), rat(0), 1).unwrap();
        let s = f.oscillator_act(Oscillator::Beta(-1), &FockBasis::vacuum()).unwrap();
        assert!(matches!(f.oscillator_apply(Oscillator::Beta(-1), &s), Err(NwError::TruncationOverflow(_))));
    }
}

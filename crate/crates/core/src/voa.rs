//! The vertex algebra on the vacuum module `V(ℓ,0)` acting on restricted
//! modules.
//!
//! Modes of `Y(v, x)` are evaluated directly on states: for `v = h(−m)u`,
//!
//! ```text
//! (h(−m)u)_n = Σ_{i≥0} C(m+i−1, i) [ h(−m−i) u_{n+i} + (−1)^{m+1} u_{n−m−i} h(i) ]
//! ```
//!
//! which is the normal-ordered product `:∂^{(m−1)}h(x) Y(u,x):` read at the
//! mode level. On a state of degree `e` only finitely many terms survive:
//! `h(i)` vanishes for `i > e` and `u_k` vanishes once `k ≥ wt(u) + e`.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::algebra::{GeneratorTag, LoopGenerator};
use crate::error::{NwError, Result};
use crate::lincomb::LinComb;
use crate::modules::{BasisVector, ModuleState, RestrictedModule};
use crate::pbw::Monomial;
use crate::rational::{binomial, rat, Rational};

type ModeCache<B> = RwLock<HashMap<(Vec<LoopGenerator>, i64, B), LinComb<B>>>;

/// Evaluates vertex-operator modes of vacuum-module states on `module`.
/// Results are cached per (word, mode, basis vector).
pub struct VertexEngine<'a, M: RestrictedModule> {
    module: &'a M,
    cache: ModeCache<M::Basis>,
}

impl<'a, M: RestrictedModule> VertexEngine<'a, M> {
    pub fn new(module: &'a M) -> Self {
        Self { module, cache: RwLock::new(HashMap::new()) }
    }

    pub fn module(&self) -> &'a M {
        self.module
    }

    /// `v_n w` for `v` in `V(ℓ,0)`, written in the vacuum-module basis.
    pub fn mode(&self, v: &ModuleState, n: i64, w: &LinComb<M::Basis>) -> Result<LinComb<M::Basis>> {
        let mut out = LinComb::zero();
        for (bv, cv) in v.iter() {
            if bv.base != 0 {
                return Err(NwError::InvalidParameter(format!("{bv} is not a vacuum-module state")));
            }
            for (bw, cw) in w.iter() {
                out.add_scaled(&self.mode_word(bv.word.factors(), n, bw)?, &(cv * cw));
            }
        }
        Ok(out)
    }

    fn mode_word(&self, word: &[LoopGenerator], n: i64, w: &M::Basis) -> Result<LinComb<M::Basis>> {
        let Some((&h, rest)) = word.split_first() else {
            return Ok(if n == -1 { LinComb::basis(w.clone()) } else { LinComb::zero() });
        };
        let key = (word.to_vec(), n, w.clone());
        if let Some(hit) = self.cache.read().expect("cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let m = -h.mode;
        if m < 1 {
            return Err(NwError::InvalidParameter(format!("vacuum-module word contains {h}")));
        }
        let wt_u: i64 = -rest.iter().map(|g| g.mode).sum::<i64>();
        let deg_w = self.module.degree(w);
        let sign = if m % 2 == 1 { Rational::one() } else { -Rational::one() };
        let mut out = LinComb::zero();
        for i in 0..=(wt_u + deg_w - 1 - n).max(-1) {
            let inner = self.mode_word(rest, n + i, w)?;
            if !inner.is_zero() {
                out.add_scaled(&self.module.act(h.tag.at(-m - i), &inner)?, &binomial(m + i - 1, i));
            }
        }
        for i in 0..=deg_w {
            let moved = self.module.act_basis(h.tag.at(i), w)?;
            if moved.is_zero() {
                continue;
            }
            let coeff = &sign * binomial(m + i - 1, i);
            for (bw, cw) in moved.iter() {
                out.add_scaled(&self.mode_word(rest, n - m - i, bw)?, &(&coeff * cw));
            }
        }
        self.cache.write().expect("cache poisoned").insert(key, out.clone());
        Ok(out)
    }

    /// `L(n) w = ω_{n+1} w`.
    pub fn virasoro(&self, omega: &ModuleState, n: i64, w: &LinComb<M::Basis>) -> Result<LinComb<M::Basis>> {
        self.mode(omega, n + 1, w)
    }
}

fn vacuum_word(word: Vec<LoopGenerator>) -> BasisVector {
    BasisVector { word: Monomial::from_sorted(word), base: 0 }
}

/// `h(−1)1`.
pub fn generator_state(h: GeneratorTag) -> ModuleState {
    LinComb::basis(vacuum_word(vec![h.at(-1)]))
}

/// The vacuum `1`.
pub fn vacuum_state() -> ModuleState {
    LinComb::basis(vacuum_word(Vec::new()))
}

/// The conformal vector
/// `ℓ⁻¹(a(−1)b(−1) + c(−1)d(−1))1 − (2ℓ)⁻¹c(−2)1 − (2ℓ²)⁻¹c(−1)²1`.
pub fn omega(level: &Rational) -> Result<ModuleState> {
    if level.is_zero() {
        return Err(NwError::ZeroLevel);
    }
    use GeneratorTag::*;
    let inv = Rational::one() / level;
    let mut w = ModuleState::zero();
    w.add_term(vacuum_word(vec![A.at(-1), B.at(-1)]), inv.clone());
    w.add_term(vacuum_word(vec![C.at(-1), D.at(-1)]), inv.clone());
    w.add_term(vacuum_word(vec![C.at(-2)]), -&inv / rat(2));
    w.add_term(vacuum_word(vec![C.at(-1), C.at(-1)]), -&inv * &inv / rat(2));
    Ok(w)
}

/// `𝒟v = v_{−2}1` on the vacuum module.
pub fn d_operator<M: RestrictedModule<Basis = BasisVector>>(engine: &VertexEngine<'_, M>, v: &ModuleState) -> Result<ModuleState> {
    engine.mode(v, -2, &vacuum_state())
}

/// `h(n)ω` in the vacuum module.
pub fn h_mode_on_omega<M: RestrictedModule<Basis = BasisVector>>(vacuum: &M, h: GeneratorTag, n: i64) -> Result<ModuleState> {
    vacuum.act(h.at(n), &omega(vacuum.level())?)
}

/// First state on which an identity failed, with both sides.
#[derive(Debug, Clone)]
pub struct Counterexample<B: Ord> {
    pub state: B,
    pub lhs: LinComb<B>,
    pub rhs: LinComb<B>,
}

/// `[L(m), h(n)] = −n h(m+n)` on every basis state of degree at most
/// `max_degree`. Returns the first counterexample, if any.
pub fn check_dg<M: RestrictedModule>(
    engine: &VertexEngine<'_, M>,
    m: i64,
    n: i64,
    h: GeneratorTag,
    max_degree: usize,
) -> Result<Option<Counterexample<M::Basis>>> {
    let module = engine.module();
    let omega = omega(module.level())?;
    for b in module.basis_up_to(max_degree) {
        let w = LinComb::basis(b.clone());
        let lhs = &engine.virasoro(&omega, m, &module.act(h.at(n), &w)?)?
            - &module.act(h.at(n), &engine.virasoro(&omega, m, &w)?)?;
        let rhs = module.act(h.at(m + n), &w)?.scaled(&rat(-n));
        if lhs != rhs {
            return Ok(Some(Counterexample { state: b, lhs, rhs }));
        }
    }
    Ok(None)
}

pub fn verify_dg<M: RestrictedModule>(engine: &VertexEngine<'_, M>, m: i64, n: i64, h: GeneratorTag, max_degree: usize) -> Result<bool> {
    Ok(check_dg(engine, m, n, h, max_degree)?.is_none())
}

#[derive(Debug, Clone)]
pub struct VirasoroCheck<B: Ord> {
    pub m: i64,
    pub n: i64,
    pub verified: bool,
    /// Scalar `κ` with `[L(m),L(n)] − (m−n)L(m+n) = κ` measured on the first state.
    pub central_coeff: Option<Rational>,
    /// `12κ/(m³−m)`, when `m + n = 0` and `m³ ≠ m`.
    pub central_charge: Option<Rational>,
    pub counterexample: Option<Counterexample<B>>,
}

/// The expected central term `(1/3)(m³−m)δ_{m+n,0}`.
pub fn expected_central(m: i64, n: i64) -> Rational {
    if m + n == 0 {
        rat(m * m * m - m) / rat(3)
    } else {
        Rational::zero()
    }
}

/// Checks `[L(m),L(n)] = (m−n)L(m+n) + (1/3)(m³−m)δ_{m+n,0}` on every basis
/// state of degree at most `max_degree`, and measures the central term.
pub fn verify_virasoro<M: RestrictedModule>(
    engine: &VertexEngine<'_, M>,
    m: i64,
    n: i64,
    max_degree: usize,
) -> Result<VirasoroCheck<M::Basis>> {
    let module = engine.module();
    let omega = omega(module.level())?;
    let expected = expected_central(m, n);
    let mut measured: Option<Rational> = None;
    let mut counterexample = None;
    for b in module.basis_up_to(max_degree) {
        let w = LinComb::basis(b.clone());
        let lmn = engine.virasoro(&omega, m, &engine.virasoro(&omega, n, &w)?)?;
        let lnm = engine.virasoro(&omega, n, &engine.virasoro(&omega, m, &w)?)?;
        let lhs = &lmn - &lnm;
        let residual = &lhs - &engine.virasoro(&omega, m + n, &w)?.scaled(&rat(m - n));
        if measured.is_none() {
            let kappa = residual.coeff(&b);
            if residual == w.scaled(&kappa) {
                measured = Some(kappa);
            }
        }
        if residual != w.scaled(&expected) && counterexample.is_none() {
            let rhs = &(&lhs - &residual) + &w.scaled(&expected);
            counterexample = Some(Counterexample { state: b, lhs, rhs });
        }
    }
    let verified = counterexample.is_none() && measured.as_ref().is_none_or(|k| *k == expected);
    let cubic = m * m * m - m;
    let central_charge = match &measured {
        Some(k) if m + n == 0 && cubic != 0 => Some(k * rat(12) / rat(cubic)),
        _ => None,
    };
    Ok(VirasoroCheck { m, n, verified, central_coeff: measured, central_charge, counterexample })
}

/// `L(0)` on the generating vector of an induced module over a Verma base
/// should be `c_M/(2ℓ)` with `c_M = 𝕔(2𝕕+1) − 𝕔²/ℓ`.
pub fn conformal_weight(level: &Rational, c: &Rational, d: &Rational) -> Result<Rational> {
    if level.is_zero() {
        return Err(NwError::ZeroLevel);
    }
    let c_m = c * (rat(2) * d + rat(1)) - c * c / level;
    Ok(c_m / (rat(2) * level))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::GeneratorTag::*;
    use super::*;
    use crate::modules::{InducedModule, TrivialModule};
    use crate::pbw::straighten;
    use crate::rational::ratio;

    fn vacuum(level: Rational, depth: usize) -> InducedModule {
        InducedModule::new(level, Arc::new(TrivialModule { d: rat(0) }), depth).unwrap()
    }

    #[test]
    fn generator_field_is_the_mode_action() {
        let v = vacuum(rat(2), 4);
        let e = VertexEngine::new(&v);
        let w = v.apply_word(&[A.at(-1), D.at(-2)], &v.highest_state()).unwrap();
        for h in GeneratorTag::ALL {
            for n in -1..=3 {
                assert_eq!(e.mode(&generator_state(h), n, &w).unwrap(), v.act(h.at(n), &w).unwrap());
            }
        }
    }

    #[test]
    fn vacuum_field_is_identity() {
        let v = vacuum(rat(1), 3);
        let e = VertexEngine::new(&v);
        let w = v.act(B.at(-2), &v.highest_state()).unwrap();
        assert_eq!(e.mode(&vacuum_state(), -1, &w).unwrap(), w);
        assert!(e.mode(&vacuum_state(), 0, &w).unwrap().is_zero());
    }

    #[test]
    fn omega_forms_agree() {
        for level in [rat(1), ratio(5, 3)] {
            let v = vacuum(level.clone(), 2);
            let inv = Rational::one() / &level;
            let mut sym = straighten(&[A.at(-1), B.at(-1)], &level);
            for w in [[B.at(-1), A.at(-1)], [C.at(-1), D.at(-1)], [D.at(-1), C.at(-1)]] {
                sym = sym.plus(&straighten(&w, &level)).unwrap();
            }
            let sym = sym.scaled(&(&inv / rat(2)));
            let cc = straighten(&[C.at(-1), C.at(-1)], &level).scaled(&(-&inv * &inv / rat(2)));
            let explicit = v.apply_uea(&sym.plus(&cc).unwrap(), &v.highest_state()).unwrap();
            assert_eq!(explicit, omega(&level).unwrap());
        }
        assert!(matches!(omega(&rat(0)), Err(NwError::ZeroLevel)));
    }

    #[test]
    fn h_modes_on_omega_table() {
        let v = vacuum(ratio(2, 3), 3);
        for h in GeneratorTag::ALL {
            assert_eq!(h_mode_on_omega(&v, h, 1).unwrap(), generator_state(h));
            for n in [0, 2, 3] {
                assert!(h_mode_on_omega(&v, h, n).unwrap().is_zero(), "{h}({n})ω");
            }
        }
    }

    #[test]
    fn l_modes_on_omega() {
        let v = vacuum(rat(3), 4);
        let e = VertexEngine::new(&v);
        let w = omega(&rat(3)).unwrap();
        assert_eq!(e.virasoro(&w, 0, &w).unwrap(), w.scaled(&rat(2)));
        assert!(e.virasoro(&w, 1, &w).unwrap().is_zero());
        assert_eq!(e.virasoro(&w, 2, &w).unwrap(), vacuum_state().scaled(&rat(2)));
        assert!(e.virasoro(&w, 3, &w).unwrap().is_zero());
    }

    #[test]
    fn conformal_weight_formula() {
        assert_eq!(conformal_weight(&rat(1), &rat(-1), &rat(0)).unwrap(), rat(-1));
        assert!(conformal_weight(&rat(0), &rat(1), &rat(1)).is_err());
    }
}

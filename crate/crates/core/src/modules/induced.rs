//! Induced modules `U(Ĥ4) ⊗_{U(Ĥ4^{≥0})} M`, truncated by height.
//!
//! Basis: a PBW word in negative modes tensored with a base basis vector.
//! Positive modes act by commuting through the word until they annihilate
//! the base; mode zero reaches the base through `BaseModule::act`; negative
//! modes multiply on the left and re-sort.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use num_traits::One;

use crate::algebra::{bracket_generators, GeneratorTag, LoopGenerator};
use crate::error::{NwError, Result};
use crate::lincomb::LinComb;
use crate::modules::{BaseModule, RestrictedModule};
use crate::pbw::{Monomial, Schedule, Straightener, UeaElement};
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisVector {
    pub word: Monomial,
    pub base: i64,
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ v[{}]", self.word, self.base)
    }
}

pub type ModuleState = LinComb<BasisVector>;

/// Sorted words in negative modes with mode sum `-height`.
pub fn negative_monomials(height: usize) -> Vec<Monomial> {
    fn extend(remaining: i64, min: Option<LoopGenerator>, acc: &mut Vec<LoopGenerator>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial::from_sorted(acc.clone()));
            return;
        }
        for mode in -remaining..=-1 {
            for tag in GeneratorTag::ALL {
                let g = tag.at(mode);
                if min.is_some_and(|m| g < m) {
                    continue;
                }
                acc.push(g);
                extend(remaining + mode, Some(g), acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(height as i64, None, &mut Vec::new(), &mut out);
    out
}

type ActCache = RwLock<HashMap<(LoopGenerator, BasisVector), ModuleState>>;

pub struct InducedModule {
    level: Rational,
    base: Arc<dyn BaseModule>,
    depth: usize,
    cache: ActCache,
    straightener: Mutex<Straightener>,
}

impl fmt::Debug for InducedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InducedModule")
            .field("level", &self.level)
            .field("base", &self.base)
            .field("depth", &self.depth)
            .finish()
    }
}

impl InducedModule {
    /// Windowed bases need `window ≥ 2·depth`.
    pub fn new(level: Rational, base: Arc<dyn BaseModule>, depth: usize) -> Result<Self> {
        if let Some(w) = base.window() {
            if w < 2 * depth as i64 {
                return Err(NwError::InvalidParameter(format!(
                    "window {w} too small for depth {depth} (need at least {})",
                    2 * depth
                )));
            }
        }
        let straightener = Mutex::new(Straightener::new(level.clone(), Schedule::default()));
        Ok(Self { level, base, depth, cache: RwLock::new(HashMap::new()), straightener })
    }

    pub fn base(&self) -> &dyn BaseModule {
        self.base.as_ref()
    }

    pub fn base_arc(&self) -> Arc<dyn BaseModule> {
        Arc::clone(&self.base)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `1 ⊗ v` for base index `index`.
    pub fn base_state(&self, index: i64) -> ModuleState {
        LinComb::basis(BasisVector { word: Monomial::one(), base: index })
    }

    /// The generating vector `v`, `v` or `v₀` depending on the base kind.
    pub fn highest_state(&self) -> ModuleState {
        self.base_state(self.base.highest_index())
    }

    pub fn height(&self, b: &BasisVector) -> i64 {
        b.word.height()
    }

    pub fn d_weight(&self, b: &BasisVector) -> Rational {
        self.base.d_weight(b.base) + rat(b.word.d_charge())
    }

    /// Applies `word` to `state`, rightmost factor first.
    pub fn apply_word(&self, word: &[LoopGenerator], state: &ModuleState) -> Result<ModuleState> {
        let mut s = state.clone();
        for g in word.iter().rev() {
            s = self.act(*g, &s)?;
        }
        Ok(s)
    }

    pub fn apply_uea(&self, u: &UeaElement, state: &ModuleState) -> Result<ModuleState> {
        if u.level != self.level {
            return Err(NwError::LevelMismatch { left: u.level.clone(), right: self.level.clone() });
        }
        let mut out = ModuleState::zero();
        for (m, c) in u.terms.iter() {
            out.add_scaled(&self.apply_word(m.factors(), state)?, c);
        }
        Ok(out)
    }

    fn left_multiply(&self, g: LoopGenerator, b: &BasisVector) -> Result<ModuleState> {
        let mut word = Vec::with_capacity(b.word.len() + 1);
        word.push(g);
        word.extend_from_slice(b.word.factors());
        let nf = self.straightener.lock().expect("straightener poisoned").normal_form(&word);
        let mut out = ModuleState::zero();
        for (m, c) in nf.iter() {
            if m.height() > self.depth as i64 {
                return Err(NwError::TruncationOverflow(format!("height {} exceeds depth {}", m.height(), self.depth)));
            }
            out.add_term(BasisVector { word: m.clone(), base: b.base }, c.clone());
        }
        Ok(out)
    }

    fn compute_act(&self, g: LoopGenerator, b: &BasisVector) -> Result<ModuleState> {
        if g.mode < 0 {
            return self.left_multiply(g, b);
        }
        let factors = b.word.factors();
        let Some((&first, rest)) = factors.split_first() else {
            if g.mode > 0 {
                return Ok(ModuleState::zero());
            }
            return Ok(self
                .base
                .act(g.tag, b.base)?
                .into_iter()
                .map(|(i, c)| (BasisVector { word: Monomial::one(), base: i }, c))
                .collect());
        };
        // g f · rest = [g, f] · rest + f · (g · rest)
        let rest = BasisVector { word: Monomial::from_sorted(rest.to_vec()), base: b.base };
        let rest_state = LinComb::basis(rest.clone());
        let br = bracket_generators(g, first);
        let mut out = self.act_lie(&br, &rest_state)?;
        let moved = self.act_basis(g, &rest)?;
        if !moved.is_zero() {
            out.add_scaled(&self.act(first, &moved)?, &Rational::one());
        }
        Ok(out)
    }

    pub fn component_basis(&self, height: usize, d_weight: Option<&Rational>) -> Vec<BasisVector> {
        let mut out = Vec::new();
        for word in negative_monomials(height) {
            let indices = match d_weight {
                Some(w) => self.base.indices_with_weight(&(w - rat(word.d_charge()))),
                None => self.base.indices(),
            };
            for base in indices {
                out.push(BasisVector { word: word.clone(), base });
            }
        }
        out
    }

    pub fn graded_dim(&self, height: usize) -> usize {
        self.component_basis(height, None).len()
    }

    pub fn bigraded_dim(&self, height: usize, d_weight: &Rational) -> usize {
        self.component_basis(height, Some(d_weight)).len()
    }

    /// `(c, d)` eigenvalues if `s` is a simultaneous eigenvector of `c(0)` and `d(0)`.
    pub fn weight_of(&self, s: &ModuleState) -> Option<(Rational, Rational)> {
        let (key, lead) = s.first()?;
        let mut pair = Vec::with_capacity(2);
        for tag in [GeneratorTag::C, GeneratorTag::D] {
            let image = self.act(tag.at(0), s).ok()?;
            let eigen = image.coeff(key) / lead;
            if image != s.scaled(&eigen) {
                return None;
            }
            pair.push(eigen);
        }
        let d = pair.pop()?;
        let c = pair.pop()?;
        Some((c, d))
    }
}

impl RestrictedModule for InducedModule {
    type Basis = BasisVector;

    fn level(&self) -> &Rational {
        &self.level
    }

    fn act_basis(&self, g: LoopGenerator, b: &BasisVector) -> Result<ModuleState> {
        if g.mode > b.word.height() {
            return Ok(ModuleState::zero());
        }
        let key = (g, b.clone());
        if let Some(hit) = self.cache.read().expect("cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let result = self.compute_act(g, b)?;
        self.cache.write().expect("cache poisoned").insert(key, result.clone());
        Ok(result)
    }

    fn degree(&self, b: &BasisVector) -> i64 {
        b.word.height()
    }

    fn basis_up_to(&self, max_degree: usize) -> Vec<BasisVector> {
        let hw = self.base.highest_index();
        let mut out = Vec::new();
        for h in 0..=max_degree.min(self.depth) {
            for word in negative_monomials(h) {
                for base in self.base.indices() {
                    if (base - hw).abs() <= max_degree as i64 {
                        out.push(BasisVector { word: word.clone(), base });
                    }
                }
            }
        }
        out
    }

    fn vacuum(&self) -> BasisVector {
        BasisVector { word: Monomial::one(), base: self.base.highest_index() }
    }
}

/// Sorts a raw word and attaches it to `base`; for building test states.
pub fn basis_vector(word: Vec<LoopGenerator>, base: i64) -> BasisVector {
    BasisVector { word: Monomial::from_sorted(word), base }
}

//! Normal-ordered elements of the enveloping algebra at a fixed level.
//!
//! A PBW monomial is a word of loop generators sorted by ascending mode,
//! ties broken by `d < c < a < b`. Products are brought to normal form by
//! adjacent transpositions `x y = y x + [x, y]`, with `k` specialized to the
//! level. Each transposition lowers the inversion count of a same-length
//! word, and the bracket side terms are strictly shorter, so the rewriting
//! terminates.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{bracket_generators, GeneratorTag, LieElement, LoopGenerator};
use crate::error::{NwError, Result};
use crate::lincomb::LinComb;
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<LoopGenerator>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Sorts the factors; only valid when they pairwise commute (or when the
    /// caller knows the word is already sorted).
    pub fn from_sorted(mut factors: Vec<LoopGenerator>) -> Self {
        factors.sort();
        Monomial(factors)
    }

    pub fn factors(&self) -> &[LoopGenerator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> i64 {
        height(self)
    }

    pub fn count(&self, tag: GeneratorTag) -> usize {
        self.0.iter().filter(|g| g.tag == tag).count()
    }

    /// `#a − #b`, the shift of the d(0)-eigenvalue produced by this word.
    pub fn d_charge(&self) -> i64 {
        self.0.iter().map(|g| g.tag.d_charge()).sum()
    }

    pub fn is_sorted(word: &[LoopGenerator]) -> bool {
        word.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Negative of the mode sum: lowering words have positive height.
pub fn height(m: &Monomial) -> i64 {
    -m.0.iter().map(|g| g.mode).sum::<i64>()
}

/// Which out-of-order adjacent pair is swapped first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    #[default]
    Rightmost,
    Leftmost,
}

/// Memoized straightening at one level.
pub struct Straightener {
    level: Rational,
    schedule: Schedule,
    memo: HashMap<Vec<LoopGenerator>, LinComb<Monomial>>,
}

impl Straightener {
    pub fn new(level: Rational, schedule: Schedule) -> Self {
        Self { level, schedule, memo: HashMap::new() }
    }

    pub fn normal_form(&mut self, word: &[LoopGenerator]) -> LinComb<Monomial> {
        if let Some(hit) = self.memo.get(word) {
            return hit.clone();
        }
        let inversion = match self.schedule {
            Schedule::Leftmost => (0..word.len().saturating_sub(1)).find(|&i| word[i] > word[i + 1]),
            Schedule::Rightmost => (0..word.len().saturating_sub(1)).rev().find(|&i| word[i] > word[i + 1]),
        };
        let result = match inversion {
            None => LinComb::basis(Monomial(word.to_vec())),
            Some(i) => {
                let (x, y) = (word[i], word[i + 1]);
                let mut swapped = word.to_vec();
                swapped.swap(i, i + 1);
                let mut out = self.normal_form(&swapped);

                let br = bracket_generators(x, y);
                for (z, c) in br.loop_terms.iter() {
                    let mut shorter = Vec::with_capacity(word.len() - 1);
                    shorter.extend_from_slice(&word[..i]);
                    shorter.push(*z);
                    shorter.extend_from_slice(&word[i + 2..]);
                    let nf = self.normal_form(&shorter);
                    out.add_scaled(&nf, c);
                }
                let central = &br.central * &self.level;
                if !central.is_zero() {
                    let mut shorter = Vec::with_capacity(word.len() - 2);
                    shorter.extend_from_slice(&word[..i]);
                    shorter.extend_from_slice(&word[i + 2..]);
                    let nf = self.normal_form(&shorter);
                    out.add_scaled(&nf, &central);
                }
                out
            }
        };
        self.memo.insert(word.to_vec(), result.clone());
        result
    }
}

/// Element of `U(Ĥ4)` with `k` acting as `level`, in PBW normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UeaElement {
    pub level: Rational,
    pub terms: LinComb<Monomial>,
}

impl UeaElement {
    pub fn zero(level: Rational) -> Self {
        Self { level, terms: LinComb::zero() }
    }

    pub fn one(level: Rational) -> Self {
        Self { level, terms: LinComb::basis(Monomial::one()) }
    }

    pub fn generator(g: LoopGenerator, level: Rational) -> Self {
        Self { level, terms: LinComb::basis(Monomial(vec![g])) }
    }

    /// Image of a Lie algebra element, `k ↦ level`.
    pub fn from_lie(x: &LieElement, level: Rational) -> Self {
        let mut terms = LinComb::zero();
        for (g, c) in x.loop_terms.iter() {
            terms.add_term(Monomial(vec![*g]), c.clone());
        }
        terms.add_term(Monomial::one(), &x.central * &level);
        Self { level, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn plus(&self, other: &UeaElement) -> Result<UeaElement> {
        self.check_level(other)?;
        Ok(Self { level: self.level.clone(), terms: &self.terms + &other.terms })
    }

    pub fn minus(&self, other: &UeaElement) -> Result<UeaElement> {
        self.check_level(other)?;
        Ok(Self { level: self.level.clone(), terms: &self.terms - &other.terms })
    }

    pub fn scaled(&self, s: &Rational) -> UeaElement {
        Self { level: self.level.clone(), terms: self.terms.scaled(s) }
    }

    fn check_level(&self, other: &UeaElement) -> Result<()> {
        if self.level != other.level {
            return Err(NwError::LevelMismatch { left: self.level.clone(), right: other.level.clone() });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &UeaElement) -> Result<UeaElement> {
        multiply(self, other)
    }
}

pub fn straighten(word: &[LoopGenerator], level: &Rational) -> UeaElement {
    straighten_with(word, level, Schedule::default())
}

pub fn straighten_with(word: &[LoopGenerator], level: &Rational, schedule: Schedule) -> UeaElement {
    let mut s = Straightener::new(level.clone(), schedule);
    UeaElement { level: level.clone(), terms: s.normal_form(word) }
}

pub fn multiply(u: &UeaElement, v: &UeaElement) -> Result<UeaElement> {
    u.check_level(v)?;
    let mut s = Straightener::new(u.level.clone(), Schedule::default());
    let mut terms = LinComb::zero();
    for (mu, cu) in u.terms.iter() {
        for (mv, cv) in v.terms.iter() {
            let mut word = mu.0.clone();
            word.extend_from_slice(&mv.0);
            terms.add_scaled(&s.normal_form(&word), &(cu * cv));
        }
    }
    Ok(UeaElement { level: u.level.clone(), terms })
}

/// `Ω = ab + ba + cd + dc` in normal form (the level plays no role at mode 0).
pub fn casimir(level: &Rational) -> UeaElement {
    use GeneratorTag::*;
    let mut s = Straightener::new(level.clone(), Schedule::default());
    let mut terms = LinComb::zero();
    for (x, y) in [(A, B), (B, A), (C, D), (D, C)] {
        terms.add_scaled(&s.normal_form(&[x.at(0), y.at(0)]), &rat(1));
    }
    UeaElement { level: level.clone(), terms }
}

/// `Ω − ℓ⁻¹ c²` at level `ℓ`.
pub fn modified_casimir(level: &Rational) -> Result<UeaElement> {
    if level.is_zero() {
        return Err(NwError::ZeroLevel);
    }
    let c = GeneratorTag::C.at(0);
    let c2 = straighten(&[c, c], level);
    casimir(level).minus(&c2.scaled(&(rat(1) / level)))
}

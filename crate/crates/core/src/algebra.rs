//! The Nappi-Witten algebra `H4 = span{a, b, c, d}` and its affinization.
//!
//! Brackets on `H4`: `[a,b] = c`, `[d,a] = a`, `[d,b] = -b`, `c` central.
//! Invariant form: `(a,b) = (c,d) = 1`, all other pairs zero. The loop
//! algebra bracket is
//!
//! ```text
//! [x(m), y(n)] = [x,y](m+n) + m (x,y) δ_{m+n,0} k
//! ```
//!
//! with `k` central and kept as a formal coefficient.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::NwError;
use crate::lincomb::LinComb;
use crate::rational::{rat, Rational};

/// Basis element of `H4`. The declaration order `d < c < a < b` is the
/// PBW order used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorTag {
    D,
    C,
    A,
    B,
}

impl GeneratorTag {
    pub const ALL: [GeneratorTag; 4] = [GeneratorTag::D, GeneratorTag::C, GeneratorTag::A, GeneratorTag::B];

    pub fn symbol(self) -> &'static str {
        match self {
            GeneratorTag::A => "a",
            GeneratorTag::B => "b",
            GeneratorTag::C => "c",
            GeneratorTag::D => "d",
        }
    }

    pub fn at(self, mode: i64) -> LoopGenerator {
        LoopGenerator { mode, tag: self }
    }

    /// Eigenvalue of `ad d` on this generator (its d-weight).
    pub fn d_charge(self) -> i64 {
        match self {
            GeneratorTag::A => 1,
            GeneratorTag::B => -1,
            GeneratorTag::C | GeneratorTag::D => 0,
        }
    }
}

impl fmt::Display for GeneratorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for GeneratorTag {
    type Err = NwError;

    fn from_str(s: &str) -> Result<Self, NwError> {
        match s.trim() {
            "a" => Ok(GeneratorTag::A),
            "b" => Ok(GeneratorTag::B),
            "c" => Ok(GeneratorTag::C),
            "d" => Ok(GeneratorTag::D),
            other => Err(NwError::Parse(format!("unknown generator {other:?}"))),
        }
    }
}

/// Bracket on `H4` as a (possibly empty) single-term result.
pub fn finite_bracket(x: GeneratorTag, y: GeneratorTag) -> Option<(GeneratorTag, i64)> {
    use GeneratorTag::*;
    match (x, y) {
        (A, B) => Some((C, 1)),
        (B, A) => Some((C, -1)),
        (D, A) => Some((A, 1)),
        (A, D) => Some((A, -1)),
        (D, B) => Some((B, -1)),
        (B, D) => Some((B, 1)),
        _ => None,
    }
}

/// The invariant symmetric form on `H4`.
pub fn form(x: GeneratorTag, y: GeneratorTag) -> Rational {
    use GeneratorTag::*;
    match (x, y) {
        (A, B) | (B, A) | (C, D) | (D, C) => rat(1),
        _ => rat(0),
    }
}

/// `x ⊗ t^mode`. Ordered by mode first, then tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopGenerator {
    pub mode: i64,
    pub tag: GeneratorTag,
}

impl LoopGenerator {
    pub fn new(tag: GeneratorTag, mode: i64) -> Self {
        Self { mode, tag }
    }
}

impl fmt::Display for LoopGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.tag, self.mode)
    }
}

impl FromStr for LoopGenerator {
    type Err = NwError;

    /// Accepts `a:2` or `a(2)`.
    fn from_str(s: &str) -> Result<Self, NwError> {
        let s = s.trim();
        let (tag, mode) = if let Some((t, m)) = s.split_once(':') {
            (t, m)
        } else if let (Some(open), true) = (s.find('('), s.ends_with(')')) {
            (&s[..open], &s[open + 1..s.len() - 1])
        } else {
            return Err(NwError::Parse(format!("expected gen:mode, got {s:?}")));
        };
        let mode = mode
            .trim()
            .parse::<i64>()
            .map_err(|_| NwError::Parse(format!("bad mode in {s:?}")))?;
        Ok(LoopGenerator::new(tag.parse()?, mode))
    }
}

/// Element of the affine algebra: loop part plus a coefficient of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    pub loop_terms: LinComb<LoopGenerator>,
    pub central: Rational,
}

impl LieElement {
    pub fn zero() -> Self {
        Self { loop_terms: LinComb::zero(), central: Rational::zero() }
    }

    pub fn generator(g: LoopGenerator) -> Self {
        Self { loop_terms: LinComb::basis(g), central: Rational::zero() }
    }

    pub fn central(coeff: Rational) -> Self {
        Self { loop_terms: LinComb::zero(), central: coeff }
    }

    pub fn is_zero(&self) -> bool {
        self.loop_terms.is_zero() && self.central.is_zero()
    }

    pub fn add_scaled(&mut self, other: &LieElement, scale: &Rational) {
        self.loop_terms.add_scaled(&other.loop_terms, scale);
        self.central += &other.central * scale;
    }

    pub fn scaled(&self, scale: &Rational) -> Self {
        Self { loop_terms: self.loop_terms.scaled(scale), central: &self.central * scale }
    }

    pub fn plus(&self, other: &LieElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &rat(1));
        out
    }

    pub fn minus(&self, other: &LieElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &rat(-1));
        out
    }

    /// Standard degree if every loop term has the same mode. The central
    /// part has degree zero.
    pub fn standard_degree(&self) -> Option<i64> {
        let mut modes = self.loop_terms.keys().map(|g| g.mode);
        let first = modes.next();
        match first {
            None => (!self.central.is_zero()).then_some(0),
            Some(m) => {
                if modes.any(|n| n != m) || (m != 0 && !self.central.is_zero()) {
                    None
                } else {
                    Some(m)
                }
            }
        }
    }
}

/// Bracket of two loop generators.
pub fn bracket_generators(x: LoopGenerator, y: LoopGenerator) -> LieElement {
    let mut out = LieElement::zero();
    if let Some((z, sign)) = finite_bracket(x.tag, y.tag) {
        out.loop_terms.add_term(z.at(x.mode + y.mode), rat(sign));
    }
    if x.mode + y.mode == 0 {
        out.central = rat(x.mode) * form(x.tag, y.tag);
    }
    out
}

/// Bilinear extension of [`bracket_generators`]; `k` brackets to zero.
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (gx, cx) in x.loop_terms.iter() {
        for (gy, cy) in y.loop_terms.iter() {
            out.add_scaled(&bracket_generators(*gx, *gy), &(cx * cy));
        }
    }
    out
}

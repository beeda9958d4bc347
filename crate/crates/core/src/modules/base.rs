//! Modules over the finite algebra `H4`, used as the degree-zero layer of
//! induced modules.
//!
//! Each kind implements [`BaseModule`]; basis vectors are addressed by an
//! integer index (always 0 for the trivial module, the power `k` of `bᵏv` for
//! the Verma module, and `n` of `vₙ` for the intermediate series). Kinds are
//! constructed by name through a [`BaseRegistry`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::GeneratorTag;
use crate::error::{NwError, Result};
use crate::rational::{format_rational, rat, to_integer, Rational};

pub trait BaseModule: Send + Sync + fmt::Debug {
    /// Name used in JSON (`TrivialL`, `VermaM`, `Intermediate`).
    fn kind(&self) -> &'static str;

    /// Action of a degree-zero generator on basis vector `index`.
    fn act(&self, tag: GeneratorTag, index: i64) -> Result<Vec<(i64, Rational)>>;

    /// d-eigenvalue of basis vector `index`.
    fn d_weight(&self, index: i64) -> Rational;

    /// The scalar by which `c` acts.
    fn c_value(&self) -> Rational;

    /// All basis indices inside the truncation.
    fn indices(&self) -> Vec<i64>;

    /// Basis indices of d-eigenvalue `weight`.
    fn indices_with_weight(&self, weight: &Rational) -> Vec<i64>;

    /// The distinguished generating vector (`v`, `v` and `v₀`).
    fn highest_index(&self) -> i64 {
        0
    }

    /// Half-width of the index window, for windowed modules.
    fn window(&self) -> Option<i64> {
        None
    }

    fn index_json(&self, index: i64) -> Value;

    fn parse_index(&self, value: &Value) -> Result<i64>;

    fn params_json(&self) -> Value;
}

/// `L(𝕕) = ℂv`: `a, b, c` act by zero and `d` by `𝕕`.
#[derive(Debug, Clone)]
pub struct TrivialModule {
    pub d: Rational,
}

impl BaseModule for TrivialModule {
    fn kind(&self) -> &'static str {
        "TrivialL"
    }

    fn act(&self, tag: GeneratorTag, index: i64) -> Result<Vec<(i64, Rational)>> {
        debug_assert_eq!(index, 0);
        Ok(match tag {
            GeneratorTag::D if !self.d.is_zero() => vec![(0, self.d.clone())],
            _ => vec![],
        })
    }

    fn d_weight(&self, _index: i64) -> Rational {
        self.d.clone()
    }

    fn c_value(&self) -> Rational {
        rat(0)
    }

    fn indices(&self) -> Vec<i64> {
        vec![0]
    }

    fn indices_with_weight(&self, weight: &Rational) -> Vec<i64> {
        if weight == &self.d {
            vec![0]
        } else {
            vec![]
        }
    }

    fn index_json(&self, _index: i64) -> Value {
        json!({ "kind": "TrivialL" })
    }

    fn parse_index(&self, value: &Value) -> Result<i64> {
        expect_kind(value, "TrivialL")?;
        Ok(0)
    }

    fn params_json(&self) -> Value {
        json!({ "kind": "TrivialL", "d": format_rational(&self.d) })
    }
}

/// Verma module `M(𝕔,𝕕)` with basis `bᵏv`, `0 ≤ k ≤ b_cap`.
#[derive(Debug, Clone)]
pub struct VermaModule {
    pub c: Rational,
    pub d: Rational,
    pub b_cap: i64,
}

impl BaseModule for VermaModule {
    fn kind(&self) -> &'static str {
        "VermaM"
    }

    fn act(&self, tag: GeneratorTag, k: i64) -> Result<Vec<(i64, Rational)>> {
        let out = match tag {
            GeneratorTag::D => vec![(k, &self.d - rat(k))],
            GeneratorTag::C => vec![(k, self.c.clone())],
            GeneratorTag::B => {
                if k + 1 > self.b_cap {
                    return Err(NwError::TruncationOverflow(format!("b-power {} exceeds cap {}", k + 1, self.b_cap)));
                }
                vec![(k + 1, rat(1))]
            }
            // a bᵏ v = bᵏ a v + k bᵏ⁻¹ c v
            GeneratorTag::A if k > 0 => vec![(k - 1, rat(k) * &self.c)],
            GeneratorTag::A => vec![],
        };
        Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    fn d_weight(&self, k: i64) -> Rational {
        &self.d - rat(k)
    }

    fn c_value(&self) -> Rational {
        self.c.clone()
    }

    fn indices(&self) -> Vec<i64> {
        (0..=self.b_cap).collect()
    }

    fn indices_with_weight(&self, weight: &Rational) -> Vec<i64> {
        match to_integer(&(&self.d - weight)) {
            Some(k) if (0..=self.b_cap).contains(&k) => vec![k],
            _ => vec![],
        }
    }

    fn index_json(&self, k: i64) -> Value {
        json!({ "kind": "VermaM", "b_power": k })
    }

    fn parse_index(&self, value: &Value) -> Result<i64> {
        expect_kind(value, "VermaM")?;
        value
            .get("b_power")
            .and_then(Value::as_i64)
            .filter(|k| (0..=self.b_cap).contains(k))
            .ok_or_else(|| NwError::Parse(format!("bad VermaM base {value}")))
    }

    fn params_json(&self) -> Value {
        json!({ "kind": "VermaM", "c": format_rational(&self.c), "d": format_rational(&self.d) })
    }
}

/// Intermediate series `V(α,β,γ)` restricted to `|n| ≤ window`:
///
/// ```text
/// d vₙ = (α+n) vₙ,  c vₙ = β vₙ,  a vₙ = −β vₙ₊₁,  b vₙ = (α+γ+n) vₙ₋₁
/// ```
#[derive(Debug, Clone)]
pub struct IntermediateModule {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub window: i64,
}

impl IntermediateModule {
    fn shifted(&self, target: i64, coeff: Rational) -> Result<Vec<(i64, Rational)>> {
        if coeff.is_zero() {
            return Ok(vec![]);
        }
        if target.abs() > self.window {
            return Err(NwError::TruncationOverflow(format!("index {target} outside window {}", self.window)));
        }
        Ok(vec![(target, coeff)])
    }
}

impl BaseModule for IntermediateModule {
    fn kind(&self) -> &'static str {
        "Intermediate"
    }

    fn act(&self, tag: GeneratorTag, n: i64) -> Result<Vec<(i64, Rational)>> {
        match tag {
            GeneratorTag::D => self.shifted(n, &self.alpha + rat(n)),
            GeneratorTag::C => self.shifted(n, self.beta.clone()),
            GeneratorTag::A => self.shifted(n + 1, -self.beta.clone()),
            GeneratorTag::B => self.shifted(n - 1, &self.alpha + &self.gamma + rat(n)),
        }
    }

    fn d_weight(&self, n: i64) -> Rational {
        &self.alpha + rat(n)
    }

    fn c_value(&self) -> Rational {
        self.beta.clone()
    }

    fn indices(&self) -> Vec<i64> {
        (-self.window..=self.window).collect()
    }

    fn indices_with_weight(&self, weight: &Rational) -> Vec<i64> {
        match to_integer(&(weight - &self.alpha)) {
            Some(n) if n.abs() <= self.window => vec![n],
            _ => vec![],
        }
    }

    fn window(&self) -> Option<i64> {
        Some(self.window)
    }

    fn index_json(&self, n: i64) -> Value {
        json!({ "kind": "Intermediate", "n": n })
    }

    fn parse_index(&self, value: &Value) -> Result<i64> {
        expect_kind(value, "Intermediate")?;
        value
            .get("n")
            .and_then(Value::as_i64)
            .filter(|n| n.abs() <= self.window)
            .ok_or_else(|| NwError::Parse(format!("bad Intermediate base {value}")))
    }

    fn params_json(&self) -> Value {
        json!({
            "kind": "Intermediate",
            "alpha": format_rational(&self.alpha),
            "beta": format_rational(&self.beta),
            "gamma": format_rational(&self.gamma),
            "window": self.window,
        })
    }
}

fn expect_kind(value: &Value, kind: &str) -> Result<()> {
    match value.get("kind").and_then(Value::as_str) {
        Some(k) if k == kind => Ok(()),
        _ => Err(NwError::Parse(format!("expected base kind {kind}, got {value}"))),
    }
}

/// Parameters consumed by base-module factories. Each factory reads only
/// the fields it needs.
#[derive(Debug, Clone)]
pub struct BaseParams {
    pub c: Rational,
    pub d: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub b_cap: i64,
    pub window: i64,
}

impl Default for BaseParams {
    fn default() -> Self {
        Self {
            c: rat(0),
            d: rat(0),
            alpha: rat(0),
            beta: rat(0),
            gamma: rat(0),
            b_cap: 24,
            window: 8,
        }
    }
}

pub type BaseFactory = fn(&BaseParams) -> Result<Arc<dyn BaseModule>>;

#[derive(Clone)]
pub struct BaseRegistry {
    factories: BTreeMap<&'static str, BaseFactory>,
}

impl BaseRegistry {
    pub fn empty() -> Self {
        Self { factories: BTreeMap::new() }
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register("trivial", |p| Ok(Arc::new(TrivialModule { d: p.d.clone() })));
        reg.register("verma", |p| {
            if p.b_cap < 0 {
                return Err(NwError::InvalidParameter("b_cap must be non-negative".into()));
            }
            Ok(Arc::new(VermaModule { c: p.c.clone(), d: p.d.clone(), b_cap: p.b_cap }))
        });
        reg.register("intermediate", |p| {
            if p.window < 0 {
                return Err(NwError::InvalidParameter("window must be non-negative".into()));
            }
            Ok(Arc::new(IntermediateModule {
                alpha: p.alpha.clone(),
                beta: p.beta.clone(),
                gamma: p.gamma.clone(),
                window: p.window,
            }))
        });
        reg
    }

    pub fn register(&mut self, name: &'static str, factory: BaseFactory) {
        self.factories.insert(name, factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.factories.keys().copied()
    }

    pub fn create(&self, name: &str, params: &BaseParams) -> Result<Arc<dyn BaseModule>> {
        let factory = self
            .factories
            .get(name)
            .ok_or_else(|| NwError::InvalidParameter(format!("unknown base module {name:?}")))?;
        factory(params)
    }
}

impl Default for BaseRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn verma_a_lowers_b_power() {
        let m = VermaModule { c: rat(3), d: rat(0), b_cap: 8 };
        assert_eq!(m.act(GeneratorTag::A, 2).unwrap(), vec![(1, rat(6))]);
        assert_eq!(m.act(GeneratorTag::D, 2).unwrap(), vec![(2, rat(-2))]);
        assert!(m.act(GeneratorTag::A, 0).unwrap().is_empty());
        assert!(matches!(m.act(GeneratorTag::B, 8), Err(NwError::TruncationOverflow(_))));
    }

    #[test]
    fn intermediate_relations() {
        let v = IntermediateModule { alpha: ratio(1, 3), beta: rat(-1), gamma: ratio(1, 5), window: 3 };
        assert_eq!(v.act(GeneratorTag::B, 2).unwrap(), vec![(1, ratio(1, 3) + ratio(1, 5) + rat(2))]);
        assert_eq!(v.act(GeneratorTag::A, 0).unwrap(), vec![(1, rat(1))]);
        assert!(matches!(v.act(GeneratorTag::A, 3), Err(NwError::TruncationOverflow(_))));
    }

    #[test]
    fn trivial_module() {
        let t = TrivialModule { d: rat(5) };
        assert_eq!(t.act(GeneratorTag::D, 0).unwrap(), vec![(0, rat(5))]);
        assert!(t.act(GeneratorTag::A, 0).unwrap().is_empty());
    }

    #[test]
    fn registry_lookup() {
        let reg = BaseRegistry::builtin();
        assert_eq!(reg.names().collect::<Vec<_>>(), vec!["intermediate", "trivial", "verma"]);
        let m = reg.create("verma", &BaseParams { c: rat(2), ..Default::default() }).unwrap();
        assert_eq!(m.kind(), "VermaM");
        assert_eq!(m.c_value(), rat(2));
        assert!(reg.create("lowest", &BaseParams::default()).is_err());
    }

    /// [x, y] acts as the bracket on every base kind.
    #[test]
    fn base_modules_represent_h4() {
        use crate::algebra::finite_bracket;
        let kinds: Vec<Arc<dyn BaseModule>> = vec![
            Arc::new(TrivialModule { d: ratio(7, 2) }),
            Arc::new(VermaModule { c: ratio(-2, 3), d: rat(1), b_cap: 10 }),
            Arc::new(IntermediateModule { alpha: ratio(1, 3), beta: rat(-1), gamma: ratio(1, 5), window: 6 }),
        ];
        let apply = |m: &dyn BaseModule, t: GeneratorTag, v: &BTreeMap<i64, Rational>| {
            let mut out = BTreeMap::new();
            for (i, c) in v {
                for (j, d) in m.act(t, *i).unwrap() {
                    *out.entry(j).or_insert_with(Rational::zero) += c * d;
                }
            }
            out.retain(|_, c: &mut Rational| !c.is_zero());
            out
        };
        for m in &kinds {
            let start: Vec<i64> = m.indices().into_iter().filter(|i| i.abs() <= 3).collect();
            for idx in start {
                let v = BTreeMap::from([(idx, rat(1))]);
                for x in GeneratorTag::ALL {
                    for y in GeneratorTag::ALL {
                        let xy = apply(m.as_ref(), x, &apply(m.as_ref(), y, &v));
                        let yx = apply(m.as_ref(), y, &apply(m.as_ref(), x, &v));
                        let mut lhs = xy.clone();
                        for (k, c) in yx {
                            *lhs.entry(k).or_insert_with(Rational::zero) -= c;
                        }
                        lhs.retain(|_, c| !c.is_zero());
                        let rhs = match finite_bracket(x, y) {
                            Some((z, s)) => {
                                let mut r = apply(m.as_ref(), z, &v);
                                r.values_mut().for_each(|c| *c *= rat(s));
                                r
                            }
                            None => BTreeMap::new(),
                        };
                        assert_eq!(lhs, rhs, "{} [{x},{y}] on {idx}", m.kind());
                    }
                }
            }
        }
    }
}

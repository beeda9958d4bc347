//! JSON forms of algebra elements, module states and reports.
//!
//! Rationals are `"num/den"` strings. Documents are built as
//! `serde_json::Value`, whose maps keep keys sorted, so output is canonical.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{GeneratorTag, LieElement, LoopGenerator};
use crate::error::{NwError, Result};
use crate::lincomb::LinComb;
use crate::modules::{BaseModule, BasisVector, ModuleState};
use crate::pbw::{Monomial, UeaElement};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::singular::SingularReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieTermJson {
    pub gen: String,
    pub mode: i64,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieJson {
    pub terms: Vec<LieTermJson>,
    pub k: String,
}

pub type WordJson = Vec<(String, i64)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UeaTermJson {
    pub word: WordJson,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UeaJson {
    pub level: String,
    pub terms: Vec<UeaTermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateTermJson {
    pub word: WordJson,
    pub base: Value,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub terms: Vec<StateTermJson>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn word_json(word: &Monomial) -> WordJson {
    word.factors().iter().map(|g| (g.tag.symbol().to_string(), g.mode)).collect()
}

fn parse_word(word: &WordJson) -> Result<Vec<LoopGenerator>> {
    word.iter().map(|(t, m)| Ok(t.parse::<GeneratorTag>()?.at(*m))).collect()
}

pub fn lie_to_json(x: &LieElement) -> Value {
    to_value(&LieJson {
        terms: x
            .loop_terms
            .iter()
            .map(|(g, c)| LieTermJson { gen: g.tag.symbol().to_string(), mode: g.mode, coeff: format_rational(c) })
            .collect(),
        k: format_rational(&x.central),
    })
}

pub fn lie_from_json(v: &Value) -> Result<LieElement> {
    let dto: LieJson = serde_json::from_value(v.clone()).map_err(|e| NwError::Parse(e.to_string()))?;
    let mut out = LieElement::central(parse_rational(&dto.k)?);
    for t in &dto.terms {
        let g = t.gen.parse::<GeneratorTag>()?.at(t.mode);
        out.add_scaled(&LieElement::generator(g), &parse_rational(&t.coeff)?);
    }
    Ok(out)
}

pub fn uea_to_json(u: &UeaElement) -> Value {
    to_value(&UeaJson {
        level: format_rational(&u.level),
        terms: u.terms.iter().map(|(m, c)| UeaTermJson { word: word_json(m), coeff: format_rational(c) }).collect(),
    })
}

pub fn uea_from_json(v: &Value) -> Result<UeaElement> {
    let dto: UeaJson = serde_json::from_value(v.clone()).map_err(|e| NwError::Parse(e.to_string()))?;
    let level = parse_rational(&dto.level)?;
    let mut terms = LinComb::zero();
    for t in &dto.terms {
        let word = parse_word(&t.word)?;
        if !Monomial::is_sorted(&word) {
            return Err(NwError::Parse(format!("word {:?} is not in normal order", t.word)));
        }
        terms.add_term(Monomial::from_sorted(word), parse_rational(&t.coeff)?);
    }
    Ok(UeaElement { level, terms })
}

pub fn state_to_json(s: &ModuleState, base: &dyn BaseModule) -> Value {
    to_value(&StateJson {
        terms: s
            .iter()
            .map(|(b, c)| StateTermJson { word: word_json(&b.word), base: base.index_json(b.base), coeff: format_rational(c) })
            .collect(),
    })
}

pub fn state_from_json(v: &Value, base: &dyn BaseModule) -> Result<ModuleState> {
    let dto: StateJson = serde_json::from_value(v.clone()).map_err(|e| NwError::Parse(e.to_string()))?;
    let mut out = ModuleState::zero();
    for t in &dto.terms {
        let word = parse_word(&t.word)?;
        if !Monomial::is_sorted(&word) || word.iter().any(|g| g.mode >= 0) {
            return Err(NwError::Parse(format!("word {:?} is not a sorted negative-mode word", t.word)));
        }
        let b = BasisVector { word: Monomial::from_sorted(word), base: base.parse_index(&t.base)? };
        out.add_term(b, parse_rational(&t.coeff)?);
    }
    Ok(out)
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn report_to_json(r: &SingularReport, base: &dyn BaseModule) -> Value {
    serde_json::json!({
        "component": {
            "height": r.component.height,
            "dweight": r.component.d_weight.as_ref().map(rational_json).unwrap_or(Value::Null),
        },
        "kernel": r.kernel.iter().map(|s| state_to_json(s, base)).collect::<Vec<_>>(),
        "matched": r.matched,
    })
}

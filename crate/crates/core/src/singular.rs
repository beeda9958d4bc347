//! Singular vectors in truncated induced modules.
//!
//! A singular vector is a nonzero state annihilated by a raising set. The
//! solver stacks the matrices of every raising operator on one (bi)graded
//! component and takes the exact kernel. Closed forms are built from the
//! coefficient systems attached to `𝕔 = ∓mℓ` and compared with that kernel.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{GeneratorTag, LoopGenerator};
use crate::error::{NwError, Result};
use crate::linalg::{self, Coordinates, Matrix};
use crate::lincomb::LinComb;
use crate::modules::{BasisVector, InducedModule, ModuleState, RestrictedModule};
use crate::partition::{partitions_of, Partition};
use crate::rational::{rat, to_integer, Rational};

/// Chooses which operators count as raising.
pub trait RaisingScheme: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    /// Raising operators up to mode `max_mode`.
    fn operators(&self, max_mode: i64) -> Vec<LoopGenerator>;
}

fn positive_modes(max_mode: i64) -> Vec<LoopGenerator> {
    (1..=max_mode).flat_map(|n| GeneratorTag::ALL.map(|t| t.at(n))).collect()
}

/// All `x(n)` with `n ≥ 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardRaising;

impl RaisingScheme for StandardRaising {
    fn name(&self) -> &'static str {
        "standard"
    }

    fn operators(&self, max_mode: i64) -> Vec<LoopGenerator> {
        positive_modes(max_mode)
    }
}

/// Positive modes together with `a(0)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NewTriangularRaising;

impl RaisingScheme for NewTriangularRaising {
    fn name(&self) -> &'static str {
        "new"
    }

    fn operators(&self, max_mode: i64) -> Vec<LoopGenerator> {
        let mut ops = vec![GeneratorTag::A.at(0)];
        ops.extend(positive_modes(max_mode));
        ops
    }
}

#[derive(Clone, Default)]
pub struct RaisingRegistry {
    schemes: BTreeMap<&'static str, Arc<dyn RaisingScheme>>,
}

impl RaisingRegistry {
    pub fn builtin() -> Self {
        let mut r = Self::default();
        r.register(Arc::new(StandardRaising));
        r.register(Arc::new(NewTriangularRaising));
        r
    }

    pub fn register(&mut self, scheme: Arc<dyn RaisingScheme>) {
        self.schemes.insert(scheme.name(), scheme);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.schemes.keys().copied().collect()
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn RaisingScheme>> {
        self.schemes.get(name).cloned().ok_or_else(|| {
            NwError::InvalidParameter(format!("unknown grading `{name}` (known: {})", self.names().join(", ")))
        })
    }
}

/// A scheme together with the largest mode tested.
#[derive(Debug, Clone)]
pub struct RaisingSet {
    pub scheme: Arc<dyn RaisingScheme>,
    pub max_mode: i64,
}

impl RaisingSet {
    pub fn new(scheme: Arc<dyn RaisingScheme>, max_mode: i64) -> Self {
        Self { scheme, max_mode }
    }

    pub fn standard(max_mode: i64) -> Self {
        Self::new(Arc::new(StandardRaising), max_mode)
    }

    pub fn new_triangular(max_mode: i64) -> Self {
        Self::new(Arc::new(NewTriangularRaising), max_mode)
    }

    pub fn operators(&self) -> Vec<LoopGenerator> {
        self.scheme.operators(self.max_mode)
    }

    fn with_max_mode(&self, max_mode: i64) -> Self {
        Self { scheme: Arc::clone(&self.scheme), max_mode }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub height: usize,
    pub d_weight: Option<Rational>,
}

impl Component {
    pub fn graded(height: usize) -> Self {
        Self { height, d_weight: None }
    }

    pub fn bigraded(height: usize, d_weight: Rational) -> Self {
        Self { height, d_weight: Some(d_weight) }
    }
}

#[derive(Debug, Clone)]
pub struct SingularReport {
    pub component: Component,
    /// Reduced-echelon basis of the singular subspace.
    pub kernel: Vec<ModuleState>,
    /// Closed forms found inside the kernel, e.g. `PlusM:m=1,k=1`.
    pub matched: Vec<String>,
}

pub fn find_singular(module: &InducedModule, component: &Component, raising: &RaisingSet) -> Result<SingularReport> {
    if raising.max_mode < component.height as i64 {
        return Err(NwError::TruncationTooShallow { max_mode: raising.max_mode, height: component.height });
    }
    let basis = module.component_basis(component.height, component.d_weight.as_ref());
    let kernel = singular_subspace(module, &basis, &raising.operators())?;
    for s in &kernel {
        if !verify_singular(module, s, raising)? {
            return Err(NwError::InvalidParameter(format!("solver returned a non-singular state {s:?}")));
        }
    }
    let mut report = SingularReport { component: component.clone(), kernel, matched: Vec::new() };
    report.matched = match_closed_forms(module, &report);
    Ok(report)
}

fn singular_subspace(module: &InducedModule, basis: &[BasisVector], ops: &[LoopGenerator]) -> Result<Vec<ModuleState>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    // columns: one image per (operator, basis vector); rows: output coordinates
    let mut images: Vec<Vec<ModuleState>> = Vec::with_capacity(ops.len());
    for op in ops {
        images.push(basis.iter().map(|b| module.act_basis(*op, b)).collect::<Result<_>>()?);
    }
    let mut rows: Matrix = Vec::new();
    for per_op in &images {
        let coords = Coordinates::new(per_op);
        let mut block = vec![vec![Rational::zero(); basis.len()]; coords.len()];
        for (col, image) in per_op.iter().enumerate() {
            let dense = coords.dense(image).expect("coordinates cover every image");
            for (row, value) in dense.into_iter().enumerate() {
                block[row][col] = value;
            }
        }
        rows.extend(block);
    }
    let mut kernel = linalg::kernel(&rows, basis.len());
    linalg::rref(&mut kernel, basis.len());
    Ok(kernel
        .into_iter()
        .map(|v| basis.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect())
        .collect())
}

/// Whether every raising operator kills `s`. Zero is not singular.
pub fn verify_singular(module: &InducedModule, s: &ModuleState, raising: &RaisingSet) -> Result<bool> {
    if s.is_zero() {
        return Ok(false);
    }
    for op in raising.operators() {
        if !module.act(op, s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedFormCase {
    /// `𝕔 = −mℓ`, built from `c(−λ)b` and `c(−μ)b(−p)`.
    PlusM,
    /// `𝕔 = mℓ`, built from `c(−μ)a(−p)`.
    MinusM,
}

impl ClosedFormCase {
    /// d-weight shift of one application of the operator.
    pub fn weight_step(self) -> i64 {
        match self {
            ClosedFormCase::PlusM => -1,
            ClosedFormCase::MinusM => 1,
        }
    }

    /// The value of `𝕔` this case requires.
    pub fn required_c(self, m: usize, level: &Rational) -> Rational {
        rat(self.weight_step() * m as i64) * level
    }
}

impl fmt::Display for ClosedFormCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosedFormCase::PlusM => "PlusM",
            ClosedFormCase::MinusM => "MinusM",
        })
    }
}

impl FromStr for ClosedFormCase {
    type Err = NwError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "PlusM" | "plus" => Ok(ClosedFormCase::PlusM),
            "MinusM" | "minus" => Ok(ClosedFormCase::MinusM),
            _ => Err(NwError::Parse(format!("unknown closed-form case `{s}`"))),
        }
    }
}

/// An unknown of a coefficient system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unknown {
    /// Coefficient of `c(−λ)b(0)`.
    Lambda(Partition),
    /// Coefficient of `c(−μ)b(−p)` (or `c(−μ)a(−p)`).
    Split(Partition, usize),
}

impl Unknown {
    fn word(&self, case: ClosedFormCase) -> Vec<LoopGenerator> {
        let c_part = |p: &Partition| p.parts().iter().map(|&n| GeneratorTag::C.at(-(n as i64))).collect::<Vec<_>>();
        match self {
            Unknown::Lambda(lambda) => {
                let mut w = c_part(lambda);
                w.push(GeneratorTag::B.at(0));
                w
            }
            Unknown::Split(mu, p) => {
                let mut w = c_part(mu);
                let tag = match case {
                    ClosedFormCase::PlusM => GeneratorTag::B,
                    ClosedFormCase::MinusM => GeneratorTag::A,
                };
                w.push(tag.at(-(*p as i64)));
                w
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoefficientSolution {
    pub case: ClosedFormCase,
    pub m: usize,
    pub coefficients: Vec<(Unknown, Rational)>,
}

impl CoefficientSolution {
    pub fn get(&self, unknown: &Unknown) -> Rational {
        self.coefficients.iter().find(|(u, _)| u == unknown).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// The operator as a sum of words, factors in product order.
    pub fn operator(&self) -> Vec<(Vec<LoopGenerator>, Rational)> {
        self.coefficients
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(u, c)| (u.word(self.case), c.clone()))
            .collect()
    }
}

fn unknowns(case: ClosedFormCase, m: usize) -> Vec<Unknown> {
    let lambdas = partitions_of(m);
    let mut out = Vec::new();
    if case == ClosedFormCase::PlusM {
        out.extend(lambdas.iter().cloned().map(Unknown::Lambda));
    }
    for lambda in &lambdas {
        for (p, _) in lambda.multiplicities() {
            let u = Unknown::Split(lambda.remove(p).expect("part occurs"), p);
            if !out.contains(&u) {
                out.push(u);
            }
        }
    }
    out
}

/// `(λ∖pᵢ∖pⱼ, pᵢ+pⱼ)` over distinct parts `pⱼ` still present in `λ∖pᵢ`.
fn merged_splits(lambda: &Partition, pi: usize, skip_same: bool) -> Vec<Unknown> {
    let rest = lambda.remove(pi).expect("part occurs");
    rest.multiplicities()
        .into_iter()
        .filter(|&(pj, _)| !(skip_same && pj == pi))
        .map(|(pj, _)| Unknown::Split(rest.remove(pj).expect("part occurs"), pi + pj))
        .collect()
}

/// Solves the coefficient system for `case` at weight `m`, with the
/// c-eigenvalue `c_value` (usually `∓mℓ`). The solution must be unique up
/// to scale; it is normalized so its first nonzero coefficient is 1.
pub fn solve_coefficients(case: ClosedFormCase, m: usize, level: &Rational, c_value: &Rational) -> Result<CoefficientSolution> {
    if m == 0 {
        return Err(NwError::InvalidParameter("m must be positive".into()));
    }
    let vars = unknowns(case, m);
    let col = |u: &Unknown| vars.iter().position(|v| v == u).expect("unknown registered");
    let mut rows: Matrix = Vec::new();
    let new_row = || vec![Rational::zero(); vars.len()];
    for lambda in partitions_of(m) {
        let parts = lambda.multiplicities();
        match case {
            ClosedFormCase::PlusM => {
                let a = col(&Unknown::Lambda(lambda.clone()));
                let mut sum_row = new_row();
                sum_row[a] += c_value;
                for &(p, q) in &parts {
                    let split = col(&Unknown::Split(lambda.remove(p).expect("part occurs"), p));
                    let mut r = new_row();
                    r[a] += rat((q * p) as i64) * level;
                    r[split] -= rat(1);
                    rows.push(r);
                    sum_row[split] += rat(1);
                    let mut r = new_row();
                    r[split] += c_value + rat(p as i64) * level;
                    for u in merged_splits(&lambda, p, false) {
                        r[col(&u)] += rat(1);
                    }
                    rows.push(r);
                }
                rows.push(sum_row);
            }
            ClosedFormCase::MinusM => {
                for &(pi, qi) in &parts {
                    for &(pj, _) in parts.iter().filter(|(pj, _)| *pj != pi) {
                        let mut r = new_row();
                        r[col(&Unknown::Split(lambda.remove(pj).expect("part occurs"), pj))] +=
                            rat((qi * pi) as i64) * level;
                        let both = lambda.remove(pi).and_then(|l| l.remove(pj)).expect("parts occur");
                        r[col(&Unknown::Split(both, pi + pj))] += rat(1);
                        rows.push(r);
                    }
                    let mut r = new_row();
                    r[col(&Unknown::Split(lambda.remove(pi).expect("part occurs"), pi))] +=
                        -c_value + rat(pi as i64) * level;
                    for u in merged_splits(&lambda, pi, false) {
                        r[col(&u)] -= rat(1);
                    }
                    rows.push(r);
                }
            }
        }
    }
    let kernel = linalg::kernel(&rows, vars.len());
    if kernel.len() != 1 {
        return Err(NwError::DegenerateSystem { dim: kernel.len() });
    }
    let mut v = kernel.into_iter().next().expect("one vector");
    let lead = v.iter().find(|c| !c.is_zero()).cloned().expect("kernel vector is nonzero");
    for c in v.iter_mut() {
        *c /= &lead;
    }
    Ok(CoefficientSolution { case, m, coefficients: vars.into_iter().zip(v).collect() })
}

fn check_case(case: ClosedFormCase, m: usize, level: &Rational, c_value: &Rational) -> Result<()> {
    if level.is_zero() {
        return Err(NwError::ZeroLevel);
    }
    let required = case.required_c(m, level);
    if *c_value != required {
        return Err(NwError::ParameterMismatch(format!(
            "{case} with m={m} needs c-eigenvalue {required}, module has {c_value}"
        )));
    }
    Ok(())
}

/// `X^k` applied to the generating vector, where `X` is the closed-form
/// operator for `case` and `m`; the c-eigenvalue is read from the base.
pub fn closed_form_singular(module: &InducedModule, case: ClosedFormCase, m: usize, k: usize) -> Result<ModuleState> {
    let c_value = module.base().c_value();
    check_case(case, m, module.level(), &c_value)?;
    let solution = solve_coefficients(case, m, module.level(), &c_value)?;
    let op = solution.operator();
    let mut s = module.highest_state();
    for _ in 0..k {
        let mut next = ModuleState::zero();
        for (word, coeff) in &op {
            next.add_scaled(&module.apply_word(word, &s)?, coeff);
        }
        s = next;
    }
    Ok(s)
}

/// `c(−λ)` applied to the generating vector.
pub fn c_lambda_state(module: &InducedModule, lambda: &Partition) -> Result<ModuleState> {
    let word: Vec<LoopGenerator> = lambda.parts().iter().map(|&n| GeneratorTag::C.at(-(n as i64))).collect();
    module.apply_word(&word, &module.highest_state())
}

/// Positive integer `m` with `c = ∓mℓ` for `case`, if any.
fn case_multiple(case: ClosedFormCase, level: &Rational, c_value: &Rational) -> Option<usize> {
    if level.is_zero() {
        return None;
    }
    let m = to_integer(&(c_value / level * rat(case.weight_step())))?;
    usize::try_from(m).ok().filter(|&m| m > 0)
}

/// Identifiers of the closed forms lying in the report's kernel.
pub fn match_closed_forms(module: &InducedModule, report: &SingularReport) -> Vec<String> {
    let mut out = Vec::new();
    if report.kernel.is_empty() || report.component.height == 0 {
        return out;
    }
    let h = report.component.height;
    let top = module.base().d_weight(module.base().highest_index());
    let c_value = module.base().c_value();
    for case in [ClosedFormCase::PlusM, ClosedFormCase::MinusM] {
        let Some(m) = case_multiple(case, module.level(), &c_value) else { continue };
        if h % m != 0 {
            continue;
        }
        let k = h / m;
        let weight = &top + rat(case.weight_step() * k as i64);
        if report.component.d_weight.as_ref().is_some_and(|w| *w != weight) {
            continue;
        }
        if let Ok(s) = closed_form_singular(module, case, m, k) {
            if !s.is_zero() && linalg::in_span(&report.kernel, &s) {
                out.push(format!("{case}:m={m},k={k}"));
            }
        }
    }
    if module.level().is_zero() && report.component.d_weight.as_ref().is_none_or(|w| *w == top) {
        for lambda in partitions_of(h) {
            if let Ok(s) = c_lambda_state(module, &lambda) {
                if linalg::in_span(&report.kernel, &s) {
                    out.push(format!("ZeroLevel:lambda={lambda}"));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub enum ProbeVerdict {
    NoSingularUpTo(usize),
    Found(Vec<SingularReport>),
}

impl ProbeVerdict {
    pub fn is_irreducible_up_to_truncation(&self) -> bool {
        matches!(self, ProbeVerdict::NoSingularUpTo(_))
    }
}

/// Components swept by the probe at `height`: the whole height space for the
/// trivial base, otherwise each d-weight from `𝕕 − 2h` to `𝕕 + h`.
pub fn probe_components(module: &InducedModule, height: usize) -> Vec<Component> {
    let base = module.base();
    if base.kind() == "TrivialL" {
        return vec![Component::graded(height)];
    }
    let top = base.d_weight(base.highest_index());
    let h = height as i64;
    (-2 * h..=h).rev().map(|j| Component::bigraded(height, &top + rat(j))).collect()
}

/// Sweeps all components of height `1..=max_height`; `raising.max_mode` is
/// raised to the component height where needed.
pub fn irreducibility_probe(module: &InducedModule, max_height: usize, raising: &RaisingSet) -> Result<ProbeVerdict> {
    if max_height > module.depth() {
        return Err(NwError::InvalidParameter(format!(
            "probe height {max_height} exceeds module depth {}",
            module.depth()
        )));
    }
    let components: Vec<Component> = (1..=max_height).flat_map(|h| probe_components(module, h)).collect();
    let reports = components
        .par_iter()
        .map(|c| find_singular(module, c, &raising.with_max_mode(raising.max_mode.max(c.height as i64))))
        .collect::<Result<Vec<_>>>()?;
    let found: Vec<SingularReport> = reports.into_iter().filter(|r| !r.kernel.is_empty()).collect();
    if found.is_empty() {
        Ok(ProbeVerdict::NoSingularUpTo(max_height))
    } else {
        Ok(ProbeVerdict::Found(found))
    }
}

/// The families of generators over an intermediate-series base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopCase {
    /// `β + mℓ = 0`.
    Plus { m: usize },
    /// `β − mℓ = 0`.
    Minus { m: usize },
    /// `ℓ = 0`: the vectors `c(−λ)v₀`.
    ZeroLevel { lambda: Partition },
}

#[derive(Debug, Clone)]
pub struct CertifiedVector {
    pub label: String,
    pub state: ModuleState,
    /// Largest positive mode checked.
    pub max_mode: i64,
    pub annihilated: bool,
}

/// The stated generators for `case`, each checked against `x(n)` for
/// `1 ≤ n ≤ max(height, 2)`. Powers `k` run while `mk` fits in the depth.
pub fn loop_singular_generators(module: &InducedModule, case: &LoopCase) -> Result<Vec<CertifiedVector>> {
    let beta = module.base().c_value();
    let candidates: Vec<(String, ModuleState)> = match case {
        LoopCase::Plus { m } | LoopCase::Minus { m } => {
            let cf = if matches!(case, LoopCase::Plus { .. }) { ClosedFormCase::PlusM } else { ClosedFormCase::MinusM };
            check_case(cf, *m, module.level(), &beta)?;
            (1..=(module.depth() / m).max(1))
                .map(|k| Ok((format!("{cf}:m={m},k={k}"), closed_form_singular(module, cf, *m, k)?)))
                .collect::<Result<_>>()?
        }
        LoopCase::ZeroLevel { lambda } => {
            if !module.level().is_zero() {
                return Err(NwError::ParameterMismatch(format!("c(−λ) family needs level 0, got {}", module.level())));
            }
            vec![(format!("ZeroLevel:lambda={lambda}"), c_lambda_state(module, lambda)?)]
        }
    };
    candidates
        .into_iter()
        .map(|(label, state)| {
            let max_mode = module.max_degree(&state).max(2);
            let annihilated = verify_singular(module, &state, &RaisingSet::standard(max_mode))?;
            Ok(CertifiedVector { label, state, max_mode, annihilated })
        })
        .collect()
}

/// Certifies that `u` generates a proper submodule at truncation: `u` is
/// homogeneous of positive height and killed by positive modes, so
/// everything it generates is reached by non-positive modes and sits at
/// height `≥ ht(u)`; the generating vector (height 0) is then outside. The
/// returned witness is checked against the span of `u` and its images under
/// every single mode-0 or negative-mode generator that fits in the depth.
pub fn properness_witness(module: &InducedModule, u: &ModuleState) -> Result<Option<ModuleState>> {
    let heights: Vec<i64> = u.keys().map(|b| b.word.height()).collect();
    let h = match heights.first() {
        Some(&h) if h > 0 && heights.iter().all(|&x| x == h) => h,
        _ => return Ok(None),
    };
    if !verify_singular(module, u, &RaisingSet::standard(h.max(1)))? {
        return Ok(None);
    }
    let mut span = vec![u.clone()];
    for n in 0..=(module.depth() as i64 - h) {
        for tag in GeneratorTag::ALL {
            match module.act(tag.at(-n), u) {
                Ok(s) if !s.is_zero() => span.push(s),
                Ok(_) | Err(NwError::TruncationOverflow(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let witness = module.highest_state();
    if span.iter().any(|s| s.keys().any(|b| b.word.height() < h)) || linalg::in_span(&span, &witness) {
        return Ok(None);
    }
    Ok(Some(witness))
}

/// Rescales `s` so its first coefficient is 1.
pub fn normalized(s: &ModuleState) -> ModuleState {
    match s.first() {
        Some((_, lead)) => s.scaled(&(Rational::one() / lead)),
        None => s.clone(),
    }
}

/// Whether two states agree up to a nonzero scalar.
pub fn proportional<K: Ord + Clone>(x: &LinComb<K>, y: &LinComb<K>) -> bool {
    match (x.first(), y.first()) {
        (Some((kx, cx)), Some((ky, cy))) if kx == ky => x.scaled(&(Rational::one() / cx)) == y.scaled(&(Rational::one() / cy)),
        (None, None) => true,
        _ => false,
    }
}

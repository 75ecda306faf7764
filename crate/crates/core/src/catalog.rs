//! Resonant 3-soliton solutions: constraint branches, phase-shift parameters
//! and the term template of every case.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tau::{ExpSumTau, ExpTerm, Point};

/// Relative size below which a numerator or denominator of `a_ij` counts as zero.
pub const RESONANCE_TOL: f64 = 1e-12;

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseId {
    C2_1,
    C2_2,
    C2_3,
    C2_4,
    W2,
    M2,
    C3_1,
    C3_2,
    Generic,
}

impl CaseId {
    pub const RESONANT: [CaseId; 8] =
        [CaseId::C2_1, CaseId::C2_2, CaseId::C2_3, CaseId::C2_4, CaseId::W2, CaseId::M2, CaseId::C3_1, CaseId::C3_2];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseId::C2_1 => "c2_1",
            CaseId::C2_2 => "c2_2",
            CaseId::C2_3 => "c2_3",
            CaseId::C2_4 => "c2_4",
            CaseId::W2 => "w2",
            CaseId::M2 => "m2",
            CaseId::C3_1 => "c3_1",
            CaseId::C3_2 => "c3_2",
            CaseId::Generic => "generic",
        }
    }

    pub fn is_strong_two(&self) -> bool {
        matches!(self, CaseId::C2_1 | CaseId::C2_2 | CaseId::C2_3 | CaseId::C2_4)
    }

    /// Whether the template keeps a finite `a_12`.
    pub fn has_a12(&self) -> bool {
        self.is_strong_two() || matches!(self, CaseId::W2 | CaseId::M2)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        CaseId::RESONANT
            .iter()
            .chain(std::iter::once(&CaseId::Generic))
            .find(|c| c.as_str() == lower)
            .copied()
            .ok_or_else(|| Error::UnsupportedCase(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseSpec {
    pub case: CaseId,
    pub branch: Branch,
}

impl CaseSpec {
    pub const fn new(case: CaseId, branch: Branch) -> Self {
        Self { case, branch }
    }

    pub const fn first(case: CaseId) -> Self {
        Self::new(case, Branch::First)
    }
}

/// Free parameters before the case constraints fix `p_1` and `p_2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawParams {
    pub k: [f64; 3],
    pub p3: f64,
    pub xi0: [f64; 3],
}

impl RawParams {
    pub const fn new(k: [f64; 3], p3: f64) -> Self {
        Self { k, p3, xi0: [0.0; 3] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolitonParams {
    pub k: [f64; 3],
    pub p: [f64; 3],
    pub xi0: [f64; 3],
}

impl SolitonParams {
    pub fn omega(&self) -> [f64; 3] {
        [0, 1, 2].map(|j| omega_unchecked(self.k[j], self.p[j]))
    }

    /// `ξ_j` at a point.
    pub fn phases(&self, pt: Point) -> [f64; 3] {
        let w = self.omega();
        [0, 1, 2].map(|j| self.k[j] * pt.x + self.p[j] * pt.y + w[j] * pt.t + self.xi0[j])
    }
}

fn omega_unchecked(k: f64, p: f64) -> f64 {
    -(k.powi(4) + 3.0 * p * p) / k
}

/// Dispersion relation `ω = −(k⁴ + 3p²)/k`.
pub fn omega(k: f64, p: f64) -> Result<f64> {
    if k == 0.0 {
        return Err(Error::DegenerateParameter("k = 0 in omega".into()));
    }
    Ok(omega_unchecked(k, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PhaseShift {
    Finite(f64),
    Infinite,
}

impl PhaseShift {
    pub fn finite(&self) -> Option<f64> {
        match self {
            PhaseShift::Finite(v) => Some(*v),
            PhaseShift::Infinite => None,
        }
    }
}

/// Numerator and denominator of `a_ij`, factored to limit cancellation.
pub fn phase_shift_parts(ki: f64, pi: f64, kj: f64, pj: f64) -> (f64, f64) {
    let q = kj * pi - ki * pj;
    let minus = ki * kj * (ki - kj);
    let plus = ki * kj * (ki + kj);
    ((minus - q) * (minus + q), (plus - q) * (plus + q))
}

/// Phase-shift parameter `a_ij` of the generic 3-soliton tau.
pub fn phase_shift_param(ki: f64, pi: f64, kj: f64, pj: f64) -> Result<PhaseShift> {
    if ki == 0.0 || kj == 0.0 {
        return Err(Error::DegenerateParameter("k = 0 in phase shift".into()));
    }
    let (num, den) = phase_shift_parts(ki, pi, kj, pj);
    let q = kj * pi - ki * pj;
    let scale = (ki * kj).powi(2) * (ki.abs() + kj.abs()).powi(2) + q * q;
    let num_zero = num.abs() <= RESONANCE_TOL * scale;
    let den_zero = den.abs() <= RESONANCE_TOL * scale;
    match (num_zero, den_zero) {
        (true, true) => Err(Error::IndeterminateResonance(0, 0)),
        (false, true) => Ok(PhaseShift::Infinite),
        (true, false) => Ok(PhaseShift::Finite(0.0)),
        (false, false) => {
            let a = num / den;
            if a < 0.0 {
                Err(Error::InadmissibleParameter(format!("a_ij = {a} < 0")))
            } else {
                Ok(PhaseShift::Finite(a))
            }
        }
    }
}

fn pair_shift(params: &SolitonParams, i: usize, j: usize) -> Result<PhaseShift> {
    phase_shift_param(params.k[i], params.p[i], params.k[j], params.p[j]).map_err(|e| match e {
        Error::IndeterminateResonance(..) => Error::IndeterminateResonance(i + 1, j + 1),
        other => other,
    })
}

/// `(p_1, p_2)` on the FIRST constraint branch.
fn first_branch(case: CaseId, k: [f64; 3], p3: f64) -> (f64, f64) {
    let [k1, k2, k3] = k;
    let s = k3 * k3;
    match case {
        CaseId::C2_1 | CaseId::C2_2 | CaseId::C2_3 | CaseId::C2_4 => {
            (k1 * (k1 * k3 + s + p3) / k3, -k2 * (k2 * k3 + s - p3) / k3)
        }
        CaseId::W2 => (-k1 * (k1 * k3 - s - p3) / k3, k2 * (k2 * k3 - s + p3) / k3),
        CaseId::M2 => (k1 * (k1 * k3 + s + p3) / k3, k2 * (k2 * k3 - s + p3) / k3),
        CaseId::C3_1 => (-k1 * (k1 * k3 - s - p3) / k3, -k2 * (k2 * k3 - s - p3) / k3),
        CaseId::C3_2 => (-k1 * (k1 * k3 + s - p3) / k3, -k2 * (k2 * k3 + s - p3) / k3),
        CaseId::Generic => unreachable!("generic parameters are explicit"),
    }
}

/// `(p_1, p_2)` on the SECOND constraint branch.
fn second_branch(case: CaseId, k: [f64; 3], p3: f64) -> (f64, f64) {
    let [k1, k2, k3] = k;
    let s = k3 * k3;
    match case {
        CaseId::C2_1 | CaseId::C2_2 | CaseId::C2_3 | CaseId::C2_4 => {
            (-k1 * (k1 * k3 + s - p3) / k3, k2 * (k2 * k3 + s + p3) / k3)
        }
        CaseId::W2 => (k1 * (k1 * k3 - s + p3) / k3, -k2 * (k2 * k3 - s - p3) / k3),
        CaseId::M2 => (-k1 * (k1 * k3 + s - p3) / k3, -k2 * (k2 * k3 - s - p3) / k3),
        CaseId::C3_1 => (k1 * (k1 * k3 - s + p3) / k3, k2 * (k2 * k3 - s + p3) / k3),
        CaseId::C3_2 => (k1 * (k1 * k3 + s + p3) / k3, k2 * (k2 * k3 + s + p3) / k3),
        CaseId::Generic => unreachable!("generic parameters are explicit"),
    }
}

/// Closed form of the surviving `a_12`, with its denominator.
fn a12_parts(case: CaseId, k: [f64; 3]) -> Option<(f64, f64)> {
    let [k1, k2, k3] = k;
    match case {
        c if c.is_strong_two() => Some(((k1 + k3) * (k2 + k3), k3 * (k1 + k2 + k3))),
        CaseId::W2 => Some((-(k1 - k3) * (k2 - k3), k3 * (k1 + k2 - k3))),
        CaseId::M2 => Some((-k3 * (k1 - k2 + k3), (k1 + k3) * (k2 - k3))),
        _ => None,
    }
}

/// The case's closed-form `a_12`, if the template keeps one.
pub fn a12_closed_form(case: CaseId, k: [f64; 3]) -> Option<f64> {
    a12_parts(case, k).map(|(n, d)| n / d)
}

fn check_k(k: &[f64; 3]) -> Result<()> {
    for (j, kj) in k.iter().enumerate() {
        if !kj.is_finite() {
            return Err(Error::Domain(format!("k_{}", j + 1)));
        }
        if *kj == 0.0 {
            return Err(Error::DegenerateParameter(format!("k_{} = 0", j + 1)));
        }
    }
    Ok(())
}

/// Fills `p_1, p_2` from the case constraint and checks `0 < a_12 < ∞`.
pub fn resolve_constraints(raw: &RawParams, spec: CaseSpec) -> Result<SolitonParams> {
    if spec.case == CaseId::Generic {
        return Err(Error::UnsupportedCase("generic parameters are explicit; use make_generic".into()));
    }
    check_k(&raw.k)?;
    if !raw.p3.is_finite() || raw.xi0.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("p3 or xi0".into()));
    }
    let (p1, p2) = match spec.branch {
        Branch::First => first_branch(spec.case, raw.k, raw.p3),
        Branch::Second => second_branch(spec.case, raw.k, raw.p3),
    };
    if let Some((num, den)) = a12_parts(spec.case, raw.k) {
        if den == 0.0 {
            return Err(Error::DegenerateParameter("zero denominator in a_12".into()));
        }
        let a12 = num / den;
        if a12 <= 0.0 || !a12.is_finite() {
            let rule = match spec.case {
                CaseId::W2 => "k3 (k1 - k3)(k2 - k3)(k1 + k2 - k3) < 0",
                CaseId::M2 => "-k3 (k1 - k2 + k3) / ((k1 + k3)(k2 - k3)) > 0",
                _ => "(k1 + k3)(k2 + k3) / (k3 (k1 + k2 + k3)) > 0",
            };
            return Err(Error::InadmissibleParameter(format!("a_12 = {a12} violates 0 < a_12 < inf ({rule})")));
        }
    }
    Ok(SolitonParams { k: raw.k, p: [p1, p2, raw.p3], xi0: raw.xi0 })
}

/// Explicit parameters for the generic (non-resonant) 3-soliton.
pub fn make_generic(k: [f64; 3], p: [f64; 3], xi0: [f64; 3]) -> Result<SolitonParams> {
    check_k(&k)?;
    if p.iter().chain(xi0.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Domain("p or xi0".into()));
    }
    Ok(SolitonParams { k, p, xi0 })
}

/// Pair interaction types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ResonanceKind {
    Elastic,
    Strong,
    Weak,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceClass {
    /// Kinds of the pairs (1,2), (1,3), (2,3).
    pub pairs: [ResonanceKind; 3],
    pub a12: Option<f64>,
}

impl ResonanceClass {
    pub const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

    pub fn pair(&self, i: usize, j: usize) -> ResonanceKind {
        let n = Self::PAIRS.iter().position(|&p| p == (i.min(j), i.max(j))).expect("pair index");
        self.pairs[n]
    }

    /// Overall kind: MIXED when strong and weak pairs coexist.
    pub fn overall(&self) -> ResonanceKind {
        let strong = self.pairs.contains(&ResonanceKind::Strong);
        let weak = self.pairs.contains(&ResonanceKind::Weak);
        match (strong, weak) {
            (true, true) => ResonanceKind::Mixed,
            (true, false) => ResonanceKind::Strong,
            (false, true) => ResonanceKind::Weak,
            (false, false) => ResonanceKind::Elastic,
        }
    }
}

/// Per-pair kinds of each case, in the order (1,2), (1,3), (2,3).
pub fn declared_kinds(case: CaseId) -> Option<[ResonanceKind; 3]> {
    use ResonanceKind::*;
    Some(match case {
        c if c.is_strong_two() => [Elastic, Strong, Strong],
        CaseId::W2 => [Elastic, Weak, Weak],
        CaseId::M2 => [Elastic, Strong, Weak],
        CaseId::C3_1 => [Weak, Weak, Weak],
        CaseId::C3_2 => [Weak, Strong, Strong],
        _ => return None,
    })
}

pub fn classify_resonance(params: &SolitonParams, spec: CaseSpec) -> Result<ResonanceClass> {
    let pairs = match declared_kinds(spec.case) {
        Some(kinds) => kinds,
        None => {
            let mut kinds = [ResonanceKind::Elastic; 3];
            for (n, (i, j)) in ResonanceClass::PAIRS.iter().enumerate() {
                kinds[n] = match pair_shift(params, i - 1, j - 1)? {
                    PhaseShift::Infinite => ResonanceKind::Strong,
                    PhaseShift::Finite(0.0) => ResonanceKind::Weak,
                    PhaseShift::Finite(_) => ResonanceKind::Elastic,
                };
            }
            kinds
        }
    };
    let a12 = if spec.case.has_a12() {
        a12_closed_form(spec.case, params.k)
    } else if spec.case == CaseId::Generic {
        pair_shift(params, 0, 1)?.finite()
    } else {
        None
    };
    Ok(ResonanceClass { pairs, a12 })
}

/// One tau term `c · exp(Σ_{j∈mask} ξ_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemplateTerm {
    /// Bit `j` set when `ξ_{j+1}` appears in the exponent.
    pub mask: u8,
    pub coeff: f64,
    /// Power of `a_12` carried by the coefficient.
    pub a12_power: u8,
}

impl TemplateTerm {
    pub fn indices(&self) -> Vec<usize> {
        (0..3).filter(|j| self.mask & (1 << j) != 0).map(|j| j + 1).collect()
    }

    pub fn name(&self) -> String {
        let e = if self.mask == 0 {
            "1".to_string()
        } else {
            format!("e{}", self.indices().iter().map(|j| j.to_string()).collect::<String>())
        };
        if self.a12_power > 0 {
            format!("a12*{e}")
        } else {
            e
        }
    }
}

/// `(mask, a_12 power)` of each template term.
pub fn template_masks(case: CaseId) -> &'static [(u8, u8)] {
    match case {
        CaseId::C2_1 => &[(0, 0), (1, 0), (2, 0), (3, 1), (7, 1)],
        CaseId::C2_2 => &[(0, 0), (2, 0), (6, 0), (7, 1)],
        CaseId::C2_3 => &[(0, 0), (1, 0), (5, 0), (7, 1)],
        CaseId::C2_4 => &[(0, 0), (4, 0), (5, 0), (6, 0), (7, 1)],
        CaseId::W2 => &[(0, 0), (1, 0), (2, 0), (4, 0), (3, 1)],
        CaseId::M2 => &[(0, 0), (1, 0), (2, 0), (3, 1), (5, 0)],
        CaseId::C3_1 => &[(0, 0), (1, 0), (2, 0), (4, 0)],
        CaseId::C3_2 => &[(0, 0), (4, 0), (5, 0), (6, 0)],
        CaseId::Generic => &[(0, 0), (1, 0), (2, 0), (4, 0), (3, 0), (5, 0), (6, 0), (7, 0)],
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonantSolution {
    pub params: SolitonParams,
    pub spec: CaseSpec,
    pub tau: ExpSumTau,
    pub resonance: ResonanceClass,
    pub template: Vec<TemplateTerm>,
}

impl ResonantSolution {
    pub fn u(&self, pt: Point) -> Result<f64> {
        self.tau.u(pt)
    }

    pub fn a12(&self) -> Option<f64> {
        self.resonance.a12
    }

    /// `ln a_12`, zero when the template carries no `a_12`.
    pub fn ln_a12(&self) -> f64 {
        match (self.spec.case.has_a12(), self.resonance.a12) {
            (true, Some(a)) => a.ln(),
            _ => 0.0,
        }
    }

    /// Exponent data `(K, P, Ω, ln c + Σξ⁰)` of a template term.
    pub fn term_exponent(&self, term: &TemplateTerm) -> [f64; 4] {
        let w = self.params.omega();
        let mut out = [0.0, 0.0, 0.0, term.coeff.ln()];
        for j in 0..3 {
            if term.mask & (1 << j) != 0 {
                out[0] += self.params.k[j];
                out[1] += self.params.p[j];
                out[2] += w[j];
                out[3] += self.params.xi0[j];
            }
        }
        out
    }
}

/// Builds the case's tau from resolved parameters.
pub fn build_solution(params: &SolitonParams, spec: CaseSpec) -> Result<ResonantSolution> {
    check_k(&params.k)?;
    let resonance = classify_resonance(params, spec)?;
    let coeff_of = |mask: u8, a12_power: u8| -> Result<f64> {
        if spec.case != CaseId::Generic {
            let a12 = resonance.a12.unwrap_or(1.0);
            return Ok(a12.powi(a12_power as i32));
        }
        let mut c = 1.0;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if mask & (1 << i) != 0 && mask & (1 << j) != 0 {
                match pair_shift(params, i, j)? {
                    PhaseShift::Finite(a) => c *= a,
                    PhaseShift::Infinite => {
                        return Err(Error::InadmissibleParameter(format!("generic a_{}{} is infinite", i + 1, j + 1)))
                    }
                }
            }
        }
        Ok(c)
    };
    let mut template = Vec::new();
    for &(mask, a12_power) in template_masks(spec.case) {
        let coeff = coeff_of(mask, a12_power)?;
        template.push(TemplateTerm { mask, coeff, a12_power });
    }
    let w = params.omega();
    let terms = template
        .iter()
        .map(|t| {
            let mut term = ExpTerm::constant(t.coeff);
            for j in 0..3 {
                if t.mask & (1 << j) != 0 {
                    term.kx += params.k[j];
                    term.py += params.p[j];
                    term.wt += w[j];
                    term.phase += params.xi0[j];
                }
            }
            term
        })
        .collect();
    let tau = ExpSumTau::new(terms)?;
    Ok(ResonantSolution { params: *params, spec, tau, resonance, template })
}

/// Resolves and builds in one step.
pub fn solution(raw: &RawParams, spec: CaseSpec) -> Result<ResonantSolution> {
    let params = resolve_constraints(raw, spec)?;
    build_solution(&params, spec)
}

/// Named parameter sets reproducing the reference configurations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub case: CaseId,
    pub raw: RawParams,
}

impl Preset {
    pub fn spec(&self) -> CaseSpec {
        CaseSpec::first(self.case)
    }

    pub fn solution(&self) -> Result<ResonantSolution> {
        solution(&self.raw, self.spec())
    }
}

const fn preset(name: &'static str, case: CaseId, k: [f64; 3], p3: f64) -> Preset {
    Preset { name, case, raw: RawParams::new(k, p3) }
}

/// One admissible preset per case, plus the alternate C2_1 regime.
pub const PRESETS: [Preset; 9] = [
    preset("c2_1", CaseId::C2_1, [-1.0, -2.0, -4.0 / 3.0], 1.0),
    preset("c2_1_alt", CaseId::C2_1, [-1.0, 1.5, 2.0], 1.0),
    preset("c2_2", CaseId::C2_2, [-2.0 / 3.0, -1.0, -4.0 / 3.0], 2.0 / 3.0),
    preset("c2_3", CaseId::C2_3, [-1.0, -2.0 / 3.0, -4.0 / 3.0], 2.0 / 3.0),
    preset("c2_4", CaseId::C2_4, [2.0, 1.0, 2.0 / 3.0], 1.5),
    preset("w2", CaseId::W2, [1.0, -1.0, -2.0], -0.5),
    preset("m2", CaseId::M2, [2.0, -1.0, -1.5], 1.0),
    preset("c3_1", CaseId::C3_1, [2.0, 4.0 / 3.0, 1.0], 0.0),
    preset("c3_2", CaseId::C3_2, [-1.0, 2.0, -1.5], 1.0),
];

/// The C2_2 parameters whose `a_12` is negative.
pub const C2_2_INADMISSIBLE: Preset =
    preset("c2_2_inadmissible", CaseId::C2_2, [-2.0 / 3.0, -1.0, 4.0 / 3.0], 2.0 / 3.0);

pub fn find_preset(name: &str) -> Option<Preset> {
    PRESETS.iter().chain([&C2_2_INADMISSIBLE]).find(|p| p.name == name).copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_values() {
        assert_eq!(omega(1.0, 0.0).unwrap(), -1.0);
        assert_eq!(omega(-1.0, 0.0).unwrap(), 1.0);
        assert!((omega(-4.0 / 3.0, 1.0).unwrap() - 499.0 / 108.0).abs() < 1e-14);
        assert!(omega(0.0, 1.0).is_err());
    }

    #[test]
    fn kdv_phase_shift() {
        let a = phase_shift_param(1.0, 0.0, 2.0, 0.0).unwrap();
        assert!((a.finite().unwrap() - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn resonant_and_negative() {
        // k_i = k_j with q = 0 zeroes the numerator only.
        assert_eq!(phase_shift_param(1.0, 0.0, 1.0, 0.0).unwrap(), PhaseShift::Finite(0.0));
        assert_eq!(phase_shift_param(1.0, 0.0, -1.0, 0.0).unwrap(), PhaseShift::Infinite);
        // Between the two resonance lines a_ij is negative.
        assert!(matches!(phase_shift_param(1.0, 0.0, 2.0, 4.0), Err(Error::InadmissibleParameter(_))));
    }

    #[test]
    fn template_cardinalities() {
        let counts: Vec<usize> = CaseId::RESONANT.iter().map(|c| template_masks(*c).len()).collect();
        assert_eq!(counts, vec![5, 4, 4, 5, 5, 5, 4, 4]);
        assert_eq!(template_masks(CaseId::Generic).len(), 8);
    }

    #[test]
    fn case_names_round_trip() {
        for c in CaseId::RESONANT.iter().chain(std::iter::once(&CaseId::Generic)) {
            assert_eq!(c.as_str().parse::<CaseId>().unwrap(), *c);
        }
        assert!("c9".parse::<CaseId>().is_err());
    }

    #[test]
    fn w2_admissibility_rule() {
        let bad = resolve_constraints(&RawParams::new([1.0, 2.0, 0.5], 0.5), CaseSpec::first(CaseId::W2));
        assert!(matches!(bad, Err(Error::InadmissibleParameter(_))));
    }

    #[test]
    fn overall_kinds() {
        let k = [2.0, -1.0, -1.5];
        let m2 = resolve_constraints(&RawParams::new(k, 1.0), CaseSpec::first(CaseId::M2)).unwrap();
        let class = classify_resonance(&m2, CaseSpec::first(CaseId::M2)).unwrap();
        assert_eq!(class.overall(), ResonanceKind::Mixed);
        assert_eq!(class.pair(3, 1), ResonanceKind::Strong);
    }
}

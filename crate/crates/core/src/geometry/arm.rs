use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::line::Line;
use crate::catalog::{ResonantSolution, SolitonParams, TemplateTerm};
use crate::error::{Error, Result};
use crate::tau::Point;

/// Signed index set of an arm, oriented so the first nonzero sign is `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ArmLabel {
    pub signs: [i8; 3],
    /// Set when the profile carries the `ln a_12` offset.
    pub hat: bool,
}

impl ArmLabel {
    pub fn new(signs: [i8; 3], hat: bool) -> Result<Self> {
        let first = signs.iter().copied().find(|s| *s != 0);
        match first {
            None => Err(Error::DegenerateLine),
            Some(s) if signs.iter().any(|v| v.abs() > 1) => Err(Error::Domain(format!("label sign {s} out of range"))),
            Some(s) => Ok(Self { signs: signs.map(|v| v * s), hat }),
        }
    }

    pub fn indices(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.signs.iter().enumerate().filter(|(_, s)| **s != 0).map(|(j, s)| (j, *s as f64))
    }

    pub fn signed_sum(&self, v: [f64; 3]) -> f64 {
        self.indices().map(|(j, s)| s * v[j]).sum()
    }

    /// Same arm up to the hat flag.
    pub fn same_species(&self, other: &ArmLabel) -> bool {
        self.signs == other.signs
    }
}

impl fmt::Display for ArmLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut body = String::new();
        for (j, s) in self.indices() {
            if !body.is_empty() || s < 0.0 {
                body.push(if s > 0.0 { '+' } else { '-' });
            }
            body.push_str(&(j + 1).to_string());
        }
        if self.hat {
            write!(f, "^S_{{{body}}}")
        } else {
            write!(f, "S_{{{body}}}")
        }
    }
}

impl FromStr for ArmLabel {
    type Err = Error;

    /// Accepts `S_{1+3}`, `^S_{1+2+3}`, `hat:1+2+3` or a bare `1-3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("arm label {s:?}"));
        let mut rest = s.trim();
        let mut hat = false;
        for prefix in ["^", "hat:", "hat"] {
            if let Some(r) = rest.strip_prefix(prefix) {
                hat = true;
                rest = r;
                break;
            }
        }
        let rest = rest.trim_start_matches(['S', 's']).trim_start_matches('_');
        let rest = rest.trim_start_matches('{').trim_end_matches('}');
        let mut signs = [0i8; 3];
        let mut sign = 1i8;
        let mut seen = false;
        for ch in rest.chars() {
            match ch {
                '+' => sign = 1,
                '-' => sign = -1,
                '1'..='3' => {
                    let j = ch as usize - '1' as usize;
                    if signs[j] != 0 {
                        return Err(bad());
                    }
                    signs[j] = sign;
                    sign = 1;
                    seen = true;
                }
                _ => return Err(bad()),
            }
        }
        if !seen {
            return Err(bad());
        }
        ArmLabel::new(signs, hat)
    }
}

impl From<ArmLabel> for String {
    fn from(label: ArmLabel) -> Self {
        label.to_string()
    }
}

impl TryFrom<String> for ArmLabel {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// One arm or stem species of a solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArmDescriptor {
    pub label: ArmLabel,
    pub amplitude: f64,
    pub k_sum: f64,
    pub p_sum: f64,
    pub omega_sum: f64,
    /// Signed sum of the `ξ_j⁰`.
    pub phase_sum: f64,
    pub profile_offset: f64,
    pub velocity: [Option<f64>; 2],
}

impl ArmDescriptor {
    pub fn new(label: ArmLabel, params: &SolitonParams, profile_offset: f64) -> Self {
        let k_sum = label.signed_sum(params.k);
        let p_sum = label.signed_sum(params.p);
        let omega_sum = label.signed_sum(params.omega());
        let ratio = |d: f64| if d == 0.0 { None } else { Some(-omega_sum / d) };
        Self {
            label,
            amplitude: k_sum * k_sum / 2.0,
            k_sum,
            p_sum,
            omega_sum,
            phase_sum: label.signed_sum(params.xi0),
            profile_offset,
            velocity: [ratio(k_sum), ratio(p_sum)],
        }
    }

    /// The arm along which terms `a` and `b` balance.
    pub fn between(sol: &ResonantSolution, a: &TemplateTerm, b: &TemplateTerm) -> Result<Self> {
        let bits = |m: u8| [0, 1, 2].map(|j| ((m >> j) & 1) as i8);
        let (ma, mb) = (bits(a.mask), bits(b.mask));
        let raw = [0, 1, 2].map(|j| mb[j] - ma[j]);
        let flip = raw.iter().copied().find(|s| *s != 0).ok_or(Error::DegenerateLine)?;
        let hat = a.a12_power != b.a12_power;
        let label = ArmLabel::new(raw, hat)?;
        let offset = f64::from(flip) * (b.coeff.ln() - a.coeff.ln());
        Ok(Self::new(label, &sol.params, offset))
    }

    /// Raw trajectory `K x + P y + (Ω t + Σξ⁰ + offset) = 0`.
    pub fn line_coeffs(&self, t: f64) -> Line {
        Line::new(self.k_sum, self.p_sum, self.omega_sum * t + self.phase_sum + self.profile_offset)
    }

    pub fn trajectory_line(&self, t: f64) -> Result<Line> {
        self.line_coeffs(t).normalized()
    }

    /// Signed phase `Ξ + offset` at a point.
    pub fn phase(&self, pt: Point) -> f64 {
        self.k_sum * pt.x + self.p_sum * pt.y + self.omega_sum * pt.t + self.phase_sum + self.profile_offset
    }

    /// `(K²/2) sech²((Ξ + offset)/2)`.
    pub fn profile(&self, pt: Point) -> f64 {
        let s = 1.0 / (self.phase(pt) / 2.0).cosh();
        self.amplitude * s * s
    }
}

pub fn arm_profile(arm: &ArmDescriptor, _sol: &ResonantSolution, pt: Point) -> f64 {
    arm.profile(pt)
}

use serde::{Deserialize, Serialize};

use super::arm::ArmLabel;
use super::asymptotics::{arm_catalog, AsymptoticCatalog, StemSpecies};
use super::closed_form::{closed_form_length, registered_triples, stem_forms};
use super::line::{dist, intersect_lines};
use super::tropical::{balance_line, term_planes};
use crate::catalog::ResonantSolution;
use crate::error::{Error, Result};
use crate::tau::Point;

pub const DEFAULT_T_MIN: f64 = 3.0;

/// Agreement required between closed-form and intersected endpoints,
/// relative to `max(1, |p|)`.
pub const ENDPOINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StemReport {
    pub t: f64,
    pub stem: ArmLabel,
    pub endpoint_a: [f64; 2],
    pub endpoint_b: [f64; 2],
    pub length: f64,
    pub midpoint: [f64; 2],
    pub midpoint_amplitude: f64,
    pub valid: bool,
    /// Length from the closed form, when one covers this regime.
    pub length_formula: Option<f64>,
    /// Whether the endpoints were checked against closed forms.
    pub closed_form_checked: bool,
}

/// Stem geometry of one solution, with its asymptotic catalog cached.
#[derive(Debug, Clone)]
pub struct StemGeometry<'a> {
    pub sol: &'a ResonantSolution,
    pub catalog: AsymptoticCatalog,
    pub t_min: f64,
}

fn masks(sol: &ResonantSolution, terms: [usize; 3]) -> [u8; 3] {
    let mut m = terms.map(|i| sol.template[i].mask);
    m.sort_unstable();
    m
}

impl<'a> StemGeometry<'a> {
    pub fn new(sol: &'a ResonantSolution) -> Result<Self> {
        Ok(Self { sol, catalog: arm_catalog(sol)?, t_min: DEFAULT_T_MIN })
    }

    pub fn with_t_min(mut self, t_min: f64) -> Self {
        self.t_min = t_min;
        self
    }

    pub fn species(&self, t: f64) -> &StemSpecies {
        self.catalog.stem(t)
    }

    /// Whether the registered closed forms describe this solution's stems at `t`.
    pub fn closed_form_applies(&self, t: f64) -> bool {
        let Some(reg) = registered_triples(self.sol.spec.case, t >= 0.0) else {
            return false;
        };
        let found = self.species(t).junctions.map(|j| masks(self.sol, j));
        found == reg || found == [reg[1], reg[0]]
    }

    /// Junction point at `t`: the stem line meets the line of the junction's third term.
    pub fn junction_point(&self, junction: [usize; 3], t: f64) -> Result<[f64; 2]> {
        let stem = self.species(t);
        let third = junction
            .iter()
            .copied()
            .find(|i| *i != stem.pair.0 && *i != stem.pair.1)
            .ok_or_else(|| Error::InternalConsistency("junction without a third term".into()))?;
        let planes = term_planes(self.sol, t);
        let l1 = balance_line(&planes, stem.pair.0, stem.pair.1);
        let l2 = balance_line(&planes, stem.pair.0, third);
        intersect_lines(&l1, &l2)
            .point()
            .ok_or_else(|| Error::InternalConsistency("parallel lines at a junction".into()))
    }

    /// Endpoints ordered as in the closed-form registry when it applies.
    fn endpoints(&self, t: f64) -> Result<([[f64; 2]; 2], bool)> {
        let stem = self.species(t);
        let mut junctions = stem.junctions;
        let mut checked = false;
        let sol = self.sol;
        let closed = if self.closed_form_applies(t) {
            let forms = stem_forms(sol.spec.case).expect("registered")[(t >= 0.0) as usize];
            if masks(sol, junctions[0]) != forms[0].masks {
                junctions.swap(0, 1);
            }
            let p = &sol.params;
            Some(forms.map(|f| f.eval(sol.spec.branch, p.k, p.p[2], sol.ln_a12(), t)))
        } else {
            None
        };
        let pts = [self.junction_point(junctions[0], t)?, self.junction_point(junctions[1], t)?];
        if let Some(cf) = closed {
            for (g, c) in pts.iter().zip(&cf) {
                let scale = 1f64.max(g[0].hypot(g[1]));
                if dist(*g, *c) > ENDPOINT_TOL * scale {
                    return Err(Error::InternalConsistency(format!(
                        "closed-form endpoint {c:?} differs from intersection {g:?} at t = {t}"
                    )));
                }
            }
            checked = true;
        }
        Ok((pts, checked))
    }

    pub fn report(&self, t: f64) -> Result<StemReport> {
        if !t.is_finite() {
            return Err(Error::Domain("t".into()));
        }
        let (pts, checked) = self.endpoints(t)?;
        let midpoint = [(pts[0][0] + pts[1][0]) / 2.0, (pts[0][1] + pts[1][1]) / 2.0];
        let length_formula = self.length_formula(t).ok();
        Ok(StemReport {
            t,
            stem: self.species(t).arm.label,
            endpoint_a: pts[0],
            endpoint_b: pts[1],
            length: dist(pts[0], pts[1]),
            midpoint,
            midpoint_amplitude: self.sol.u(Point::new(midpoint[0], midpoint[1], t))?,
            valid: t.abs() >= self.t_min,
            length_formula,
            closed_form_checked: checked,
        })
    }

    pub fn length_formula(&self, t: f64) -> Result<f64> {
        let sol = self.sol;
        if !self.closed_form_applies(t) {
            return Err(Error::UnsupportedFormula(format!("{} outside the closed-form regime", sol.spec.case)));
        }
        let p = &sol.params;
        closed_form_length(sol.spec.case, sol.spec.branch, p.k, p.p[2], sol.ln_a12(), t)
    }
}

pub fn stem_endpoints(sol: &ResonantSolution, t: f64) -> Result<StemReport> {
    StemGeometry::new(sol)?.report(t)
}

pub fn stem_length_formula(sol: &ResonantSolution, t: f64) -> Result<f64> {
    StemGeometry::new(sol)?.length_formula(t)
}

pub fn midpoint_amplitude(sol: &ResonantSolution, t: f64) -> Result<f64> {
    Ok(stem_endpoints(sol, t)?.midpoint_amplitude)
}

use serde::{Deserialize, Serialize};

use super::line::Line;
use super::stem::StemGeometry;
use crate::catalog::ResonantSolution;
use crate::error::{Error, Result};
use crate::tau::Point;

/// Arclength tolerance of the golden-section refinement.
pub const EXTREMUM_TOL: f64 = 1e-6;

/// Samples per unit of stem length when hunting interior extrema.
const STEM_SAMPLES: usize = 4001;

/// A line parametrized by arclength from the foot of an anchor point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub line: Line,
    pub origin: [f64; 2],
    pub direction: [f64; 2],
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub s: f64,
    pub point: [f64; 2],
    pub u: f64,
    pub kind: ExtremumKind,
}

impl Section {
    pub fn new(line: Line, anchor: [f64; 2], t: f64) -> Result<Self> {
        let line = line.normalized()?;
        Ok(Self { line, origin: line.foot(anchor)?, direction: line.direction()?, t })
    }

    pub fn at(&self, s: f64) -> [f64; 2] {
        [self.origin[0] + s * self.direction[0], self.origin[1] + s * self.direction[1]]
    }

    pub fn point(&self, s: f64) -> Point {
        let [x, y] = self.at(s);
        Point::new(x, y, self.t)
    }

    pub fn u(&self, sol: &ResonantSolution, s: f64) -> Result<f64> {
        sol.u(self.point(s))
    }

    pub fn sample(&self, sol: &ResonantSolution, range: (f64, f64), n: usize) -> Result<Vec<(f64, f64)>> {
        if n < 2 {
            return Err(Error::Domain("a section needs at least two samples".into()));
        }
        let h = (range.1 - range.0) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                let s = range.0 + h * i as f64;
                Ok((s, self.u(sol, s)?))
            })
            .collect()
    }

    /// Golden-section search for the extremum of `kind` inside `[lo, hi]`.
    pub fn refine(&self, sol: &ResonantSolution, lo: f64, hi: f64, kind: ExtremumKind) -> Result<Extremum> {
        let sign = match kind {
            ExtremumKind::Max => -1.0,
            ExtremumKind::Min => 1.0,
        };
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (lo, hi);
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        let mut fc = sign * self.u(sol, c)?;
        let mut fd = sign * self.u(sol, d)?;
        while b - a > EXTREMUM_TOL {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = sign * self.u(sol, c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = sign * self.u(sol, d)?;
            }
        }
        let s = (a + b) / 2.0;
        Ok(Extremum { s, point: self.at(s), u: self.u(sol, s)?, kind })
    }

    /// Interior sampled extremum nearest `s = 0`, refined.
    pub fn interior_extremum(&self, sol: &ResonantSolution, range: (f64, f64), n: usize) -> Result<Option<Extremum>> {
        let samples = self.sample(sol, range, n)?;
        let mut best: Option<(usize, ExtremumKind)> = None;
        for i in 1..samples.len() - 1 {
            let (l, m, r) = (samples[i - 1].1, samples[i].1, samples[i + 1].1);
            let kind = if m > l && m >= r {
                ExtremumKind::Max
            } else if m < l && m <= r {
                ExtremumKind::Min
            } else {
                continue;
            };
            if best.is_none_or(|(j, _)| samples[i].0.abs() < samples[j].0.abs()) {
                best = Some((i, kind));
            }
        }
        best.map(|(i, kind)| self.refine(sol, samples[i - 1].0, samples[i + 1].0, kind)).transpose()
    }
}

/// Samples `u` along `line`, arclength measured from the foot of `anchor`.
pub fn cross_section(
    sol: &ResonantSolution,
    line: Line,
    anchor: [f64; 2],
    t: f64,
    range: (f64, f64),
    n: usize,
) -> Result<Vec<(f64, f64)>> {
    Section::new(line, anchor, t)?.sample(sol, range, n)
}

impl StemGeometry<'_> {
    /// Section along the stem, origin at its midpoint, spanning its endpoints.
    pub fn stem_section(&self, t: f64) -> Result<(Section, f64)> {
        let report = self.report(t)?;
        let line = self.species(t).arm.trajectory_line(t)?;
        Ok((Section::new(line, report.midpoint, t)?, report.length / 2.0))
    }

    /// Extremum of `u` along the stem nearest its midpoint.
    pub fn stem_extremum(&self, t: f64) -> Result<Option<Extremum>> {
        let (section, half) = self.stem_section(t)?;
        section.interior_extremum(self.sol, (-half, half), STEM_SAMPLES)
    }
}

use serde::{Deserialize, Serialize};

use crate::catalog::ResonantSolution;
use crate::error::{Error, Result};
use crate::geometry::line::dist;
use crate::geometry::{CatalogArm, ExtremumKind, Line, Section, StemGeometry};
use crate::verification::asymptotic::{arm_anchor, MatchOptions};

/// Samples per scan before refinement.
const SCAN_SAMPLES: usize = 201;

/// Allowed normalized-coefficient distance between a fitted ridge and its trajectory.
pub const RIDGE_TOL: f64 = 1e-4;
/// Arclength covered on each side of an arm anchor.
pub const ARM_SPAN: f64 = 10.0;
pub const ARM_SCANS: usize = 21;
/// Scan half-width in units of the arm's phase.
const SCAN_PHASE: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RidgeSample {
    pub anchor: [f64; 2],
    pub point: [f64; 2],
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RidgeTrace {
    pub samples: Vec<RidgeSample>,
    pub fitted_line: Line,
}

/// Local maxima of `u` across `approx_line` at `n_scans` anchors spread over
/// arclength `along` (measured from the foot of `origin`), each scan covering
/// `±half_width`; a total-least-squares line is fitted through them.
pub fn ridge_trace(
    sol: &ResonantSolution,
    t: f64,
    approx_line: Line,
    origin: [f64; 2],
    along: (f64, f64),
    n_scans: usize,
    half_width: f64,
) -> Result<RidgeTrace> {
    let base = Section::new(approx_line, origin, t)?;
    let step = if n_scans > 1 { (along.1 - along.0) / (n_scans - 1) as f64 } else { 0.0 };
    let mut samples = Vec::new();
    for i in 0..n_scans {
        let anchor = base.at(along.0 + step * i as f64);
        let scan = Section::new(approx_line.perpendicular_through(anchor)?, anchor, t)?;
        let values = scan.sample(sol, (-half_width, half_width), SCAN_SAMPLES)?;
        let best = (1..values.len() - 1)
            .filter(|&j| values[j].1 > values[j - 1].1 && values[j].1 >= values[j + 1].1)
            .min_by(|a, b| values[*a].0.abs().total_cmp(&values[*b].0.abs()));
        if let Some(j) = best {
            let e = scan.refine(sol, values[j - 1].0, values[j + 1].0, ExtremumKind::Max)?;
            samples.push(RidgeSample { anchor, point: e.point, value: e.u });
        }
    }
    if samples.len() * 2 < n_scans || samples.len() < 2 {
        return Err(Error::RidgeNotFound { found: samples.len(), scans: n_scans });
    }
    Ok(RidgeTrace { fitted_line: fit_line(&samples)?, samples })
}

/// Total-least-squares line through the refined ridge points.
fn fit_line(samples: &[RidgeSample]) -> Result<Line> {
    let n = samples.len() as f64;
    let cx = samples.iter().map(|s| s.point[0]).sum::<f64>() / n;
    let cy = samples.iter().map(|s| s.point[1]).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for s in samples {
        let (dx, dy) = (s.point[0] - cx, s.point[1] - cy);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let angle = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let normal = [-angle.sin(), angle.cos()];
    Line::through([cx, cy], normal)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmRidge {
    pub trace: RidgeTrace,
    pub trajectory: Line,
    pub distance: f64,
}

/// Ridge of a catalog arm traced over `±ARM_SPAN` around its asymptotic anchor.
pub fn arm_ridge(geo: &StemGeometry, arm: &CatalogArm, t: f64, opts: &MatchOptions) -> Result<ArmRidge> {
    let anchor = arm_anchor(geo, arm, t, opts)?;
    let trajectory = arm.arm.trajectory_line(t)?;
    let half = SCAN_PHASE / arm.arm.k_sum.hypot(arm.arm.p_sum);
    let trace = ridge_trace(geo.sol, t, trajectory, anchor, (-ARM_SPAN, ARM_SPAN), ARM_SCANS, half)?;
    let distance = trace.fitted_line.coeff_distance(&trajectory)?;
    Ok(ArmRidge { trace, trajectory, distance })
}

/// Ridge crest across the stem at its midpoint.
pub fn stem_ridge_value(geo: &StemGeometry, t: f64) -> Result<RidgeSample> {
    let stem = geo.species(t).arm;
    let line = stem.trajectory_line(t)?;
    let mid = geo.report(t)?.midpoint;
    let half = SCAN_PHASE / stem.k_sum.hypot(stem.p_sum);
    let trace = ridge_trace(geo.sol, t, line, mid, (-1.0, 1.0), 3, half)?;
    let centre = trace.samples.iter().min_by(|a, b| dist(a.anchor, mid).total_cmp(&dist(b.anchor, mid)));
    centre.copied().ok_or(Error::RidgeNotFound { found: 0, scans: 3 })
}

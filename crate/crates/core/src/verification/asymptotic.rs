use serde::{Deserialize, Serialize};

use crate::catalog::ResonantSolution;
use crate::error::{Error, Result};
use crate::geometry::line::dist;
use crate::geometry::{ArmDescriptor, BalanceGraph, CatalogArm, Section, StemGeometry};

pub const ASYMPTOTIC_TOL: f64 = 1e-3;
pub const NEGATIVE_CONTROL_MIN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchOptions {
    /// Minimum distance from the anchor to every junction.
    pub min_distance: f64,
    /// Section half-width measured in the arm's phase.
    pub phase_half_width: f64,
    pub samples: usize,
}

impl Default for MatchOptions {
    fn default() -> Self {
        Self { min_distance: 10.0, phase_half_width: 20.0, samples: 401 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    pub t: f64,
    pub anchor: [f64; 2],
    pub deviation: f64,
}

fn segment_distance(p: [f64; 2], a: [f64; 2], d: [f64; 2], len: f64) -> f64 {
    let s = ((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]).clamp(0.0, len);
    dist(p, [a[0] + s * d[0], a[1] + s * d[1]])
}

/// Anchor on a catalog arm at `t`: at least `min_distance` from every
/// junction, and far enough from every other edge that the section
/// `±half_width` stays clear of it.
pub fn arm_anchor(geo: &StemGeometry, arm: &CatalogArm, t: f64, opts: &MatchOptions) -> Result<[f64; 2]> {
    let g = BalanceGraph::new(geo.sol, t);
    let not_found = Error::AnchorNotFound { min_distance: opts.min_distance };
    let edge = g.edge(arm.pair).ok_or(not_found.clone())?;
    let half = opts.phase_half_width / arm.arm.k_sum.hypot(arm.arm.p_sum);
    let clear = |p: [f64; 2]| {
        g.vertices.iter().all(|v| dist(v.point, p) >= opts.min_distance)
            && g.edges.iter().filter(|e| e.pair != edge.pair).all(|e| {
                let a = g.vertices[e.vertices[0]].point;
                let (d, len) = match e.ray {
                    Some(d) => (d, f64::INFINITY),
                    None => {
                        let b = g.vertices[e.vertices[1]].point;
                        let len = dist(a, b);
                        ([(b[0] - a[0]) / len, (b[1] - a[1]) / len], len)
                    }
                };
                segment_distance(p, a, d, len) >= half + opts.min_distance
            })
    };
    if edge.is_bounded() {
        let (a, b) = (g.vertices[edge.vertices[0]].point, g.vertices[edge.vertices[1]].point);
        let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        return if clear(mid) { Ok(mid) } else { Err(not_found) };
    }
    let start = g.vertices[edge.vertices[0]].point;
    let d = edge.ray.expect("ray");
    let stem_half = geo.report(t)?.length / 2.0;
    let mut s = opts.min_distance.max(stem_half);
    for _ in 0..64 {
        let p = [start[0] + s * d[0], start[1] + s * d[1]];
        if clear(p) {
            return Ok(p);
        }
        s *= 1.25;
    }
    Err(not_found)
}

/// Perpendicular section through `anchor` spanning `±phase_half_width` of `arm`'s phase.
pub fn arm_section(arm: &ArmDescriptor, anchor: [f64; 2], t: f64, opts: &MatchOptions) -> Result<(Section, f64)> {
    let line = arm.trajectory_line(t)?;
    let perp = line.perpendicular_through(anchor)?;
    let half = opts.phase_half_width / arm.k_sum.hypot(arm.p_sum);
    Ok((Section::new(perp, line.foot(anchor)?, t)?, half))
}

/// Sup of `|u − profile|` on a section.
pub fn section_deviation(
    sol: &ResonantSolution,
    profile: &ArmDescriptor,
    section: &Section,
    half: f64,
    samples: usize,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for (s, u) in section.sample(sol, (-half, half), samples)? {
        worst = worst.max((u - profile.profile(section.point(s))).abs());
    }
    Ok(worst)
}

/// Deviation of `u` from `arm`'s profile across the arm at `t`.
pub fn asymptotic_match(geo: &StemGeometry, arm: &CatalogArm, t: f64, opts: &MatchOptions) -> Result<MatchReport> {
    let anchor = arm_anchor(geo, arm, t, opts)?;
    let (section, half) = arm_section(&arm.arm, anchor, t, opts)?;
    let deviation = section_deviation(geo.sol, &arm.arm, &section, half, opts.samples)?;
    Ok(MatchReport { t, anchor, deviation })
}

/// Arms used for the mismatch check on one side: the largest-amplitude arm's
/// section against the smallest-amplitude arm's profile.
pub fn negative_control_pair(arms: &[CatalogArm]) -> Option<(CatalogArm, CatalogArm)> {
    let by_amp = |a: &&CatalogArm, b: &&CatalogArm| a.arm.amplitude.total_cmp(&b.arm.amplitude);
    let big = arms.iter().max_by(by_amp)?;
    let small = arms.iter().filter(|a| !a.arm.label.same_species(&big.arm.label)).min_by(by_amp)?;
    Some((*big, *small))
}

/// Deviation of `u` from a different arm's profile on `arm`'s section.
pub fn negative_control(
    geo: &StemGeometry,
    arm: &CatalogArm,
    wrong: &ArmDescriptor,
    t: f64,
    opts: &MatchOptions,
) -> Result<f64> {
    let anchor = arm_anchor(geo, arm, t, opts)?;
    let (section, half) = arm_section(&arm.arm, anchor, t, opts)?;
    section_deviation(geo.sol, wrong, &section, half, opts.samples)
}

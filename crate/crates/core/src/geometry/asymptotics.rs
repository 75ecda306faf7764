use std::fmt;

use serde::{Deserialize, Serialize};

use super::arm::ArmDescriptor;
use super::line::dist;
use super::tropical::{pair_arm, BalanceGraph, Edge};
use crate::catalog::{CaseId, ResonantSolution};
use crate::error::{Error, Result};

/// Time at which the asymptotic skeleton is read off.
pub const PROBE_T: f64 = 50.0;

/// Relative cross product below which two directions count as parallel.
const PARALLEL_REL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    #[serde(rename = "y->-inf")]
    YMinus,
    #[serde(rename = "y->+inf")]
    YPlus,
    #[serde(rename = "x->-inf")]
    XMinus,
    #[serde(rename = "x->+inf")]
    XPlus,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::YMinus => "y->-inf",
            Region::YPlus => "y->+inf",
            Region::XMinus => "x->-inf",
            Region::XPlus => "x->+inf",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatalogArm {
    pub region: Region,
    pub arm: ArmDescriptor,
    /// Template indices of the two balancing terms.
    pub pair: (usize, usize),
    /// Template indices of the junction the arm leaves from.
    pub junction: [usize; 3],
    /// Unit direction away from the junction at the probe time.
    pub direction: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StemSpecies {
    pub arm: ArmDescriptor,
    pub pair: (usize, usize),
    /// Template indices of the two junctions at the ends of the stem.
    pub junctions: [[usize; 3]; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCatalog {
    pub before: Vec<CatalogArm>,
    pub after: Vec<CatalogArm>,
    pub stem_past: StemSpecies,
    pub stem_future: StemSpecies,
    /// Per side (past, future): set when neither axis splits the junction
    /// pairs and the region labels come from the fallback rule.
    pub heuristic_regions: [bool; 2],
}

impl AsymptoticCatalog {
    pub fn stem(&self, t: f64) -> &StemSpecies {
        if t < 0.0 {
            &self.stem_past
        } else {
            &self.stem_future
        }
    }

    pub fn arms(&self, t: f64) -> &[CatalogArm] {
        if t < 0.0 {
            &self.before
        } else {
            &self.after
        }
    }

    /// Every distinct arm and stem species in the catalog.
    pub fn all_arms(&self) -> Vec<ArmDescriptor> {
        let mut out: Vec<ArmDescriptor> = Vec::new();
        let all = self.before.iter().chain(&self.after).map(|a| a.arm);
        for arm in all.chain([self.stem_past.arm, self.stem_future.arm]) {
            if !out.iter().any(|o| o.label == arm.label) {
                out.push(arm);
            }
        }
        out
    }
}

fn edge_normal(graph_planes: &[[f64; 3]], e: &Edge) -> [f64; 2] {
    let (a, b) = e.pair;
    [graph_planes[b][0] - graph_planes[a][0], graph_planes[b][1] - graph_planes[a][1]]
}

fn parallel(u: [f64; 2], v: [f64; 2]) -> bool {
    (u[0] * v[1] - u[1] * v[0]).abs() <= PARALLEL_REL * u[0].hypot(u[1]) * v[0].hypot(v[1])
}

struct Side {
    stem: StemSpecies,
    /// Arms grouped by the junction they leave from.
    groups: [[CatalogArm; 2]; 2],
}

fn read_side(sol: &ResonantSolution, t: f64) -> Result<Side> {
    let g = BalanceGraph::new(sol, t);
    let planes = super::tropical::term_planes(sol, t);
    let ray_normals: Vec<[f64; 2]> = g.rays().map(|e| edge_normal(&planes, e)).collect();
    let stem_edge = g
        .bounded()
        .filter(|e| !ray_normals.iter().any(|n| parallel(*n, edge_normal(&planes, e))))
        .max_by(|a, b| g.edge_length(a).total_cmp(&g.edge_length(b)))
        .ok_or_else(|| Error::InternalConsistency(format!("no stem edge at t = {t}")))?;
    let junctions = [0, 1].map(|i| g.vertices[stem_edge.vertices[i]]);
    let stem = StemSpecies {
        arm: pair_arm(sol, stem_edge.pair.0, stem_edge.pair.1)?,
        pair: stem_edge.pair,
        junctions: junctions.map(|v| v.terms),
    };
    let mut groups = Vec::new();
    for (vi, v) in stem_edge.vertices.iter().zip(&junctions) {
        let mut arms = Vec::new();
        for e in g.edges.iter().filter(|e| e.pair != stem_edge.pair && e.vertices.contains(vi)) {
            let direction = match e.ray {
                Some(d) => d,
                None => {
                    let other = e.vertices.iter().find(|w| *w != vi).expect("bounded edge");
                    let q = g.vertices[*other].point;
                    let len = dist(q, v.point);
                    [(q[0] - v.point[0]) / len, (q[1] - v.point[1]) / len]
                }
            };
            arms.push(CatalogArm {
                region: Region::YMinus,
                arm: pair_arm(sol, e.pair.0, e.pair.1)?,
                pair: e.pair,
                junction: v.terms,
                direction,
            });
        }
        let pair: [CatalogArm; 2] = arms.try_into().map_err(|a: Vec<_>| {
            Error::InternalConsistency(format!("junction with {} arms at t = {t}", a.len() + 1))
        })?;
        groups.push(pair);
    }
    let groups: [[CatalogArm; 2]; 2] = groups.try_into().expect("two junctions");
    Ok(Side { stem, groups })
}

/// Assigns regions: an axis separates the arms when each junction's two arms
/// head the same way along it.
fn assign_regions(groups: &mut [[CatalogArm; 2]; 2]) -> bool {
    let splits = |axis: usize| {
        groups.iter().all(|g| {
            let (a, b) = (g[0].direction[axis], g[1].direction[axis]);
            a != 0.0 && b != 0.0 && (a > 0.0) == (b > 0.0)
        })
    };
    let balanced = |axis: usize| {
        let plus = groups.iter().flatten().filter(|a| a.direction[axis] > 0.0).count();
        let min = groups.iter().flatten().map(|a| a.direction[axis].abs()).fold(f64::MAX, f64::min);
        if plus == 2 {
            min
        } else {
            -1.0
        }
    };
    let (axis, heuristic) = if splits(1) {
        (1, false)
    } else if splits(0) {
        (0, false)
    } else if balanced(1) >= balanced(0) {
        (1, true)
    } else {
        (0, true)
    };
    for arm in groups.iter_mut().flatten() {
        let plus = arm.direction[axis] > 0.0;
        arm.region = match (axis, plus) {
            (1, false) => Region::YMinus,
            (1, true) => Region::YPlus,
            (_, false) => Region::XMinus,
            (_, true) => Region::XPlus,
        };
    }
    heuristic
}

pub fn arm_catalog(sol: &ResonantSolution) -> Result<AsymptoticCatalog> {
    if sol.spec.case == CaseId::Generic {
        return Err(Error::UnsupportedCase("asymptotic catalog of a generic solution".into()));
    }
    let mut past = read_side(sol, -PROBE_T)?;
    let mut future = read_side(sol, PROBE_T)?;
    let h1 = assign_regions(&mut past.groups);
    let h2 = assign_regions(&mut future.groups);
    let order = |groups: [[CatalogArm; 2]; 2]| {
        let mut v: Vec<CatalogArm> = groups.into_iter().flatten().collect();
        v.sort_by_key(|a| (a.region as u8, a.pair));
        v
    };
    if past.stem.arm.label == future.stem.arm.label {
        return Err(Error::InternalConsistency("stem species unchanged by reconnection".into()));
    }
    Ok(AsymptoticCatalog {
        before: order(past.groups),
        after: order(future.groups),
        stem_past: past.stem,
        stem_future: future.stem,
        heuristic_regions: [h1, h2],
    })
}

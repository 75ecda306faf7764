use serde::{Deserialize, Serialize};

use super::arm::{ArmDescriptor, ArmLabel};
use super::asymptotics::arm_catalog;
use crate::catalog::{ResonantSolution, SolitonParams};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VelocityRow {
    pub label: ArmLabel,
    /// `None` marks an undefined component (zero denominator).
    pub vx: Option<f64>,
    pub vy: Option<f64>,
    pub amplitude: f64,
}

impl From<&ArmDescriptor> for VelocityRow {
    fn from(arm: &ArmDescriptor) -> Self {
        Self { label: arm.label, vx: arm.velocity[0], vy: arm.velocity[1], amplitude: arm.amplitude }
    }
}

pub fn velocity_table(sol: &ResonantSolution) -> Result<Vec<VelocityRow>> {
    Ok(arm_catalog(sol)?.all_arms().iter().map(VelocityRow::from).collect())
}

/// Velocity in the tabulated form `Σ±k_j³/K + δ/(k_1k_2k_3 K)` and
/// `Σ±k_j³/P + δ/(k_1k_2k_3 P)`, with `δ = Σ±3p_j² Π_{i≠j} k_i`.
pub fn tabulated_velocity(label: &ArmLabel, params: &SolitonParams) -> [Option<f64>; 2] {
    let [k1, k2, k3] = params.k;
    let others = [k2 * k3, k1 * k3, k1 * k2];
    let cubes = label.signed_sum(params.k.map(|k| k * k * k));
    let delta: f64 = label.indices().map(|(j, s)| s * 3.0 * params.p[j].powi(2) * others[j]).sum();
    let kkk = k1 * k2 * k3;
    let v = |d: f64| if d == 0.0 { None } else { Some(cubes / d + delta / (kkk * d)) };
    [v(label.signed_sum(params.k)), v(label.signed_sum(params.p))]
}

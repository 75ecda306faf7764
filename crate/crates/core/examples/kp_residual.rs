//! Checks that every preset satisfies the KPII equation at random points.

use kpii_stem::catalog::PRESETS;
use kpii_stem::verification::residual::{DEFAULT_BOX, RESIDUAL_TOL};
use kpii_stem::verification::{kp_residual, random_points};

fn main() -> kpii_stem::Result<()> {
    let points = random_points(1, 1000, DEFAULT_BOX);
    for preset in PRESETS {
        let report = kp_residual(&preset.solution()?.tau, &points, RESIDUAL_TOL)?;
        println!("{:<9} max |R| = {:.3e}  passed = {}", preset.name, report.max_abs_residual, report.passed());
    }
    Ok(())
}

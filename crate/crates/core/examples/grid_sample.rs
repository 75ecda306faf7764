//! Samples u on a grid and prints a coarse character plot.

use kpii_stem::catalog::find_preset;
use kpii_stem::cli::{sample_grid, Grid};

fn main() -> kpii_stem::Result<()> {
    let sol = find_preset("c2_1").unwrap().solution()?;
    let grid: Grid = "-60,20,72,-30,30,30".parse().unwrap();
    let values = sample_grid(&sol.tau, -2.0, &grid)?;
    let max = values.iter().copied().fold(0.0, f64::max);
    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    for row in values.chunks(grid.x.2).rev() {
        let line: String = row.iter().map(|u| shades[((u / max) * 9.0).round() as usize]).collect();
        println!("{line}");
    }
    Ok(())
}

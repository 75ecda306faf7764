//! Generic 3-soliton solutions converging to each resonant case.

use kpii_stem::catalog::PRESETS;
use kpii_stem::verification::limit_ladder;
use kpii_stem::verification::limits::DEFAULT_LADDER;

fn main() -> kpii_stem::Result<()> {
    for preset in PRESETS {
        let ladder = limit_ladder(&preset.solution()?, &DEFAULT_LADDER, 200, 7)?;
        let devs: Vec<String> = ladder.rungs.iter().map(|r| format!("{:.2e}", r.deviation)).collect();
        println!("{:<9} {}", preset.name, devs.join("  "));
    }
    Ok(())
}

//! Resolves every preset and prints its parameters and resonance class.

use kpii_stem::catalog::{C2_2_INADMISSIBLE, PRESETS};

fn main() -> kpii_stem::Result<()> {
    for preset in PRESETS {
        let sol = preset.solution()?;
        let kinds: Vec<String> = sol.resonance.pairs.iter().map(|k| format!("{k:?}")).collect();
        println!(
            "{:<9} p = {:?}  a12 = {:?}  pairs = {}  terms = {}",
            preset.name,
            sol.params.p,
            sol.a12(),
            kinds.join("/"),
            sol.template.iter().map(|t| t.name()).collect::<Vec<_>>().join(" + ")
        );
    }
    match C2_2_INADMISSIBLE.solution() {
        Ok(_) => println!("{} unexpectedly admissible", C2_2_INADMISSIBLE.name),
        Err(e) => println!("{}: {e}", C2_2_INADMISSIBLE.name),
    }
    Ok(())
}

//! Prints the asymptotic arms of a case and the velocity of every arm.

use kpii_stem::catalog::find_preset;
use kpii_stem::geometry::{arm_catalog, velocity_table};

fn main() -> kpii_stem::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "c2_1".into());
    let sol = find_preset(&name).expect("unknown preset").solution()?;
    let catalog = arm_catalog(&sol)?;
    for (side, arms) in [("t -> -inf", &catalog.before), ("t -> +inf", &catalog.after)] {
        println!("{side}");
        for a in arms {
            println!("  {:<8} {:<12} amplitude {:.6}", a.region.to_string(), a.arm.label.to_string(), a.arm.amplitude);
        }
    }
    println!("stem: {} before, {} after", catalog.stem_past.arm.label, catalog.stem_future.arm.label);
    for row in velocity_table(&sol)? {
        println!("  {:<12} vx = {:?}  vy = {:?}", row.label.to_string(), row.vx, row.vy);
    }
    Ok(())
}

//! Traces ridges of u and compares them with the arm trajectories.

use kpii_stem::catalog::find_preset;
use kpii_stem::geometry::StemGeometry;
use kpii_stem::verification::{arm_ridge, stem_ridge_value, MatchOptions};

fn main() -> kpii_stem::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "w2".into());
    let sol = find_preset(&name).expect("unknown preset").solution()?;
    let geo = StemGeometry::new(&sol)?;
    for t in [-20.0, 20.0] {
        for arm in geo.catalog.arms(t) {
            let r = arm_ridge(&geo, arm, t, &MatchOptions::default())?;
            println!("t={t:5.1}  {:<12} fitted-line distance {:.2e}", arm.arm.label.to_string(), r.distance);
        }
        let stem = geo.species(t).arm;
        let crest = stem_ridge_value(&geo, t)?;
        println!("t={t:5.1}  stem {} crest {:.7} (amplitude {:.7})", stem.label, crest.value, stem.amplitude);
    }
    Ok(())
}

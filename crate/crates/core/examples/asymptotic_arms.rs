//! Compares u across each arm with the arm's line-soliton profile.

use kpii_stem::catalog::find_preset;
use kpii_stem::geometry::StemGeometry;
use kpii_stem::verification::asymptotic::negative_control_pair;
use kpii_stem::verification::{asymptotic_match, negative_control, MatchOptions};

fn main() -> kpii_stem::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "c3_1".into());
    let sol = find_preset(&name).expect("unknown preset").solution()?;
    let geo = StemGeometry::new(&sol)?;
    let opts = MatchOptions::default();
    for t in [-20.0, 20.0] {
        for arm in geo.catalog.arms(t) {
            let r = asymptotic_match(&geo, arm, t, &opts)?;
            println!("t={t:5.1}  {:<12} deviation {:.3e}", arm.arm.label.to_string(), r.deviation);
        }
        if let Some((big, small)) = negative_control_pair(geo.catalog.arms(t)) {
            let d = negative_control(&geo, &big, &small.arm, t, &opts)?;
            println!("t={t:5.1}  {} section vs {} profile: {d:.3}", big.arm.label, small.arm.label);
        }
    }
    Ok(())
}

//! Stem endpoints and length over time, against the closed-form length.

use kpii_stem::catalog::find_preset;
use kpii_stem::geometry::StemGeometry;

fn main() -> kpii_stem::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "c2_1".into());
    let sol = find_preset(&name).expect("unknown preset").solution()?;
    let geo = StemGeometry::new(&sol)?;
    for t in [-40.0, -20.0, -10.0, -3.0, 3.0, 10.0, 20.0, 40.0] {
        let r = geo.report(t)?;
        println!(
            "t={t:6.1}  {:<12} length {:12.6}  formula {:>12}  midpoint u {:.6}",
            r.stem.to_string(),
            r.length,
            r.length_formula.map_or("-".into(), |l| format!("{l:.6}")),
            r.midpoint_amplitude
        );
    }
    Ok(())
}

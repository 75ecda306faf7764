//! Extremum of u along the stem, which may be a maximum or a plateau minimum.

use kpii_stem::catalog::find_preset;
use kpii_stem::geometry::StemGeometry;

fn main() -> kpii_stem::Result<()> {
    let sol = find_preset("c2_1").unwrap().solution()?;
    let geo = StemGeometry::new(&sol)?;
    for t in [-4.0, -2.0, 1.0, 4.0] {
        match geo.stem_extremum(t)? {
            Some(e) => println!("t={t:4.1}  {:?} u = {:.9} at ({:.4}, {:.4})", e.kind, e.u, e.point[0], e.point[1]),
            None => println!("t={t:4.1}  no interior extremum"),
        }
    }
    Ok(())
}

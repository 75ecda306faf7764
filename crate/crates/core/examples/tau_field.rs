//! Evaluates a two-term tau function and its field derivatives.

use kpii_stem::tau::{ExpSumTau, ExpTerm, MultiIndex, Point};

fn main() -> kpii_stem::Result<()> {
    let (k, p) = (1.5f64, 0.5f64);
    let w = -(k.powi(4) + 3.0 * p * p) / k;
    let tau = ExpSumTau::new(vec![ExpTerm::constant(1.0), ExpTerm::new(1.0, k, p, w, 0.0)])?;
    let idx = [MultiIndex::new(1, 0, 0), MultiIndex::new(0, 2, 0), MultiIndex::new(4, 0, 0)];
    for x in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let pt = Point::new(x, 0.0, 0.0);
        let s = tau.eval_partials(pt, &idx)?;
        let d = s.partials.unwrap();
        println!(
            "x={x:5.1}  ln f={:9.5}  u={:.6}  u_x={:+.6}  u_yy={:+.6}  u_xxxx={:+.6}",
            tau.log_eval(pt)?,
            s.u,
            d[&idx[0]],
            d[&idx[1]],
            d[&idx[2]]
        );
    }
    println!("peak amplitude k^2/2 = {}", k * k / 2.0);
    Ok(())
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::tau::{ExpSumTau, MultiIndex, Point};

pub const RESIDUAL_TOL: f64 = 1e-8;

const U_X: MultiIndex = MultiIndex::new(1, 0, 0);
const U_XX: MultiIndex = MultiIndex::new(2, 0, 0);
const U_XXXX: MultiIndex = MultiIndex::new(4, 0, 0);
const U_YY: MultiIndex = MultiIndex::new(0, 2, 0);
const U_XT: MultiIndex = MultiIndex::new(1, 0, 1);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max_abs_residual: f64,
    pub n_points: usize,
    pub tol: f64,
    pub points_exceeding_tol: Vec<(Point, f64)>,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.points_exceeding_tol.is_empty()
    }
}

/// `u_tx + 6u_x² + 6u u_xx + u_xxxx + 3u_yy` at one point.
pub fn residual_at(tau: &ExpSumTau, pt: Point) -> Result<f64> {
    let s = tau.eval_partials(pt, &[U_X, U_XX, U_XXXX, U_YY, U_XT])?;
    let d = s.partials.as_ref().expect("partials requested");
    let u = s.u;
    Ok(d[&U_XT] + 6.0 * d[&U_X] * d[&U_X] + 6.0 * u * d[&U_XX] + d[&U_XXXX] + 3.0 * d[&U_YY])
}

pub fn kp_residual(tau: &ExpSumTau, points: &[Point], tol: f64) -> Result<ResidualReport> {
    let values: Vec<f64> = points.par_iter().map(|p| residual_at(tau, *p)).collect::<Result<_>>()?;
    let max_abs_residual = values.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let points_exceeding_tol =
        points.iter().zip(&values).filter(|(_, r)| r.abs() > tol || r.is_nan()).map(|(p, r)| (*p, *r)).collect();
    Ok(ResidualReport { max_abs_residual, n_points: points.len(), tol, points_exceeding_tol })
}

/// Uniform points in the box `[x0,x1] × [y0,y1] × [t0,t1]`.
pub fn random_points(seed: u64, n: usize, bounds: [(f64, f64); 3]) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let [x, y, t] = bounds.map(|(lo, hi)| rng.gen_range(lo..=hi));
            Point::new(x, y, t)
        })
        .collect()
}

/// The default sampling box `[−50,50]² × [−10,10]`.
pub const DEFAULT_BOX: [(f64, f64); 3] = [(-50.0, 50.0), (-50.0, 50.0), (-10.0, 10.0)];

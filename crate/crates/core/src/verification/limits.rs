//! Resonant templates as limits of the generic 3-soliton.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    build_solution, make_generic, phase_shift_parts, resolve_constraints, CaseId, CaseSpec, RawParams,
    ResonantSolution, SolitonParams,
};
use crate::error::{Error, Result};
use crate::tau::Point;

pub const LIMIT_TOL: f64 = 1e-4;
/// Half-width of the phase cube `|ξ_j| ≤ Ξ` the sample points are drawn from.
pub const PHASE_BOX: f64 = 1.0;
pub const DEFAULT_LADDER: [f64; 5] = [1e2, 1e3, 1e4, 1e5, 1e6];
/// Random directions tried when the least-norm direction is unusable.
const MAX_CANDIDATES: usize = 200;
const EPS_START: f64 = 1e-11;

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// `+1` drives `a_ij → ∞`, `−1` drives `a_ij → 0`, `0` keeps it finite.
pub fn drive_signs(case: CaseId) -> Option<[i8; 3]> {
    Some(match case {
        c if c.is_strong_two() => [0, 1, 1],
        CaseId::W2 => [0, -1, -1],
        CaseId::M2 => [0, 1, -1],
        CaseId::C3_1 => [-1, -1, -1],
        CaseId::C3_2 => [-1, 1, 1],
        _ => return None,
    })
}

/// `(ξ_j⁰ coefficient of ln a_13, of ln a_23)` subtracted to reach the template.
fn shifts(case: CaseId) -> [[f64; 2]; 3] {
    let z = [0.0, 0.0];
    match case {
        CaseId::C2_1 => [z, z, [1.0, 1.0]],
        CaseId::C2_2 => [[1.0, 0.0], z, [0.0, 1.0]],
        CaseId::C2_3 => [z, [0.0, 1.0], [1.0, 0.0]],
        CaseId::C2_4 | CaseId::C3_2 => [[1.0, 0.0], [0.0, 1.0], z],
        CaseId::M2 => [z, z, [1.0, 0.0]],
        _ => [z; 3],
    }
}

/// Gradients of `(N, D)` of `a_ij` with respect to `(k_1,k_2,k_3,p_1,p_2,p_3)`.
fn parts_gradient(z: &[f64; 6], i: usize, j: usize) -> ([f64; 6], [f64; 6]) {
    let (ki, kj, pi, pj) = (z[i], z[j], z[3 + i], z[3 + j]);
    let q = kj * pi - ki * pj;
    let m = ki * ki * kj - ki * kj * kj;
    let s = ki * ki * kj + ki * kj * kj;
    let mut dq = [0.0; 6];
    dq[i] = -pj;
    dq[j] = pi;
    dq[3 + i] = kj;
    dq[3 + j] = -ki;
    let mut dm = [0.0; 6];
    dm[i] = 2.0 * ki * kj - kj * kj;
    dm[j] = ki * ki - 2.0 * ki * kj;
    let mut ds = [0.0; 6];
    ds[i] = 2.0 * ki * kj + kj * kj;
    ds[j] = ki * ki + 2.0 * ki * kj;
    let mut gn = [0.0; 6];
    let mut gd = [0.0; 6];
    for n in 0..6 {
        gn[n] = 2.0 * m * dm[n] - 2.0 * q * dq[n];
        gd[n] = 2.0 * s * ds[n] - 2.0 * q * dq[n];
    }
    (gn, gd)
}

fn dot(a: &[f64; 6], b: &[f64; 6]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Least-norm `v` with `G v = 1`, or `None` when `G Gᵀ` is singular.
fn least_norm(rows: &[[f64; 6]]) -> Option<[f64; 6]> {
    let n = rows.len();
    let mut m = vec![vec![0.0; n + 1]; n];
    for a in 0..n {
        for b in 0..n {
            m[a][b] = dot(&rows[a], &rows[b]);
        }
        m[a][n] = 1.0;
    }
    let scale = m.iter().map(|r| r[..n].iter().fold(0.0f64, |s, v| s.max(v.abs()))).fold(0.0, f64::max);
    for c in 0..n {
        let piv = (c..n).max_by(|x, y| m[*x][c].abs().total_cmp(&m[*y][c].abs()))?;
        if m[piv][c].abs() <= 1e-10 * scale {
            return None;
        }
        m.swap(c, piv);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..=n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    let w: Vec<f64> = (0..n).map(|r| m[r][n] / m[r][r]).collect();
    let mut v = [0.0; 6];
    for (row, wr) in rows.iter().zip(&w) {
        for k in 0..6 {
            v[k] += wr * row[k];
        }
    }
    Some(v)
}

/// A one-parameter family of generic solutions `z(ε) = z_0 + ε v` whose
/// driven phase shifts reach the case's resonant limits as `ε → 0⁺`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonantFamily {
    pub target: CaseSpec,
    pub base: SolitonParams,
    pub direction: [f64; 6],
    pub drive: [i8; 3],
    /// 0 for the least-norm direction, otherwise the random candidate used.
    pub candidate: usize,
}

impl ResonantFamily {
    /// Family toward `template`, usable down to the phase-shift scale `min_scale`.
    pub fn new(template: &ResonantSolution, seed: u64, min_scale: f64) -> Result<Self> {
        let case = template.spec.case;
        let drive =
            drive_signs(case).ok_or_else(|| Error::InadmissibleFamily(format!("{case} has no resonant limit")))?;
        let p = &template.params;
        let z = [p.k[0], p.k[1], p.k[2], p.p[0], p.p[1], p.p[2]];
        let mut rows = Vec::new();
        for (n, &(i, j)) in PAIRS.iter().enumerate() {
            let (gn, gd) = parts_gradient(&z, i, j);
            let (num, den) = phase_shift_parts(z[i], z[3 + i], z[j], z[3 + j]);
            match drive[n] {
                -1 => rows.push(gn.map(|g| g * den.signum())),
                1 => rows.push(gd.map(|g| g * num.signum())),
                _ => {}
            }
        }
        let mut fam = Self { target: template.spec, base: *p, direction: [0.0; 6], drive, candidate: 0 };
        if let Some(v) = least_norm(&rows) {
            fam.direction = v;
            if fam.admissible(&rows, min_scale) {
                return Ok(fam);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for c in 1..=MAX_CANDIDATES {
            fam.direction = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            fam.candidate = c;
            if fam.admissible(&rows, min_scale) {
                return Ok(fam);
            }
        }
        Err(Error::InadmissibleFamily(format!("no admissible direction toward {case}")))
    }

    fn admissible(&self, rows: &[[f64; 6]], min_scale: f64) -> bool {
        rows.iter().all(|r| dot(r, &self.direction) > 0.0) && self.bracket(min_scale).is_ok()
    }

    pub fn member(&self, eps: f64) -> Result<SolitonParams> {
        let z = [self.base.k[0], self.base.k[1], self.base.k[2], self.base.p[0], self.base.p[1], self.base.p[2]];
        let y: [f64; 6] = std::array::from_fn(|n| z[n] + eps * self.direction[n]);
        make_generic([y[0], y[1], y[2]], [y[3], y[4], y[5]], self.base.xi0)
    }

    /// Phase shifts `a_12, a_13, a_23` of the member at `ε`.
    pub fn shifts(&self, eps: f64) -> Result<[f64; 3]> {
        let m = self.member(eps)?;
        let mut out = [0.0; 3];
        for (n, &(i, j)) in PAIRS.iter().enumerate() {
            let (num, den) = phase_shift_parts(m.k[i], m.p[i], m.k[j], m.p[j]);
            let a = num / den;
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::InadmissibleFamily(format!("a_{}{} = {a} at eps = {eps}", i + 1, j + 1)));
            }
            out[n] = a;
        }
        Ok(out)
    }

    /// Smallest `±ln a_ij` over the driven pairs.
    pub fn drive_measure(&self, eps: f64) -> Result<f64> {
        let a = self.shifts(eps)?;
        Ok(self
            .drive
            .iter()
            .zip(a)
            .filter(|(d, _)| **d != 0)
            .map(|(d, a)| f64::from(*d) * a.ln())
            .fold(f64::INFINITY, f64::min))
    }

    fn bracket(&self, scale: f64) -> Result<(f64, f64)> {
        let target = scale.ln();
        let mut lo = EPS_START;
        if self.drive_measure(lo)? <= target {
            return Err(Error::InadmissibleFamily(format!("scale {scale} not reached at eps = {lo}")));
        }
        let step = 0.5f64.exp();
        for _ in 0..200 {
            let hi = lo * step;
            if self.drive_measure(hi)? < target {
                return Ok((lo, hi));
            }
            lo = hi;
        }
        Err(Error::InadmissibleFamily(format!("scale {scale} never bracketed")))
    }

    /// `ε` at which every driven phase shift has reached `scale`.
    pub fn eps_for(&self, scale: f64) -> Result<f64> {
        let target = scale.ln();
        let (mut lo, mut hi) = self.bracket(scale)?;
        for _ in 0..100 {
            let mid = (lo * hi).sqrt();
            if self.drive_measure(mid)? > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo * hi).sqrt())
    }

    /// The generic member at `ε` with the template's phase shifts applied.
    pub fn shifted_generic(&self, eps: f64) -> Result<ResonantSolution> {
        let mut m = self.member(eps)?;
        let a = self.shifts(eps)?;
        let (l13, l23) = (a[1].ln(), a[2].ln());
        for (j, [c13, c23]) in shifts(self.target.case).iter().enumerate() {
            m.xi0[j] -= c13 * l13 + c23 * l23;
        }
        build_solution(&m, CaseSpec::first(CaseId::Generic))
    }
}

/// Sup of `|u_a − u_b|` over the points.
pub fn limit_convergence(a: &ResonantSolution, b: &ResonantSolution, points: &[Point]) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in points {
        worst = worst.max((a.u(*p)? - b.u(*p)?).abs());
    }
    Ok(worst)
}

/// Points whose phases `ξ_j` fill the cube `|ξ_j| ≤ half_width`.
pub fn phase_box_points(params: &SolitonParams, n: usize, half_width: f64, seed: u64) -> Result<Vec<Point>> {
    let w = params.omega();
    let m = [[params.k[0], params.p[0], w[0]], [params.k[1], params.p[1], w[1]], [params.k[2], params.p[2], w[2]]];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det.abs() < 1e-12 {
        return Err(Error::DegenerateParameter("phases are not independent".into()));
    }
    let solve = |rhs: [f64; 3]| {
        let col = |c: usize| {
            let mut mm = m;
            for r in 0..3 {
                mm[r][c] = rhs[r];
            }
            mm[0][0] * (mm[1][1] * mm[2][2] - mm[1][2] * mm[2][1])
                - mm[0][1] * (mm[1][0] * mm[2][2] - mm[1][2] * mm[2][0])
                + mm[0][2] * (mm[1][0] * mm[2][1] - mm[1][1] * mm[2][0])
        };
        Point::new(col(0) / det, col(1) / det, col(2) / det)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| {
            let xi: [f64; 3] = std::array::from_fn(|j| rng.gen_range(-half_width..=half_width) - params.xi0[j]);
            solve(xi)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitRung {
    pub scale: f64,
    pub eps: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitLadder {
    pub family: ResonantFamily,
    pub rungs: Vec<LimitRung>,
}

impl LimitLadder {
    pub fn final_deviation(&self) -> f64 {
        self.rungs.last().map_or(f64::NAN, |r| r.deviation)
    }

    /// Deviations non-increasing over the last `n` rungs.
    pub fn monotone_tail(&self, n: usize) -> bool {
        let tail = &self.rungs[self.rungs.len().saturating_sub(n)..];
        tail.windows(2).all(|w| w[1].deviation <= w[0].deviation)
    }
}

pub fn limit_ladder(template: &ResonantSolution, scales: &[f64], n_points: usize, seed: u64) -> Result<LimitLadder> {
    let min_scale = scales.iter().copied().fold(f64::INFINITY, f64::min);
    let family = ResonantFamily::new(template, seed, min_scale)?;
    let points = phase_box_points(&template.params, n_points, PHASE_BOX, seed)?;
    let rungs = scales
        .iter()
        .map(|&scale| {
            let eps = family.eps_for(scale)?;
            let generic = family.shifted_generic(eps)?;
            Ok(LimitRung { scale, eps, deviation: limit_convergence(&generic, template, &points)? })
        })
        .collect::<Result<_>>()?;
    Ok(LimitLadder { family, rungs })
}

/// Deviation of a generic solution from the template it is meant to
/// approximate, with that template's phase shifts applied.
pub fn intent_deviation(generic: &ResonantSolution, intent: CaseSpec, n_points: usize, seed: u64) -> Result<f64> {
    let p = &generic.params;
    let template =
        build_solution(&resolve_constraints(&RawParams { k: p.k, p3: p.p[2], xi0: p.xi0 }, intent)?, intent)?;
    let family = ResonantFamily {
        target: intent,
        base: *p,
        direction: [0.0; 6],
        drive: drive_signs(intent.case).unwrap_or([0; 3]),
        candidate: 0,
    };
    let shifted = family.shifted_generic(0.0)?;
    let points = phase_box_points(&template.params, n_points, PHASE_BOX, seed)?;
    limit_convergence(&shifted, &template, &points)
}

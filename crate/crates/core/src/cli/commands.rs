use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{CliError, Command, Format, Scenario, Suite, EXIT_OK, EXIT_VERIFY_FAILED, VERSION};
use crate::catalog::{CaseId, ResonantSolution};
use crate::error::Result;
use crate::geometry::{arm_catalog, velocity_table, ArmDescriptor, ArmLabel, Line, Section, StemGeometry};
use crate::tau::{ExpSumTau, Point};
use crate::verification::asymptotic::{negative_control_pair, ASYMPTOTIC_TOL, NEGATIVE_CONTROL_MIN};
use crate::verification::limits::{intent_deviation, DEFAULT_LADDER, LIMIT_TOL};
use crate::verification::residual::{DEFAULT_BOX, RESIDUAL_TOL};
use crate::verification::{
    arm_ridge, asymptotic_match, kp_residual, limit_ladder, negative_control, random_points, stem_ridge_value,
    MatchOptions, RIDGE_TOL,
};

/// Regular sampling grid, `n` points per axis including both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x: (f64, f64, usize),
    pub y: (f64, f64, usize),
}

impl Grid {
    fn coord(axis: (f64, f64, usize), i: usize) -> f64 {
        if axis.2 == 1 {
            axis.0
        } else {
            axis.0 + (axis.1 - axis.0) * i as f64 / (axis.2 - 1) as f64
        }
    }

    pub fn x_at(&self, i: usize) -> f64 {
        Self::coord(self.x, i)
    }

    pub fn y_at(&self, j: usize) -> f64 {
        Self::coord(self.y, j)
    }
}

impl FromStr for Grid {
    type Err = String;

    /// `xmin,xmax,nx,ymin,ymax,ny`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err("expected xmin,xmax,nx,ymin,ymax,ny".into());
        }
        let bound = |v: &str| -> std::result::Result<f64, String> {
            v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| format!("bad grid bound {v:?}"))
        };
        let count = |v: &str| -> std::result::Result<usize, String> {
            v.parse::<usize>().ok().filter(|n| *n > 0).ok_or_else(|| format!("bad grid count {v:?}"))
        };
        let axis = |i: usize| -> std::result::Result<(f64, f64, usize), String> {
            let (lo, hi) = (bound(parts[i])?, bound(parts[i + 1])?);
            if lo > hi {
                return Err(format!("grid range {lo} > {hi}"));
            }
            Ok((lo, hi, count(parts[i + 2])?))
        };
        Ok(Grid { x: axis(0)?, y: axis(3)? })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSample {
    pub version: String,
    pub scenario: Scenario,
    pub t: f64,
    pub grid: Grid,
    /// Row-major: `values[j * nx + i]` is `u(x_i, y_j)`.
    pub values: Vec<f64>,
}

/// `u` at every grid node, rows of constant `y`.
pub fn sample_grid(tau: &ExpSumTau, t: f64, grid: &Grid) -> Result<Vec<f64>> {
    let rows: Vec<Vec<f64>> = (0..grid.y.2)
        .into_par_iter()
        .map(|j| {
            let y = grid.y_at(j);
            (0..grid.x.2).map(|i| tau.u(Point::new(grid.x_at(i), y, t))).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(rows.concat())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub value: f64,
    /// `"<="` or `">="`.
    pub comparison: String,
    pub bound: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(suite: &str, name: String, value: f64, bound: f64) -> Self {
        let passed = value <= bound;
        Self { suite: suite.into(), name, value, comparison: "<=".into(), bound, passed }
    }

    fn at_least(suite: &str, name: String, value: f64, bound: f64) -> Self {
        let passed = value >= bound;
        Self { suite: suite.into(), name, value, comparison: ">=".into(), bound, passed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub scenario: Scenario,
    pub suites: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Shortest text that parses back to the same `f64`.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn csv_header(s: &Scenario, t: f64) -> String {
    format!("# kpii-stem v{VERSION} case={} t={}\n", s.case_id, num(t))
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> std::result::Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::io(format!("cannot write output: {e}"))),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load(path: &std::path::Path) -> std::result::Result<(Scenario, ResonantSolution), CliError> {
    let scenario = Scenario::load(path)?;
    let sol = scenario.solution()?;
    Ok((scenario, sol))
}

fn geometry<'a>(scenario: &Scenario, sol: &'a ResonantSolution) -> std::result::Result<StemGeometry<'a>, CliError> {
    if sol.spec.case == CaseId::Generic {
        return Err(CliError::usage("stem geometry needs a resonant case_id"));
    }
    Ok(StemGeometry::new(sol)?.with_t_min(scenario.t_min))
}

pub(super) fn execute(cmd: &Command, out: &mut dyn Write) -> std::result::Result<i32, CliError> {
    match cmd {
        Command::Build { scenario } => {
            let (scenario, sol) = load(&scenario.scenario)?;
            emit(out, &None, &to_json(&build_json(&scenario, &sol)?))?;
            Ok(EXIT_OK)
        }
        Command::Sample { scenario, t, grid, out: path, format } => {
            let (scenario, sol) = load(&scenario.scenario)?;
            let values = sample_grid(&sol.tau, *t, grid)?;
            let text = match format {
                Format::Json => to_json(&GridSample { version: VERSION.into(), scenario, t: *t, grid: *grid, values }),
                Format::Csv => {
                    let mut s = csv_header(&scenario, *t);
                    s.push_str("x,y,u\n");
                    for j in 0..grid.y.2 {
                        for i in 0..grid.x.2 {
                            let u = values[j * grid.x.2 + i];
                            let _ = writeln!(s, "{},{},{}", num(grid.x_at(i)), num(grid.y_at(j)), num(u));
                        }
                    }
                    s
                }
            };
            emit(out, path, &text)?;
            Ok(EXIT_OK)
        }
        Command::Stem { scenario, t, out: path, format } => {
            let (scenario, sol) = load(&scenario.scenario)?;
            let geo = geometry(&scenario, &sol)?;
            let reports = t.iter().map(|&t| geo.report(t)).collect::<Result<Vec<_>>>()?;
            let text = match format {
                Format::Json => to_json(&json!({
                    "version": VERSION,
                    "scenario": scenario,
                    "reports": reports,
                })),
                Format::Csv => {
                    let mut s = format!("# kpii-stem v{VERSION} case={}\n", scenario.case_id);
                    s.push_str("t,stem,ax,ay,bx,by,length,length_formula,mid_x,mid_y,midpoint_amplitude,valid\n");
                    for r in &reports {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{},{},{},{},{},{},{}",
                            num(r.t),
                            r.stem,
                            num(r.endpoint_a[0]),
                            num(r.endpoint_a[1]),
                            num(r.endpoint_b[0]),
                            num(r.endpoint_b[1]),
                            num(r.length),
                            opt_num(r.length_formula),
                            num(r.midpoint[0]),
                            num(r.midpoint[1]),
                            num(r.midpoint_amplitude),
                            r.valid
                        );
                    }
                    s
                }
            };
            emit(out, path, &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify { scenario, suite, tol, out: path } => {
            if let Some(tol) = tol {
                if !(tol.is_finite() && *tol > 0.0) {
                    return Err(CliError::usage(format!("--tol must be positive, got {tol}")));
                }
            }
            let (scenario, sol) = load(&scenario.scenario)?;
            let cert = verify(&scenario, &sol, *suite, *tol)?;
            emit(out, path, &to_json(&cert))?;
            Ok(if cert.passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Section { scenario, t, arm, line, perp, range, n, out: path } => {
            let (scenario, sol) = load(&scenario.scenario)?;
            let text = section(&scenario, &sol, *t, arm.as_deref(), line.as_deref(), *perp, range.as_deref(), *n)?;
            emit(out, path, &text)?;
            Ok(EXIT_OK)
        }
    }
}

fn arm_json(arm: &ArmDescriptor) -> serde_json::Value {
    json!({
        "label": arm.label.to_string(),
        "amplitude": arm.amplitude,
        "K": arm.k_sum,
        "P": arm.p_sum,
        "Omega": arm.omega_sum,
        "velocity": arm.velocity,
    })
}

fn build_json(scenario: &Scenario, sol: &ResonantSolution) -> std::result::Result<serde_json::Value, CliError> {
    let pairs: Vec<_> = crate::catalog::ResonanceClass::PAIRS
        .iter()
        .map(|&(i, j)| json!({ "pair": [i, j], "kind": sol.resonance.pair(i, j) }))
        .collect();
    let terms: Vec<_> = sol
        .template
        .iter()
        .zip(sol.tau.terms())
        .map(|(t, e)| {
            json!({
                "name": t.name(),
                "mask": t.mask,
                "coeff": e.coeff,
                "K": e.kx,
                "P": e.py,
                "Omega": e.wt,
                "phase": e.phase,
            })
        })
        .collect();
    let mut doc = json!({
        "version": VERSION,
        "scenario": scenario,
        "case_id": sol.spec.case,
        "branch": sol.spec.branch,
        "params": {
            "k": sol.params.k,
            "p": sol.params.p,
            "xi0": sol.params.xi0,
            "omega": sol.params.omega(),
        },
        "a12": sol.a12(),
        "resonance": { "pairs": pairs, "overall": sol.resonance.overall() },
        "terms": terms,
    });
    if sol.spec.case != CaseId::Generic {
        let catalog = arm_catalog(sol)?;
        let side = |arms: &[crate::geometry::CatalogArm]| -> Vec<serde_json::Value> {
            arms.iter()
                .map(|a| {
                    let mut v = arm_json(&a.arm);
                    v["region"] = json!(a.region);
                    v
                })
                .collect()
        };
        doc["catalog"] = json!({
            "before": side(&catalog.before),
            "after": side(&catalog.after),
            "stem_past": arm_json(&catalog.stem_past.arm),
            "stem_future": arm_json(&catalog.stem_future.arm),
            "heuristic_regions": catalog.heuristic_regions,
        });
        let table: Vec<_> = velocity_table(sol)?
            .iter()
            .map(|r| json!({ "label": r.label.to_string(), "vx": r.vx, "vy": r.vy, "amplitude": r.amplitude }))
            .collect();
        doc["velocity_table"] = json!(table);
    }
    Ok(doc)
}

const RESIDUAL_POINTS: usize = 1000;
const RESIDUAL_SEED: u64 = 1;
const LIMIT_POINTS: usize = 200;
const LIMIT_SEED: u64 = 7;
/// Check time for the asymptotic and ridge suites, and the later time
/// used to confirm the deviation does not grow.
const CHECK_T: f64 = 20.0;
const LATER_T: f64 = 40.0;
/// Deviations below this are roundoff and count as not growing.
const ROUNDOFF_FLOOR: f64 = 1e-10;
const STEM_VALUE_TOL: f64 = 1e-3;
const STEM_VALUE_T: [f64; 2] = [10.0, 20.0];

fn verify(
    scenario: &Scenario,
    sol: &ResonantSolution,
    suite: Suite,
    tol: Option<f64>,
) -> std::result::Result<Certificate, CliError> {
    let suites = match suite {
        Suite::All if sol.spec.case != CaseId::Generic => {
            vec![Suite::Residual, Suite::Limits, Suite::Asymptotics, Suite::Ridge]
        }
        Suite::All if scenario.intent.is_some() => vec![Suite::Residual, Suite::Limits],
        Suite::All => vec![Suite::Residual],
        s => vec![s],
    };
    let mut checks = Vec::new();
    let mut names = Vec::new();
    for s in &suites {
        match s {
            Suite::Residual => {
                names.push("residual".to_string());
                let points = random_points(RESIDUAL_SEED, RESIDUAL_POINTS, DEFAULT_BOX);
                let tol = tol.unwrap_or(RESIDUAL_TOL);
                let report = kp_residual(&sol.tau, &points, tol)?;
                checks.push(Check::at_most(
                    "residual",
                    format!("max |R| over {RESIDUAL_POINTS} points"),
                    report.max_abs_residual,
                    tol,
                ));
            }
            Suite::Limits => {
                names.push("limits".to_string());
                checks.extend(limit_checks(scenario, sol, tol.unwrap_or(LIMIT_TOL))?);
            }
            Suite::Asymptotics => {
                names.push("asymptotics".to_string());
                checks.extend(asymptotic_checks(&geometry(scenario, sol)?, tol.unwrap_or(ASYMPTOTIC_TOL))?);
            }
            Suite::Ridge => {
                names.push("ridge".to_string());
                checks.extend(ridge_checks(&geometry(scenario, sol)?, tol.unwrap_or(RIDGE_TOL))?);
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(Certificate { version: VERSION.into(), scenario: scenario.clone(), suites: names, checks, passed })
}

fn limit_checks(scenario: &Scenario, sol: &ResonantSolution, tol: f64) -> std::result::Result<Vec<Check>, CliError> {
    if sol.spec.case == CaseId::Generic {
        let intent =
            scenario.intent.ok_or_else(|| CliError::usage("the limits suite needs a resonant case_id or an intent"))?;
        let spec = crate::catalog::CaseSpec::new(intent, scenario.branch);
        let d = intent_deviation(sol, spec, LIMIT_POINTS, LIMIT_SEED)?;
        return Ok(vec![Check::at_most("limits", format!("deviation from {intent}"), d, tol)]);
    }
    let ladder = limit_ladder(sol, &DEFAULT_LADDER, LIMIT_POINTS, LIMIT_SEED)?;
    let mut checks = vec![Check::at_most(
        "limits",
        format!("deviation at A = {:e}", DEFAULT_LADDER[DEFAULT_LADDER.len() - 1]),
        ladder.final_deviation(),
        tol,
    )];
    let tail = &ladder.rungs[ladder.rungs.len() - 3..];
    let growth = tail.windows(2).map(|w| w[1].deviation - w[0].deviation).fold(f64::NEG_INFINITY, f64::max);
    checks.push(Check::at_most("limits", "largest increase over the last 3 rungs".into(), growth, 0.0));
    Ok(checks)
}

fn asymptotic_checks(geo: &StemGeometry, tol: f64) -> Result<Vec<Check>> {
    let opts = MatchOptions::default();
    let mut checks = Vec::new();
    for sign in [-1.0, 1.0] {
        let (t, later) = (sign * CHECK_T, sign * LATER_T);
        let arms = geo.catalog.arms(t);
        for arm in arms {
            let label = arm.arm.label;
            let now = asymptotic_match(geo, arm, t, &opts)?.deviation;
            checks.push(Check::at_most("asymptotics", format!("{label} at t={t}"), now, tol));
            let then = asymptotic_match(geo, arm, later, &opts)?.deviation;
            checks.push(Check::at_most("asymptotics", format!("{label} at t={later}"), then, now.max(ROUNDOFF_FLOOR)));
        }
        if let Some((big, small)) = negative_control_pair(arms) {
            let d = negative_control(geo, &big, &small.arm, t, &opts)?;
            let name = format!("{} section vs {} profile at t={t}", big.arm.label, small.arm.label);
            checks.push(Check::at_least("asymptotics", name, d, NEGATIVE_CONTROL_MIN));
        }
        let stem = geo.species(t).arm;
        let mid = geo.report(t)?.midpoint_amplitude;
        let name = format!("stem {} midpoint amplitude at t={t}", stem.label);
        checks.push(Check::at_most("asymptotics", name, (mid - stem.amplitude).abs(), tol));
    }
    Ok(checks)
}

fn ridge_checks(geo: &StemGeometry, tol: f64) -> Result<Vec<Check>> {
    let opts = MatchOptions::default();
    let mut checks = Vec::new();
    for sign in [-1.0, 1.0] {
        let t = sign * CHECK_T;
        for arm in geo.catalog.arms(t) {
            let r = arm_ridge(geo, arm, t, &opts)?;
            checks.push(Check::at_most("ridge", format!("{} ridge line at t={t}", arm.arm.label), r.distance, tol));
        }
        for t in STEM_VALUE_T.map(|v| sign * v) {
            let stem = geo.species(t).arm;
            let v = stem_ridge_value(geo, t)?.value;
            let name = format!("stem {} ridge value at t={t}", stem.label);
            checks.push(Check::at_most("ridge", name, (v - stem.amplitude).abs(), STEM_VALUE_TOL));
        }
    }
    Ok(checks)
}

#[allow(clippy::too_many_arguments)]
fn section(
    scenario: &Scenario,
    sol: &ResonantSolution,
    t: f64,
    arm: Option<&str>,
    line: Option<&[f64]>,
    perp: bool,
    range: Option<&[f64]>,
    n: usize,
) -> std::result::Result<String, CliError> {
    let geo = if sol.spec.case == CaseId::Generic { None } else { Some(geometry(scenario, sol)?) };
    let need_geo = || geo.as_ref().ok_or_else(|| CliError::usage("--arm and --perp need a resonant case_id"));
    let anchor = match &geo {
        Some(g) => g.report(t)?.midpoint,
        None => [0.0, 0.0],
    };
    let mut default_half = 20.0;
    let (section_line, overlay): (Line, Option<ArmDescriptor>) = match (arm, line, perp) {
        (Some(label), None, false) => {
            let g = need_geo()?;
            let wanted: ArmLabel = label.parse().map_err(|_| CliError::usage(format!("bad arm label {label:?}")))?;
            let arms = g.catalog.all_arms();
            let found = arms
                .iter()
                .find(|a| a.label == wanted)
                .or_else(|| arms.iter().find(|a| a.label.same_species(&wanted)))
                .ok_or_else(|| CliError::usage(format!("arm {wanted} is not in the {} catalog", sol.spec.case)))?;
            if found.label.same_species(&g.species(t).arm.label) {
                default_half = g.report(t)?.length / 2.0;
            }
            (found.trajectory_line(t)?, Some(*found))
        }
        (None, Some(&[a, b, c]), false) => (Line::new(a, b, c), None),
        (None, None, true) => {
            let g = need_geo()?;
            let stem = g.species(t).arm;
            (stem.trajectory_line(t)?.perpendicular_through(anchor)?, Some(stem))
        }
        (None, Some(_), false) => return Err(CliError::usage("--line takes three numbers A,B,C")),
        _ => return Err(CliError::usage("give exactly one of --arm, --line A,B,C or --perp")),
    };
    let range = match range {
        Some(&[lo, hi]) if lo < hi => (lo, hi),
        Some(_) => return Err(CliError::usage("--range takes smin,smax with smin < smax")),
        None => (-default_half, default_half),
    };
    let sec = Section::new(section_line, anchor, t)?;
    let samples = sec.sample(sol, range, n)?;
    let mut s = csv_header(scenario, t);
    let l = sec.line;
    let _ = writeln!(
        s,
        "# line {},{},{} origin {},{}",
        num(l.a),
        num(l.b),
        num(l.c),
        num(sec.origin[0]),
        num(sec.origin[1])
    );
    if let Some(e) = sec.interior_extremum(sol, range, n)? {
        let kind = match e.kind {
            crate::geometry::ExtremumKind::Max => "max",
            crate::geometry::ExtremumKind::Min => "min",
        };
        let _ = writeln!(s, "# extremum {kind} s={} u={}", num(e.s), num(e.u));
    }
    s.push_str(if overlay.is_some() { "s,x,y,u,u_arm\n" } else { "s,x,y,u\n" });
    for (arc, u) in samples {
        let [x, y] = sec.at(arc);
        let _ = write!(s, "{},{},{},{}", num(arc), num(x), num(y), num(u));
        if let Some(a) = &overlay {
            let _ = write!(s, ",{}", num(a.profile(Point::new(x, y, t))));
        }
        s.push('\n');
    }
    Ok(s)
}

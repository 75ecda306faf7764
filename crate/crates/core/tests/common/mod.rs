#![allow(dead_code)]

use kpii_stem::catalog::{solution, Branch, CaseId, CaseSpec, Preset, RawParams, ResonantSolution, PRESETS};
use kpii_stem::geometry::StemGeometry;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The first preset of each case, in case order.
pub fn case_presets() -> Vec<Preset> {
    CaseId::RESONANT.iter().map(|c| *PRESETS.iter().find(|p| p.case == *c).expect("preset per case")).collect()
}

/// Admissible draws near a preset: each `k_j` scaled by up to 15% and `p_3`
/// shifted by up to 0.25, kept when both closed-form regimes still apply.
pub fn draws(preset: &Preset, branch: Branch, n: usize, seed: u64) -> Vec<ResonantSolution> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = CaseSpec::new(preset.case, branch);
    let mut out = Vec::new();
    for _ in 0..200 * n {
        if out.len() == n {
            break;
        }
        let k = preset.raw.k.map(|k| k * rng.gen_range(0.85..1.15));
        let base = if branch == Branch::First { preset.raw.p3 } else { -preset.raw.p3 };
        let p3 = base + rng.gen_range(-0.25..0.25);
        let Ok(sol) = solution(&RawParams::new(k, p3), spec) else { continue };
        let Ok(geo) = StemGeometry::new(&sol) else { continue };
        if geo.closed_form_applies(-1.0) && geo.closed_form_applies(1.0) {
            out.push(sol);
        }
    }
    assert_eq!(out.len(), n, "too few admissible draws for {}", preset.name);
    out
}

/// Along-stem midpoint amplitudes as functions of `t`, transcribed from the
/// reference closed forms: `(t < 0 curve, t > 0 curve)`.
pub fn midpoint_curve(case: CaseId, t: f64) -> Option<(f64, f64)> {
    let e = f64::exp;
    let s3 = 3f64.sqrt();
    Some(match case {
        CaseId::W2 => {
            let a = (30.0 * s3 * e(4.0 * t) + 6.0 * s3 * e(12.0 * t) + 30.0 * e(8.0 * t) + 54.0)
                / (3.0 * e(4.0 * t) + (e(8.0 * t) + 2.0) * s3).powi(2);
            let b = 6.0 * (5.0 * s3 * e(24.0 * t) + e(36.0 * t) + s3 + 13.0 * e(12.0 * t)) * e(12.0 * t)
                / (2.0 * s3 * e(24.0 * t) + s3 + 3.0 * e(12.0 * t)).powi(2);
            (a, b)
        }
        CaseId::M2 => {
            let a = 3.0
                * e(-1.5 * t)
                * (729.0 * e(-7.5 * t)
                    + 1053.0 * e(-6.0 * t) * s3
                    + 675.0 * e(-4.5 * t)
                    + 243.0 * e(-3.0 * t) * s3
                    + 144.0 * e(-1.5 * t)
                    + 4.0 * s3)
                / (2.0 * (s3 * e(-1.5 * t) + 54.0 * s3 * e(-4.5 * t) + 9.0 * e(-3.0 * t) + 3.0).powi(2));
            let b = (36.0 * e(-7.5 * t)
                + 144.0 * e(-6.0 * t)
                + 81.0 * e(-4.5 * t)
                + 25.0 * e(-3.0 * t)
                + 13.0 * e(-1.5 * t)
                + 1.0)
                / (2.0 * (9.0 * e(-4.5 * t) + e(-3.0 * t) + e(-1.5 * t) + 2.0).powi(2));
            (a, b)
        }
        CaseId::C3_1 => {
            let a = 2.0
                * e(-128.0 * t / 27.0)
                * (9.0 * e(-160.0 * t / 27.0) + 5.0 * e(-16.0 * t / 3.0) + 45.0 * e(-16.0 * t / 27.0) + 16.0)
                / (9.0 * (1.0 + 2.0 * e(-16.0 * t / 3.0) + e(-128.0 * t / 27.0)).powi(2));
            let b = 2.0 * (9.0 * e(-10.0 * t / 3.0) + 40.0 * e(-8.0 * t / 3.0) + 10.0 * e(-2.0 * t / 3.0) + 16.0)
                / (9.0 * (2.0 + e(-8.0 * t / 3.0) + e(-2.0 * t / 3.0)).powi(2));
            (a, b)
        }
        CaseId::C2_1 => {
            let al = |p: f64, q: f64| 35f64.powf(p) * 26f64.powf(q);
            let a1 = al(43.0 / 910.0, 867.0 / 910.0);
            let a2 = al(851.0 / 910.0, 59.0 / 910.0);
            let a3 = al(149.0 / 455.0, 306.0 / 455.0);
            let a4 = al(131.0 / 182.0, 51.0 / 182.0);
            let a5 = al(79.0 / 130.0, 51.0 / 130.0);
            let a6 = al(169.0 / 280.0, 111.0 / 280.0);
            let a7 = al(149.0 / 280.0, 131.0 / 280.0);
            let a8 = al(39.0 / 140.0, 101.0 / 140.0);
            let a9 = al(13.0 / 14.0, 1.0 / 14.0);
            let a10 = al(29.0 / 140.0, 111.0 / 140.0);
            let a11 = al(27.0 / 40.0, 13.0 / 40.0);
            let f1 = 2293200.0 * a1 * e(272.0 * t / 9.0)
                + 425880.0 * a2 * e(304.0 * t / 9.0)
                + 6604780.0 * a3 * e(64.0 * t / 3.0)
                + 5157880.0 * a4 * e(80.0 * t / 9.0)
                + 4022200.0 * a5 * e(112.0 * t / 9.0);
            let a = (f1 + 279897800.0)
                / (6084.0
                    * (a5 * e(112.0 * t / 9.0) + a4 * e(80.0 * t / 9.0) + 35.0 * a3 / 26.0 * e(64.0 * t / 3.0) + 70.0)
                        .powi(2));
            let f2 = a6 * e(520.0 * t / 9.0)
                + 35525.0 * a7 / 116792.0 * e(1040.0 * t / 9.0)
                + 595.0 * a8 / 1123.0 * e(78.0 * t)
                + 117.0 * a9 / 1123.0 * e(338.0 * t / 9.0)
                + 42875.0 * a10 / 379574.0 * e(1222.0 * t / 9.0)
                + 1521.0 * a11 / 78610.0;
            let b = 3719825200.0 * e(182.0 * t / 9.0) * f2
                / (1863225.0
                    * (a9 * e(520.0 * t / 9.0)
                        + 26.0 * a11 / 35.0 * e(182.0 * t / 9.0)
                        + 35.0 * a6 / 13.0 * e(78.0 * t)
                        + 26.0)
                        .powi(2));
            (a, b)
        }
        _ => return None,
    })
}

/// Richardson-extrapolated central difference of `f` at `x`.
pub fn richardson(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

pub struct CliOutput {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

pub fn kpii_stem(args: &[&str], envs: &[(&str, &str)]) -> CliOutput {
    let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_kpii-stem"));
    cmd.args(args).env_remove("KPII_STEM_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("run kpii-stem");
    CliOutput {
        code: out.status.code().expect("exit code"),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn repo_path(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

pub fn golden_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Scenario files shipped under `scenarios/`, sorted by name.
pub fn shipped_scenarios() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(repo_path("scenarios"))
        .expect("scenarios directory")
        .filter_map(|e| {
            let name = e.ok()?.file_name().into_string().ok()?;
            name.strip_suffix(".json").map(str::to_string)
        })
        .collect();
    names.sort();
    names
}

/// One golden command: output file name, arguments and expected exit code.
pub struct GoldenCase {
    pub file: String,
    pub args: Vec<String>,
    pub code: i32,
}

/// Golden commands for a shipped scenario.
pub fn golden_cases(name: &str) -> Vec<GoldenCase> {
    let scenario = repo_path(&format!("scenarios/{name}.json")).to_string_lossy().into_owned();
    let case = |suffix: &str, args: &[&str], code: i32| GoldenCase {
        file: format!("{name}.{suffix}"),
        args: [args[0], "--scenario", scenario.as_str()]
            .into_iter()
            .chain(args[1..].iter().copied())
            .map(str::to_string)
            .collect(),
        code,
    };
    match name {
        "c2_2_inadmissible" => vec![case("build.err", &["build"], 3)],
        "generic_corrupted" => vec![
            case("build.json", &["build"], 0),
            case("verify.json", &["verify", "--suite", "all"], 1),
            case("stem.err", &["stem", "--t", "5"], 2),
        ],
        _ => vec![
            case("build.json", &["build"], 0),
            case("stem.csv", &["stem", "--t", "-20,-5,-1,1,5,20"], 0),
            case("sample.csv", &["sample", "--t", "-2", "--grid", "-20,20,9,-20,20,9"], 0),
            case("section.csv", &["section", "--t", "5", "--perp", "--n", "41"], 0),
            case("verify.json", &["verify", "--suite", "all"], 0),
        ],
    }
}

/// Output a golden command is compared on: stdout, or stderr when it fails early.
pub fn golden_output(g: &GoldenCase) -> (i32, Vec<u8>) {
    let args: Vec<&str> = g.args.iter().map(String::as_str).collect();
    let out = kpii_stem(&args, &[]);
    let bytes = if g.file.ends_with(".err") { out.stderr.into_bytes() } else { out.stdout };
    (out.code, bytes)
}

mod common;

use common::{golden_cases, golden_output, golden_path, kpii_stem, repo_path, shipped_scenarios};
use kpii_stem::cli::Scenario;
use serde_json::Value;

fn scenario(name: &str) -> String {
    repo_path(&format!("scenarios/{name}.json")).to_string_lossy().into_owned()
}

/// Set `KPII_STEM_BLESS=1` to rewrite the golden files from the current build.
#[test]
fn golden_files() {
    let bless = std::env::var_os("KPII_STEM_BLESS").is_some();
    let names = shipped_scenarios();
    assert!(names.len() >= 10, "{names:?}");
    for name in names {
        for g in golden_cases(&name) {
            let (code, bytes) = golden_output(&g);
            assert_eq!(code, g.code, "{} exit code", g.file);
            let path = golden_path(&g.file);
            if bless {
                std::fs::create_dir_all(path.parent().unwrap()).unwrap();
                std::fs::write(&path, &bytes).unwrap();
            }
            let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert!(bytes == want, "{} differs from its golden file", g.file);
        }
    }
}

#[test]
fn output_is_identical_across_runs_and_thread_counts() {
    let s = scenario("w2");
    let args = ["sample", "--scenario", s.as_str(), "--t", "1.5", "--grid", "-30,30,61,-30,30,41", "--format", "json"];
    let one = kpii_stem(&args, &[("KPII_STEM_THREADS", "1")]);
    let many = kpii_stem(&args, &[("KPII_STEM_THREADS", "8")]);
    let again = kpii_stem(&args, &[]);
    assert_eq!(one.code, 0);
    assert!(one.stdout == many.stdout && one.stdout == again.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stem.csv");
    let s = scenario("m2");
    let direct = kpii_stem(&["stem", "--scenario", &s, "--t", "-10,10"], &[]);
    let to_file = kpii_stem(&["stem", "--scenario", &s, "--t", "-10,10", "--out", path.to_str().unwrap()], &[]);
    assert_eq!(to_file.code, 0);
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn build_round_trips_parameters_exactly() {
    for name in shipped_scenarios() {
        let out = kpii_stem(&["build", "--scenario", &scenario(&name)], &[]);
        if out.code != 0 {
            continue;
        }
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        let echoed = Scenario::from_json(&doc["scenario"].to_string()).unwrap();
        let params = echoed.params().unwrap();
        let read = |key: &str| -> Vec<f64> {
            doc["params"][key].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect()
        };
        for (key, want) in [("k", params.k), ("p", params.p), ("xi0", params.xi0)] {
            let got = read(key);
            for (g, w) in got.iter().zip(want) {
                assert_eq!(g.to_bits(), w.to_bits(), "{name} {key}");
            }
        }
        let original = Scenario::load(&repo_path(&format!("scenarios/{name}.json"))).unwrap();
        assert_eq!(echoed, original);
    }
}

#[test]
fn exit_code_contract() {
    let dir = tempfile::tempdir().unwrap();
    let short_k = dir.path().join("short.json");
    std::fs::write(&short_k, r#"{"case_id": "c2_1", "k": [-1, -2], "p3": 1}"#).unwrap();
    let out = kpii_stem(&["build", "--scenario", short_k.to_str().unwrap()], &[]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("missing field k[2]"), "{}", out.stderr);

    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, "{").unwrap();
    assert_eq!(kpii_stem(&["build", "--scenario", bad_json.to_str().unwrap()], &[]).code, 2);

    let missing = dir.path().join("missing.json");
    assert_eq!(kpii_stem(&["build", "--scenario", missing.to_str().unwrap()], &[]).code, 4);

    let s = scenario("c2_1");
    let unwritable = dir.path().join("no/such/dir/out.csv");
    let args = ["sample", "--scenario", s.as_str(), "--t", "0", "--grid", "0,1,2,0,1,2", "--out"];
    assert_eq!(kpii_stem(&[&args[..], &[unwritable.to_str().unwrap()]].concat(), &[]).code, 4);

    assert_eq!(kpii_stem(&["build", "--scenario", &scenario("c2_2_inadmissible")], &[]).code, 3);
    assert_eq!(kpii_stem(&["verify", "--scenario", &scenario("generic_corrupted"), "--suite", "limits"], &[]).code, 1);
    assert_eq!(kpii_stem(&["verify", "--scenario", &s, "--suite", "residual", "--tol", "1e-30"], &[]).code, 1);
    assert_eq!(kpii_stem(&["verify", "--scenario", &s, "--suite", "residual", "--tol", "-1"], &[]).code, 2);
    assert_eq!(kpii_stem(&["frobnicate"], &[]).code, 2);
    assert_eq!(kpii_stem(&["stem", "--scenario", &s], &[]).code, 2);
    assert_eq!(kpii_stem(&["section", "--scenario", &s, "--t", "1"], &[]).code, 2);
    assert_eq!(kpii_stem(&["section", "--scenario", &s, "--t", "1", "--arm", "S_{1+2}"], &[]).code, 2);
    assert_eq!(kpii_stem(&["build", "--scenario", &s], &[("KPII_STEM_THREADS", "zero")]).code, 2);
    assert_eq!(kpii_stem(&["--help"], &[]).code, 0);
    assert_eq!(kpii_stem(&["--version"], &[]).code, 0);
}

#[test]
fn section_reports_stem_extremum() {
    let s = scenario("c2_1");
    let out = kpii_stem(&["section", "--scenario", &s, "--t", "-2", "--arm", "^S_{1+2+3}"], &[]);
    assert_eq!(out.code, 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.starts_with("# extremum max")).expect(&text);
    let u: f64 = line.rsplit("u=").next().unwrap().parse().unwrap();
    assert!((u - 169.0 / 18.0).abs() < 1e-2, "{u}");
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "s,x,y,u,u_arm");
}

#[test]
fn explicit_line_section() {
    let s = scenario("w2");
    let out =
        kpii_stem(&["section", "--scenario", &s, "--t", "0", "--line", "1,0,-3", "--range", "-5,5", "--n", "11"], &[]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 11);
    for row in rows {
        let x: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!((x - 3.0).abs() < 1e-12);
    }
}

#[test]
fn csv_header_names_case_and_time() {
    let s = scenario("c3_1");
    let out = kpii_stem(&["sample", "--scenario", &s, "--t", "-2.5", "--grid", "0,1,2,0,1,2"], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), format!("# kpii-stem v{} case=c3_1 t=-2.5", env!("CARGO_PKG_VERSION")));
    assert_eq!(lines.next().unwrap(), "x,y,u");
    assert_eq!(lines.count(), 4);
}

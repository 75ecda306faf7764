mod common;

use kpii_stem::catalog::{find_preset, Branch, CaseId, ResonantSolution};
use kpii_stem::geometry::{
    closed_form_endpoints, closed_form_length, closed_form_length_slope, concurrency_det, tabulated_velocity,
    velocity_table, ArmDescriptor, BalanceGraph, StemGeometry,
};
use kpii_stem::verification::{arm_ridge, MatchOptions};
use proptest::prelude::*;

const SWEEP: [f64; 6] = [-20.0, -5.0, -1.0, 1.0, 5.0, 20.0];
const LENGTH_CASES: [CaseId; 4] = [CaseId::C2_1, CaseId::W2, CaseId::M2, CaseId::C3_1];

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn sweep_solutions(case: CaseId) -> Vec<ResonantSolution> {
    let preset = common::case_presets().into_iter().find(|p| p.case == case).unwrap();
    let mut sols = vec![preset.solution().unwrap()];
    sols.extend(common::draws(&preset, Branch::First, 50, 17));
    sols.extend(common::draws(&preset, Branch::Second, 10, 18));
    sols
}

#[test]
fn closed_form_endpoints_match_intersections() {
    for case in CaseId::RESONANT {
        for sol in sweep_solutions(case) {
            let geo = StemGeometry::new(&sol).unwrap();
            let p = &sol.params;
            for t in SWEEP {
                let cf = closed_form_endpoints(case, sol.spec.branch, p.k, p.p[2], sol.ln_a12(), t).unwrap();
                let found = geo.species(t).junctions.map(|j| geo.junction_point(j, t).unwrap());
                for c in cf {
                    let best = found.iter().map(|g| dist(*g, c)).fold(f64::INFINITY, f64::min);
                    let scale = c[0].hypot(c[1]).max(1.0);
                    assert!(best <= 1e-9 * scale, "{case} t={t} {:?}: {c:?} vs {found:?}", p);
                }
            }
        }
    }
}

#[test]
fn closed_form_lengths_match_endpoint_distance() {
    for case in LENGTH_CASES {
        for sol in sweep_solutions(case) {
            let geo = StemGeometry::new(&sol).unwrap();
            let p = &sol.params;
            for t in SWEEP {
                let r = geo.report(t).unwrap();
                let formula = closed_form_length(case, sol.spec.branch, p.k, p.p[2], sol.ln_a12(), t).unwrap();
                assert!(
                    (r.length - formula).abs() <= 1e-9 * formula.max(1.0),
                    "{case} t={t}: {} vs {formula}",
                    r.length
                );
            }
        }
    }
}

#[test]
fn length_slope_matches_formula() {
    for case in LENGTH_CASES {
        for sol in sweep_solutions(case).into_iter().take(10) {
            let geo = StemGeometry::new(&sol).unwrap();
            for past in [true, false] {
                let ts: Vec<f64> = (0..=10).map(|i| if past { -30.0 + i as f64 } else { 20.0 + i as f64 }).collect();
                let ls: Vec<f64> = ts.iter().map(|&t| geo.report(t).unwrap().length).collect();
                let n = ts.len() as f64;
                let (mt, ml) = (ts.iter().sum::<f64>() / n, ls.iter().sum::<f64>() / n);
                let sxy: f64 = ts.iter().zip(&ls).map(|(t, l)| (t - mt) * (l - ml)).sum();
                let sxx: f64 = ts.iter().map(|t| (t - mt).powi(2)).sum();
                let fitted = sxy / sxx;
                let p = &sol.params;
                let want = closed_form_length_slope(case, sol.spec.branch, p.k, p.p[2], past).unwrap();
                assert!((fitted - want).abs() <= 1e-6 * want.abs(), "{case} past={past}: {fitted} vs {want}");
            }
        }
    }
}

#[test]
fn junction_triples_are_concurrent() {
    for case in CaseId::RESONANT {
        for sol in sweep_solutions(case).into_iter().take(20) {
            let geo = StemGeometry::new(&sol).unwrap();
            for t in [-50.0, -20.0, -5.0, -3.0, 3.0, 5.0, 20.0, 50.0] {
                for [a, b, c] in geo.species(t).junctions {
                    let arm = |i: usize, j: usize| {
                        ArmDescriptor::between(&sol, &sol.template[i], &sol.template[j]).unwrap().line_coeffs(t)
                    };
                    let det = concurrency_det(&[arm(a, b), arm(a, c), arm(b, c)]).unwrap();
                    assert!(det.abs() < 1e-9, "{case} t={t}: det {det}");
                }
            }
        }
    }
}

#[test]
fn midpoint_amplitudes_follow_reference_curves() {
    for case in [CaseId::C2_1, CaseId::W2, CaseId::M2, CaseId::C3_1] {
        let sol = find_preset(case.as_str()).unwrap().solution().unwrap();
        let geo = StemGeometry::new(&sol).unwrap();
        for i in -30..=30 {
            let t = i as f64 / 10.0;
            if t == 0.0 {
                continue;
            }
            let (past, future) = common::midpoint_curve(case, t).unwrap();
            let want = if t < 0.0 { past } else { future };
            let got = geo.report(t).unwrap().midpoint_amplitude;
            assert!((got - want).abs() <= 1e-8, "{case} t={t}: {got} vs {want}");
        }
    }
}

#[test]
fn stem_vanishes_only_for_three_resonance() {
    let c21 = find_preset("c2_1").unwrap().solution().unwrap();
    let longest = |sol: &ResonantSolution, t: f64| {
        let g = BalanceGraph::new(sol, t);
        g.bounded().map(|e| g.edge_length(e)).fold(0.0, f64::max)
    };
    let min = (-100..=100).map(|i| longest(&c21, i as f64 / 100.0)).fold(f64::INFINITY, f64::min);
    assert!(min > 0.1, "C2_1 shortest stem near t = 0: {min}");

    let c31 = find_preset("c3_1").unwrap().solution().unwrap();
    assert!(longest(&c31, 0.0) <= 1e-12);
    let p = &c31.params;
    assert_eq!(closed_form_length(CaseId::C3_1, Branch::First, p.k, p.p[2], 0.0, 0.0).unwrap(), 0.0);
    let geo = StemGeometry::new(&c31).unwrap();
    assert!(geo.report(0.0).unwrap().length <= 1e-12);
}

#[test]
fn velocity_identities() {
    for case in CaseId::RESONANT {
        for sol in sweep_solutions(case).into_iter().take(20) {
            for row in velocity_table(&sol).unwrap() {
                let arm = ArmDescriptor::new(row.label, &sol.params, 0.0);
                let w = arm.omega_sum;
                let scale = w.abs().max(1.0);
                if let Some(vx) = row.vx {
                    assert!((arm.k_sum * vx + w).abs() <= 1e-10 * scale);
                }
                if let Some(vy) = row.vy {
                    assert!((arm.p_sum * vy + w).abs() <= 1e-10 * scale);
                }
                let tab = tabulated_velocity(&row.label, &sol.params);
                for (a, b) in tab.iter().zip([row.vx, row.vy]) {
                    match (a, b) {
                        (Some(a), Some(b)) => {
                            assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "{case} {}", row.label)
                        }
                        (None, None) => {}
                        other => panic!("{case} {}: {other:?}", row.label),
                    }
                }
            }
        }
    }
}

#[test]
fn ridge_maxima_sit_on_trajectories() {
    let opts = MatchOptions::default();
    for preset in common::case_presets() {
        let sol = preset.solution().unwrap();
        let geo = StemGeometry::new(&sol).unwrap();
        for t in [-20.0, 20.0] {
            for arm in geo.catalog.arms(t) {
                let r = arm_ridge(&geo, arm, t, &opts).unwrap();
                for s in &r.trace.samples {
                    let d = r.trajectory.distance(s.point).unwrap();
                    assert!(d <= 1e-3, "{} {} t={t}: {d}", preset.name, arm.arm.label);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn trajectory_moves_with_arm_velocity(
        case in 0..8usize,
        t in -30.0..30.0f64,
        dt in 0.1..5.0f64,
    ) {
        let preset = common::case_presets()[case];
        let sol = preset.solution().unwrap();
        for row in velocity_table(&sol).unwrap() {
            let arm = ArmDescriptor::new(row.label, &sol.params, 0.0);
            let line = arm.trajectory_line(t).unwrap();
            // A point on the line carried by either velocity component stays on it.
            let foot = line.foot([0.0, 0.0]).unwrap();
            let later = arm.trajectory_line(t + dt).unwrap();
            if let Some(vx) = row.vx {
                let moved = [foot[0] + vx * dt, foot[1]];
                prop_assert!(later.distance(moved).unwrap() <= 1e-9 * (1.0 + vx.abs() * dt));
            }
            if let Some(vy) = row.vy {
                let moved = [foot[0], foot[1] + vy * dt];
                prop_assert!(later.distance(moved).unwrap() <= 1e-9 * (1.0 + vy.abs() * dt));
            }
        }
    }
}

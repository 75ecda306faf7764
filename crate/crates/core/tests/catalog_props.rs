mod common;

use kpii_stem::catalog::{
    a12_closed_form, build_solution, declared_kinds, make_generic, phase_shift_param, resolve_constraints, solution,
    Branch, CaseId, CaseSpec, PhaseShift, RawParams, ResonanceClass, ResonanceKind, C2_2_INADMISSIBLE, PRESETS,
};
use kpii_stem::tau::Point;
use kpii_stem::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Bilinear dispersion polynomial `P(a, b, c) = a c + a⁴ + 3 b²`.
fn bilinear(a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
    a * c + a * a * a * a + BigRational::from_integer(BigInt::from(3)) * b * b
}

fn omega_exact(k: &BigRational, p: &BigRational) -> BigRational {
    -(k * k * k * k + BigRational::from_integer(BigInt::from(3)) * p * p) / k
}

/// `(numerator, denominator)` of `a_ij = −P(diff) / P(sum)`, exact.
fn hirota(ki: f64, pi: f64, kj: f64, pj: f64) -> (BigRational, BigRational) {
    let (ki, pi, kj, pj) = (rat(ki), rat(pi), rat(kj), rat(pj));
    let (wi, wj) = (omega_exact(&ki, &pi), omega_exact(&kj, &pj));
    let num = -bilinear(&(&ki - &kj), &(&pi - &pj), &(&wi - &wj));
    let den = bilinear(&(&ki + &kj), &(&pi + &pj), &(&wi + &wj));
    (num, den)
}

fn dyadic(rng: &mut ChaCha8Rng, lo: i32, hi: i32) -> f64 {
    rng.gen_range(lo..=hi) as f64 / 8.0
}

#[test]
fn phase_shift_matches_exact_bilinear_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 500 {
        let (ki, kj) = (dyadic(&mut rng, -24, 24), dyadic(&mut rng, -24, 24));
        let (pi, pj) = (dyadic(&mut rng, -24, 24), dyadic(&mut rng, -24, 24));
        if ki == 0.0 || kj == 0.0 || ki == kj {
            continue;
        }
        let (num, den) = hirota(ki, pi, kj, pj);
        let got = phase_shift_param(ki, pi, kj, pj);
        if den.is_zero() {
            assert_eq!(got, Ok(PhaseShift::Infinite), "({ki},{pi}) ({kj},{pj})");
        } else {
            let want = (num / den).to_f64().unwrap();
            match got {
                Ok(PhaseShift::Finite(a)) => assert!((a - want).abs() <= 1e-12 * want.abs().max(1e-300)),
                Err(Error::InadmissibleParameter(_)) => assert!(want < 0.0),
                other => panic!("({ki},{pi}) ({kj},{pj}): {other:?} vs {want}"),
            }
        }
        checked += 1;
    }
}

#[test]
fn resonant_cases_of_exact_resonance() {
    // p_j = p_i k_j/k_i ± k_j (k_i ∓ k_j) hits the numerator or denominator root exactly.
    for (ki, pi, kj) in [(1.0, 0.5, 2.0), (-2.0, 1.0, 0.5), (2.0, -1.0, -0.5)] {
        let weak = pi * kj / ki + kj * (ki - kj);
        let strong = pi * kj / ki + kj * (ki + kj);
        assert_eq!(phase_shift_param(ki, pi, kj, weak), Ok(PhaseShift::Finite(0.0)));
        assert_eq!(phase_shift_param(ki, pi, kj, strong), Ok(PhaseShift::Infinite));
        assert!(hirota(ki, pi, kj, weak).0.is_zero());
        assert!(hirota(ki, pi, kj, strong).1.is_zero());
    }
}

/// Random admissible draws over a wide box, not tied to any preset.
fn wide_draws(case: CaseId, branch: Branch, n: usize, seed: u64) -> Vec<RawParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let k: [f64; 3] = std::array::from_fn(|_| {
            let m = rng.gen_range(0.3..3.0);
            if rng.gen_bool(0.5) {
                m
            } else {
                -m
            }
        });
        let raw = RawParams::new(k, rng.gen_range(-2.0..2.0));
        if solution(&raw, CaseSpec::new(case, branch)).is_ok() {
            out.push(raw);
        }
    }
    out
}

#[test]
fn constraint_fidelity() {
    for case in CaseId::RESONANT {
        let kinds = declared_kinds(case).unwrap();
        for branch in [Branch::First, Branch::Second] {
            for raw in wide_draws(case, branch, 100, 31) {
                let p = resolve_constraints(&raw, CaseSpec::new(case, branch)).unwrap();
                for (n, &(i, j)) in ResonanceClass::PAIRS.iter().enumerate() {
                    let (num, den) = hirota(p.k[i - 1], p.p[i - 1], p.k[j - 1], p.p[j - 1]);
                    let scale = num.abs().max(den.abs()).to_f64().unwrap();
                    let rel = |v: &BigRational| v.abs().to_f64().unwrap() / scale;
                    match kinds[n] {
                        ResonanceKind::Weak => assert!(rel(&num) < 1e-12, "{case} {branch:?} ({i},{j}) {raw:?}"),
                        ResonanceKind::Strong => assert!(rel(&den) < 1e-12, "{case} {branch:?} ({i},{j}) {raw:?}"),
                        _ => {
                            let a = (num / den).to_f64().unwrap();
                            assert!(a > 0.0 && a.is_finite());
                            let closed = a12_closed_form(case, p.k).unwrap();
                            assert!((a - closed).abs() <= 1e-10 * a, "{case} a12 {a} vs {closed}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn template_cardinality() {
    let expected = [
        (CaseId::C2_1, 5),
        (CaseId::C2_2, 4),
        (CaseId::C2_3, 4),
        (CaseId::C2_4, 5),
        (CaseId::W2, 5),
        (CaseId::M2, 5),
        (CaseId::C3_1, 4),
        (CaseId::C3_2, 4),
    ];
    for (case, n) in expected {
        for branch in [Branch::First, Branch::Second] {
            for raw in wide_draws(case, branch, 20, 41) {
                let sol = solution(&raw, CaseSpec::new(case, branch)).unwrap();
                assert_eq!(sol.tau.terms().len(), n, "{case}");
            }
        }
    }
    let generic = make_generic([1.0, 2.0, 3.0], [0.1, 0.2, 0.3], [0.0; 3]).unwrap();
    assert_eq!(build_solution(&generic, CaseSpec::first(CaseId::Generic)).unwrap().tau.terms().len(), 8);
}

#[test]
fn branches_mirror_in_y() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in CaseId::RESONANT {
        for raw in wide_draws(case, Branch::First, 20, 51) {
            let first = solution(&raw, CaseSpec::new(case, Branch::First)).unwrap();
            let mirrored = RawParams::new(raw.k, -raw.p3);
            let second = solution(&mirrored, CaseSpec::new(case, Branch::Second)).unwrap();
            for _ in 0..20 {
                let (x, y, t) = (rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0), rng.gen_range(-2.0..2.0));
                let a = second.u(Point::new(x, y, t)).unwrap();
                let b = first.u(Point::new(x, -y, t)).unwrap();
                assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{case}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn inadmissible_preset_is_rejected() {
    assert!(matches!(C2_2_INADMISSIBLE.solution(), Err(Error::InadmissibleParameter(_))));
    let raw = RawParams::new([1.0, 2.0, 0.5], 1.0);
    assert!(matches!(solution(&raw, CaseSpec::first(CaseId::W2)), Err(Error::InadmissibleParameter(_))));
}

#[test]
fn preset_a12_values() {
    // Exact fractions of the closed forms at the preset wave numbers.
    let want = [
        ("c2_1", 35.0 / 26.0),
        ("c2_1_alt", 0.7),
        ("c2_2", 7.0 / 6.0),
        ("c2_3", 7.0 / 6.0),
        ("c2_4", 20.0 / 11.0),
        ("w2", 0.75),
        ("m2", 9.0),
    ];
    for (name, a) in want {
        let sol = PRESETS.iter().find(|p| p.name == name).unwrap().solution().unwrap();
        assert!((sol.a12().unwrap() - a).abs() <= 1e-14 * a, "{name}");
    }
}

proptest! {
    #[test]
    fn resolved_parameters_build_positive_taus(
        case in 0..8usize,
        second in any::<bool>(),
        k in prop::array::uniform3(prop_oneof![-3.0..-0.3f64, 0.3..3.0f64]),
        p3 in -2.0..2.0f64,
    ) {
        let branch = if second { Branch::Second } else { Branch::First };
        let spec = CaseSpec::new(CaseId::RESONANT[case], branch);
        match solution(&RawParams::new(k, p3), spec) {
            Ok(sol) => prop_assert!(sol.tau.terms().iter().all(|t| t.coeff > 0.0)),
            Err(e) => prop_assert!(matches!(
                e,
                Error::InadmissibleParameter(_) | Error::DegenerateParameter(_) | Error::IndeterminateResonance(..)
            )),
        }
    }
}

//! Closed-form stem endpoints and lengths for the figure regimes.
//!
//! Each vertex is affine in `t` and `L = ln a_12`: `x = x_t t + x_L L`,
//! `y = y_t t + y_L L`. Forms are stated for the FIRST branch; the SECOND
//! branch is its mirror image `y → −y` with `p_3 → −p_3`.

use crate::catalog::{Branch, CaseId};
use crate::error::{Error, Result};

/// `[x_t, x_L, y_t, y_L]` as a function of `(k, p_3)`.
type Form = fn([f64; 3], f64) -> [f64; 4];

#[derive(Clone, Copy)]
pub(crate) struct VertexForm {
    /// Sorted template masks of the three tied terms.
    pub masks: [u8; 3],
    form: Form,
}

const fn vf(masks: [u8; 3], form: Form) -> VertexForm {
    VertexForm { masks, form }
}

fn c2_017([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    let s = k1 + k2 + k3;
    [
        k3 * k3 + 4.0 * k1 * k2 + 4.0 * k2 * k3 - 2.0 * p + (4.0 * k2 * p - 4.0 * p * k1) / k3
            - 3.0 * p * p / (k3 * k3),
        -(k1 * k3 + k3 * k3 + p) / (k3 * s * (k2 + k3)),
        6.0 * p / k3 + 4.0 * k1 - 4.0 * k2 + 2.0 * k3,
        1.0 / (s * (k2 + k3)),
    ]
}

fn c2_027([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    let s = k1 + k2 + k3;
    [
        k3 * k3 + 4.0 * k1 * k2 + 4.0 * k1 * k3 + 2.0 * p
            - (4.0 * k1 * p - 4.0 * p * k2) / k3
            - 3.0 * p * p / (k3 * k3),
        -(k2 * k3 + k3 * k3 - p) / (k3 * s * (k1 + k3)),
        6.0 * p / k3 + 4.0 * k1 - 4.0 * k2 - 2.0 * k3,
        -1.0 / (s * (k1 + k3)),
    ]
}

fn c2_237([k1, _k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [
        -((4.0 * k1 * k3 * p + 3.0 * p * p) / (k3 * k3) - k3 * k3 + 2.0 * p),
        p / (k1 * k3 * (k1 + k3)),
        6.0 * p / k3 + 4.0 * k1 + 2.0 * k3,
        -1.0 / (k1 * (k1 + k3)),
    ]
}

fn c2_137([_k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [
        (4.0 * k2 * k3 * p - 3.0 * p * p) / (k3 * k3) + k3 * k3 + 2.0 * p,
        -p / (k2 * k3 * (k2 + k3)),
        6.0 * p / k3 - 4.0 * k2 - 2.0 * k3,
        1.0 / (k2 * (k2 + k3)),
    ]
}

fn c2_015([k1, _k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [-((4.0 * k1 * k3 * p + 3.0 * p * p) / (k3 * k3) - k3 * k3 + 2.0 * p), 0.0, 6.0 * p / k3 + 4.0 * k1 + 2.0 * k3, 0.0]
}

fn c2_057([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    let s = k1 + k2 + k3;
    [
        k3 * k3 + 4.0 * k1 * k2 + 4.0 * k1 * k3 + 2.0 * p + (4.0 * k2 * p - 4.0 * p * k1) / k3
            - 3.0 * p * p / (k3 * k3),
        -(k1 * k3 + p) / (k2 * k3 * s),
        6.0 * p / k3 + 4.0 * k1 - 4.0 * k2 - 2.0 * k3,
        1.0 / (k2 * s),
    ]
}

fn c2_067([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    let s = k1 + k2 + k3;
    [
        k3 * k3 + 4.0 * k1 * k2 + 4.0 * k2 * k3
            - 2.0 * p
            - (4.0 * k1 * p - 4.0 * p * k2) / k3
            - 3.0 * p * p / (k3 * k3),
        -(k2 * k3 - p) / (k1 * k3 * s),
        6.0 * p / k3 + 4.0 * k1 - 4.0 * k2 + 2.0 * k3,
        -1.0 / (k1 * s),
    ]
}

fn c2_026([_k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [
        (4.0 * k2 * k3 * p + k3.powi(4) + 2.0 * k3 * k3 * p - 3.0 * p * p) / (k3 * k3),
        0.0,
        2.0 * (-2.0 * k2 * k3 - k3 * k3 + 3.0 * p) / k3,
        0.0,
    ]
}

fn w2_014([k1, _k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [k3 * k3 - 2.0 * p + (4.0 * k1 * k3 * p - 3.0 * p * p) / (k3 * k3), 0.0, 6.0 * p / k3 - 4.0 * k1 + 2.0 * k3, 0.0]
}

fn w2_134([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    let s = k1 + k2 - k3;
    [
        k3 * k3 - 4.0 * k1 * k3 + 4.0 * k1 * k2 + 2.0 * p + (4.0 * k1 * p - 4.0 * k2 * p) / k3
            - 3.0 * p * p / (k3 * k3),
        (p - k1 * k3) / (k2 * k3 * s),
        6.0 * p / k3 - 4.0 * k1 + 4.0 * k2 - 2.0 * k3,
        -1.0 / (k2 * s),
    ]
}

fn w2_024([_k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [k3 * k3 + 2.0 * p - (4.0 * k2 * k3 * p + 3.0 * p * p) / (k3 * k3), 0.0, 6.0 * p / k3 + 4.0 * k2 - 2.0 * k3, 0.0]
}

fn w2_234([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    let s = k1 + k2 - k3;
    [
        k3 * k3 - 4.0 * k2 * k3 + 4.0 * k1 * k2 - 2.0 * p + (4.0 * k1 * p - 4.0 * k2 * p) / k3
            - 3.0 * p * p / (k3 * k3),
        -(p + k2 * k3) / (k1 * k3 * s),
        6.0 * p / k3 - 4.0 * k1 + 4.0 * k2 + 2.0 * k3,
        1.0 / (k1 * s),
    ]
}

fn m2_235([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [
        k3 * k3 - 4.0 * k1 * k2 - 4.0 * k2 * k3 - 2.0 * p - 4.0 * p * (k1 + k2) / k3 - 3.0 * p * p / (k3 * k3),
        -(k1 * k3 + k2 * k3 + p) / (k1 * k3 * (k2 - k3)),
        6.0 * p / k3 + 4.0 * k1 + 4.0 * k2 + 2.0 * k3,
        1.0 / (k1 * (k2 - k3)),
    ]
}

fn m2_135([_k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [
        k3 * k3 + 2.0 * p - 4.0 * k2 * p / k3 - 3.0 * p * p / (k3 * k3),
        p / (k2 * k3 * (k2 - k3)),
        6.0 * p / k3 + 4.0 * k2 - 2.0 * k3,
        -1.0 / (k2 * (k2 - k3)),
    ]
}

fn m2_015([k1, _k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [k3 * k3 - 2.0 * p - 4.0 * p * k1 / k3 - 3.0 * p * p / (k3 * k3), 0.0, 6.0 * p / k3 + 4.0 * k1 + 2.0 * k3, 0.0]
}

fn m2_025([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [
        k3 * k3 - 4.0 * k1 * k2 + 4.0 * k1 * k3 + 2.0 * p
            - (4.0 * k1 * p + 4.0 * p * k2) / k3
            - 3.0 * p * p / (k3 * k3),
        0.0,
        6.0 * p / k3 + 4.0 * k1 + 4.0 * k2 - 2.0 * k3,
        0.0,
    ]
}

fn c31_014([k1, _k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [k3 * k3 - 2.0 * p + 4.0 * k1 * p / k3 - 3.0 * p * p / (k3 * k3), 0.0, 6.0 * p / k3 - 4.0 * k1 + 2.0 * k3, 0.0]
}

fn c31_124([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [
        k3 * k3 - 4.0 * k1 * k2 + 4.0 * (k1 + k2) * p / k3 - 2.0 * p - 3.0 * p * p / (k3 * k3),
        0.0,
        6.0 * p / k3 - 4.0 * k1 - 4.0 * k2 + 2.0 * k3,
        0.0,
    ]
}

fn c31_012([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [
        -3.0 * k3 * k3 + 4.0 * k1 * k3 + 4.0 * k2 * k3 - 4.0 * k1 * k2 - 6.0 * p + (4.0 * k1 * p + 4.0 * p * k2) / k3
            - 3.0 * p * p / (k3 * k3),
        0.0,
        6.0 * p / k3 - 4.0 * k1 - 4.0 * k2 + 6.0 * k3,
        0.0,
    ]
}

fn c31_024([_k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [k3 * k3 + 4.0 * k2 * p / k3 - 2.0 * p - 3.0 * p * p / (k3 * k3), 0.0, 6.0 * p / k3 - 4.0 * k2 + 2.0 * k3, 0.0]
}

fn c32_456([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [
        -(4.0 * k1 * k2 * k3 * k3 + 4.0 * k1 * k3.powi(3) - 4.0 * k1 * k3 * p + 4.0 * k2 * k3.powi(3)
            - 4.0 * k2 * k3 * p
            + 3.0 * k3.powi(4)
            - 6.0 * k3 * k3 * p
            + 3.0 * p * p)
            / (k3 * k3),
        0.0,
        2.0 * (-2.0 * k1 * k3 - 2.0 * k2 * k3 - 3.0 * k3 * k3 + 3.0 * p) / k3,
        0.0,
    ]
}

fn c32_045([k1, _k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [
        (4.0 * k1 * k3 * p + k3.powi(4) + 2.0 * k3 * k3 * p - 3.0 * p * p) / (k3 * k3),
        0.0,
        2.0 * (-2.0 * k1 * k3 - k3 * k3 + 3.0 * p) / k3,
        0.0,
    ]
}

fn c32_056([k1, k2, k3]: [f64; 3], p: f64) -> [f64; 4] {
    [
        -(4.0 * k1 * k2 * k3 * k3 - 4.0 * k1 * k3 * p - 4.0 * k2 * k3 * p - k3.powi(4) - 2.0 * k3 * k3 * p
            + 3.0 * p * p)
            / (k3 * k3),
        0.0,
        2.0 * (-2.0 * k1 * k3 - 2.0 * k2 * k3 - k3 * k3 + 3.0 * p) / k3,
        0.0,
    ]
}

/// Endpoint forms `[[past A, past B], [future A, future B]]`.
pub(crate) fn stem_forms(case: CaseId) -> Option<[[VertexForm; 2]; 2]> {
    Some(match case {
        CaseId::C2_1 => {
            [[vf([0, 1, 7], c2_017), vf([0, 2, 7], c2_027)], [vf([2, 3, 7], c2_237), vf([1, 3, 7], c2_137)]]
        }
        CaseId::C2_2 => {
            [[vf([0, 2, 6], c2_026), vf([0, 6, 7], c2_067)], [vf([0, 2, 7], c2_027), vf([2, 6, 7], c2_237)]]
        }
        CaseId::C2_3 => {
            [[vf([0, 1, 5], c2_015), vf([0, 5, 7], c2_057)], [vf([0, 1, 7], c2_017), vf([1, 5, 7], c2_137)]]
        }
        CaseId::C2_4 => {
            [[vf([0, 5, 7], c2_057), vf([0, 6, 7], c2_067)], [vf([0, 4, 5], c2_015), vf([0, 4, 6], c2_026)]]
        }
        CaseId::W2 => [[vf([0, 1, 4], w2_014), vf([1, 3, 4], w2_134)], [vf([0, 2, 4], w2_024), vf([2, 3, 4], w2_234)]],
        CaseId::M2 => [[vf([2, 3, 5], m2_235), vf([1, 3, 5], m2_135)], [vf([0, 1, 5], m2_015), vf([0, 2, 5], m2_025)]],
        CaseId::C3_1 => {
            [[vf([0, 1, 4], c31_014), vf([1, 2, 4], c31_124)], [vf([0, 1, 2], c31_012), vf([0, 2, 4], c31_024)]]
        }
        CaseId::C3_2 => {
            [[vf([0, 4, 6], c2_026), vf([4, 5, 6], c32_456)], [vf([0, 4, 5], c32_045), vf([0, 5, 6], c32_056)]]
        }
        CaseId::Generic => return None,
    })
}

/// Sorted mask triples of the registered stem endpoints on one side of `t = 0`.
pub fn registered_triples(case: CaseId, future: bool) -> Option<[[u8; 3]; 2]> {
    stem_forms(case).map(|f| f[future as usize].map(|v| v.masks))
}

fn mirror(branch: Branch, p3: f64) -> (f64, f64) {
    match branch {
        Branch::First => (p3, 1.0),
        Branch::Second => (-p3, -1.0),
    }
}

impl VertexForm {
    pub fn eval(&self, branch: Branch, k: [f64; 3], p3: f64, ln_a12: f64, t: f64) -> [f64; 2] {
        let (p, ys) = mirror(branch, p3);
        let [xt, xl, yt, yl] = (self.form)(k, p);
        [xt * t + xl * ln_a12, ys * (yt * t + yl * ln_a12)]
    }
}

/// Closed-form stem endpoints `[A, B]` at `t`, past forms for `t < 0`.
pub fn closed_form_endpoints(
    case: CaseId,
    branch: Branch,
    k: [f64; 3],
    p3: f64,
    ln_a12: f64,
    t: f64,
) -> Result<[[f64; 2]; 2]> {
    let forms = stem_forms(case).ok_or_else(|| Error::UnsupportedFormula(case.to_string()))?;
    Ok(forms[(t >= 0.0) as usize].map(|f| f.eval(branch, k, p3, ln_a12, t)))
}

/// Closed-form stem length at `t`; only the cases with a printed length.
pub fn closed_form_length(case: CaseId, branch: Branch, k: [f64; 3], p3: f64, ln_a12: f64, t: f64) -> Result<f64> {
    let [k1, k2, k3] = k;
    let (p, _) = mirror(branch, p3);
    let l = ln_a12;
    let past = t < 0.0;
    let v = match (case, past) {
        (CaseId::C2_1, true) => {
            (k3 * k3 + (k3 * (k1 - k2) + p).powi(2)).sqrt()
                * (4.0 * t + l * (k1 + k2 + 2.0 * k3) / (k3 * (k1 + k3) * (k2 + k3) * (k1 + k2 + k3))).abs()
        }
        (CaseId::C2_1, false) => {
            (k3 * k3 + p * p).sqrt()
                * (l / (k1 * k3 * (k1 + k3)) + l / (k2 * k3 * (k2 + k3)) - 4.0 * (k1 + k2 + k3) * t / k3).abs()
        }
        (CaseId::W2, true) => {
            (k1 * k1 * k3 * k3 - 2.0 * k1 * k3 * p + k3 * k3 + p * p).sqrt()
                * (l / (k2 * k3 * (k1 + k2 - k3)) - 4.0 * (k2 - k3) * t / k3).abs()
        }
        (CaseId::W2, false) => {
            (k2 * k2 * k3 * k3 + 2.0 * k2 * k3 * p + k3 * k3 + p * p).sqrt()
                * (l / (k1 * k3 * (k1 + k2 - k3)) - 4.0 * (k1 - k3) * t / k3).abs()
        }
        (CaseId::M2, true) => {
            (k3 * k3 + (k2 * k3 + p).powi(2)).sqrt()
                * ((k1 + k2) * l / (k1 * k2 * k3 * (k2 - k3)) + 4.0 * (k1 + k3) * t / k3).abs()
        }
        (CaseId::M2, false) => 4.0 * (t * (k2 - k3)).abs() * (k3 * k3 + (k1 * k3 + p).powi(2)).sqrt() / k3.abs(),
        (CaseId::C3_1, true) => 4.0 * (k2 * t).abs() * (k1 * k1 + 1.0 - 2.0 * k1 * p / k3 + p * p / (k3 * k3)).sqrt(),
        (CaseId::C3_1, false) => {
            4.0 * (t * (k1 - k3)).abs()
                * ((k2 - k3).powi(2) + 2.0 * p + 1.0 - 2.0 * k2 * p / k3 + p * p / (k3 * k3)).sqrt()
        }
        _ => return Err(Error::UnsupportedFormula(format!("{case} length"))),
    };
    Ok(v)
}

/// Coefficient of `t` in the closed-form length for `|t|` large.
pub fn closed_form_length_slope(case: CaseId, branch: Branch, k: [f64; 3], p3: f64, past: bool) -> Result<f64> {
    let t = if past { -1.0 } else { 1.0 };
    let at = |s: f64| closed_form_length(case, branch, k, p3, 0.0, s * t);
    Ok((at(2.0)? - at(1.0)?) * t)
}

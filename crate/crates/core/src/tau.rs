//! Exponential-sum tau functions and the field `u = 2 (ln f)_xx`.
//!
//! Every derivative of `ln f` is a joint cumulant of the term exponent vectors
//! under the weights `c_m e^{θ_m} / f`, so the field and all of its partials are
//! computed from weighted central moments. The maximum exponent is subtracted
//! before exponentiating and cancels in every ratio.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest total derivative order supported for `u`.
pub const MAX_PARTIAL_ORDER: usize = 4;

// Cumulants of ln f up to order MAX_PARTIAL_ORDER + 2 are needed.
const KMAX: usize = MAX_PARTIAL_ORDER + 2;
const DIM: usize = KMAX + 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64, t: f64) -> Self {
        Self { x, y, t }
    }

    fn check(&self) -> Result<()> {
        if self.x.is_finite() && self.y.is_finite() && self.t.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain(format!("({}, {}, {})", self.x, self.y, self.t)))
        }
    }
}

/// One term `coeff * exp(kx x + py y + wt t + phase)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpTerm {
    pub coeff: f64,
    pub kx: f64,
    pub py: f64,
    pub wt: f64,
    pub phase: f64,
}

impl ExpTerm {
    pub const fn new(coeff: f64, kx: f64, py: f64, wt: f64, phase: f64) -> Self {
        Self { coeff, kx, py, wt, phase }
    }

    pub const fn constant(coeff: f64) -> Self {
        Self::new(coeff, 0.0, 0.0, 0.0, 0.0)
    }

    /// Exponent including `ln coeff`; `None` for a zero coefficient.
    pub fn log_weight(&self, p: &Point) -> Option<f64> {
        (self.coeff > 0.0).then(|| self.coeff.ln() + self.kx * p.x + self.py * p.y + self.wt * p.t + self.phase)
    }

    fn same_exponent(&self, other: &ExpTerm) -> bool {
        self.kx == other.kx && self.py == other.py && self.wt == other.wt
    }
}

/// Derivative orders in `x`, `y` and `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    pub x: u8,
    pub y: u8,
    pub t: u8,
}

impl MultiIndex {
    pub const fn new(x: u8, y: u8, t: u8) -> Self {
        Self { x, y, t }
    }

    pub fn order(&self) -> usize {
        self.x as usize + self.y as usize + self.t as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub u: f64,
    pub partials: Option<BTreeMap<MultiIndex, f64>>,
}

/// `f = Σ_m c_m exp(k_m x + p_m y + w_m t + s_m)` with nonnegative coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpSumTau {
    terms: Vec<ExpTerm>,
}

impl ExpSumTau {
    /// Validates the terms and merges those sharing an exponent vector.
    pub fn new(terms: Vec<ExpTerm>) -> Result<Self> {
        let mut merged: Vec<ExpTerm> = Vec::with_capacity(terms.len());
        for term in terms {
            let fields = [term.coeff, term.kx, term.py, term.wt, term.phase];
            if fields.iter().any(|v| !v.is_finite()) {
                return Err(Error::Domain(format!("term {term:?}")));
            }
            if term.coeff < 0.0 {
                return Err(Error::InadmissibleParameter(format!("negative tau coefficient {}", term.coeff)));
            }
            match merged.iter_mut().find(|m| m.same_exponent(&term)) {
                Some(m) => m.coeff += term.coeff * (term.phase - m.phase).exp(),
                None => merged.push(term),
            }
        }
        if !merged.iter().any(|t| t.coeff > 0.0) {
            return Err(Error::EmptyTau);
        }
        Ok(Self { terms: merged })
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    /// `f(x, y, t)`, failing only when the value overflows f64.
    pub fn eval(&self, p: Point) -> Result<f64> {
        let ln_f = self.log_eval(p)?;
        let f = ln_f.exp();
        if f.is_finite() && f > 0.0 {
            Ok(f)
        } else {
            Err(Error::Unrepresentable { ln_f })
        }
    }

    /// `ln f` by log-sum-exp.
    pub fn log_eval(&self, p: Point) -> Result<f64> {
        p.check()?;
        let logs: Vec<f64> = self.terms.iter().filter_map(|t| t.log_weight(&p)).collect();
        let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let s: f64 = logs.iter().map(|l| (l - m).exp()).sum();
        Ok(m + s.ln())
    }

    /// `u = 2 (ln f)_xx`.
    pub fn u(&self, p: Point) -> Result<f64> {
        p.check()?;
        let w = Weights::new(self, &p);
        let var = w.central_moment(0);
        Ok(2.0 * var)
    }

    pub fn eval_u(&self, p: Point) -> Result<FieldSample> {
        Ok(FieldSample { u: self.u(p)?, partials: None })
    }

    /// Exact partial derivatives of `u` for each requested multi-index.
    pub fn eval_partials(&self, p: Point, indices: &[MultiIndex]) -> Result<FieldSample> {
        p.check()?;
        let max_order = indices.iter().map(MultiIndex::order).max().unwrap_or(0);
        if max_order > MAX_PARTIAL_ORDER {
            return Err(Error::UnsupportedOperation(format!(
                "derivative of total order {max_order} (max {MAX_PARTIAL_ORDER})"
            )));
        }
        let k = Cumulants::new(self, &p, max_order + 2);
        let partials = indices
            .iter()
            .map(|mi| {
                let v = 2.0 * k.get(mi.x as usize + 2, mi.y as usize, mi.t as usize);
                (*mi, v)
            })
            .collect();
        Ok(FieldSample { u: 2.0 * k.get(2, 0, 0), partials: Some(partials) })
    }
}

/// Normalized term weights and their exponent vectors at one point.
struct Weights {
    pi: Vec<f64>,
    vecs: Vec<[f64; 3]>,
}

impl Weights {
    fn new(tau: &ExpSumTau, p: &Point) -> Self {
        let mut logs = Vec::with_capacity(tau.terms.len());
        let mut vecs = Vec::with_capacity(tau.terms.len());
        for t in &tau.terms {
            if let Some(l) = t.log_weight(p) {
                logs.push(l);
                vecs.push([t.kx, t.py, t.wt]);
            }
        }
        let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut pi: Vec<f64> = logs.iter().map(|l| (l - m).exp()).collect();
        let s: f64 = pi.iter().sum();
        pi.iter_mut().for_each(|w| *w /= s);
        Self { pi, vecs }
    }

    fn mean(&self) -> [f64; 3] {
        let mut mu = [0.0; 3];
        for (w, v) in self.pi.iter().zip(&self.vecs) {
            for d in 0..3 {
                mu[d] += w * v[d];
            }
        }
        mu
    }

    /// Second central moment along one coordinate.
    fn central_moment(&self, dim: usize) -> f64 {
        let mu = self.mean()[dim];
        self.pi.iter().zip(&self.vecs).map(|(w, v)| w * (v[dim] - mu).powi(2)).sum()
    }
}

/// Joint cumulants of the exponent vectors, i.e. derivatives of `ln f`.
struct Cumulants {
    kappa: Vec<f64>,
}

fn idx(a: usize, b: usize, c: usize) -> usize {
    (a * DIM + b) * DIM + c
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl Cumulants {
    fn new(tau: &ExpSumTau, p: &Point, order: usize) -> Self {
        let w = Weights::new(tau, p);
        let mu = w.mean();
        let centered: Vec<[f64; 3]> = w.vecs.iter().map(|v| [v[0] - mu[0], v[1] - mu[1], v[2] - mu[2]]).collect();

        let mut moment = vec![0.0; DIM * DIM * DIM];
        for (pi, d) in w.pi.iter().zip(&centered) {
            let pow = |x: f64| -> [f64; DIM] {
                let mut out = [1.0; DIM];
                for i in 1..DIM {
                    out[i] = out[i - 1] * x;
                }
                out
            };
            let (px, py, pt) = (pow(d[0]), pow(d[1]), pow(d[2]));
            for a in 0..=order {
                for b in 0..=order - a {
                    for c in 0..=order - a - b {
                        moment[idx(a, b, c)] += pi * px[a] * py[b] * pt[c];
                    }
                }
            }
        }

        // Moment-to-cumulant recursion on the centered distribution; the first
        // cumulants are the mean and higher ones are shift invariant.
        let mut kappa = vec![0.0; DIM * DIM * DIM];
        for total in 2..=order {
            for a in 0..=total {
                for b in 0..=total - a {
                    let c = total - a - b;
                    let alpha = [a, b, c];
                    let i = alpha.iter().position(|&v| v > 0).unwrap();
                    let mut gamma = alpha;
                    gamma[i] -= 1;
                    let mut acc = moment[idx(a, b, c)];
                    for b0 in 0..=gamma[0] {
                        for b1 in 0..=gamma[1] {
                            for b2 in 0..=gamma[2] {
                                if [b0, b1, b2] == gamma {
                                    continue;
                                }
                                let mut beta_i = [b0, b1, b2];
                                beta_i[i] += 1;
                                let coeff = binom(gamma[0], b0) * binom(gamma[1], b1) * binom(gamma[2], b2);
                                acc -= coeff
                                    * kappa[idx(beta_i[0], beta_i[1], beta_i[2])]
                                    * moment[idx(gamma[0] - b0, gamma[1] - b1, gamma[2] - b2)];
                            }
                        }
                    }
                    kappa[idx(a, b, c)] = acc;
                }
            }
        }
        kappa[idx(1, 0, 0)] = mu[0];
        kappa[idx(0, 1, 0)] = mu[1];
        kappa[idx(0, 0, 1)] = mu[2];
        Self { kappa }
    }

    fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.kappa[idx(a, b, c)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn soliton(k: f64, p: f64) -> ExpSumTau {
        let w = -(k.powi(4) + 3.0 * p * p) / k;
        ExpSumTau::new(vec![ExpTerm::constant(1.0), ExpTerm::new(1.0, k, p, w, 0.0)]).unwrap()
    }

    #[test]
    fn constant_tau_is_one() {
        let tau = ExpSumTau::new(vec![ExpTerm::constant(1.0)]).unwrap();
        assert_eq!(tau.eval(Point::new(3.0, -2.0, 1.0)).unwrap(), 1.0);
        assert_eq!(tau.u(Point::new(3.0, -2.0, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn two_terms_at_origin() {
        let tau = ExpSumTau::new(vec![ExpTerm::constant(1.0), ExpTerm::new(1.0, 1.0, 0.0, 0.0, 0.0)]).unwrap();
        assert_eq!(tau.eval(Point::new(0.0, 0.0, 0.0)).unwrap(), 2.0);
    }

    #[test]
    fn dominated_log_sum() {
        let tau = ExpSumTau::new(vec![ExpTerm::constant(1.0), ExpTerm::new(1.0, 1000.0, 0.0, 0.0, 0.0)]).unwrap();
        let l = tau.log_eval(Point::new(1.0, 0.0, 0.0)).unwrap();
        assert!((l - 1000.0).abs() < 1e-12);
        assert!(matches!(tau.eval(Point::new(1.0, 0.0, 0.0)), Err(Error::Unrepresentable { .. })));
    }

    #[test]
    fn soliton_peak_and_decay() {
        let tau = soliton(2.0, 0.0);
        assert!((tau.u(Point::new(0.0, 0.0, 0.0)).unwrap() - 2.0).abs() < 1e-15);
        assert!(tau.u(Point::new(20.0, 0.0, 0.0)).unwrap() < 1e-15);
        assert!(tau.u(Point::new(-20.0, 0.0, 0.0)).unwrap() < 1e-15);
    }

    #[test]
    fn soliton_peak_is_critical() {
        let tau = soliton(1.5, 0.7);
        let s = tau.eval_partials(Point::new(0.0, 0.0, 0.0), &[MultiIndex::new(1, 0, 0)]).unwrap();
        assert!(s.partials.unwrap()[&MultiIndex::new(1, 0, 0)].abs() < 1e-15);
    }

    #[test]
    fn merges_identical_exponents() {
        let tau = ExpSumTau::new(vec![
            ExpTerm::constant(1.0),
            ExpTerm::new(1.0, 1.0, 2.0, 3.0, 0.0),
            ExpTerm::new(2.0, 1.0, 2.0, 3.0, 1.0_f64.ln()),
        ])
        .unwrap();
        assert_eq!(tau.terms().len(), 2);
        assert!((tau.terms()[1].coeff - 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(ExpSumTau::new(vec![ExpTerm::constant(0.0)]), Err(Error::EmptyTau));
        assert!(ExpSumTau::new(vec![ExpTerm::constant(-1.0)]).is_err());
        let tau = soliton(1.0, 0.0);
        assert!(matches!(tau.u(Point::new(f64::NAN, 0.0, 0.0)), Err(Error::Domain(_))));
        let bad = tau.eval_partials(Point::new(0.0, 0.0, 0.0), &[MultiIndex::new(5, 0, 0)]);
        assert!(matches!(bad, Err(Error::UnsupportedOperation(_))));
    }

    #[test]
    fn single_term_has_zero_partials() {
        let tau = ExpSumTau::new(vec![ExpTerm::new(2.0, 1.0, 1.0, 1.0, 0.0)]).unwrap();
        let idx = [MultiIndex::new(4, 0, 0), MultiIndex::new(0, 2, 0), MultiIndex::new(1, 0, 1)];
        let s = tau.eval_partials(Point::new(0.3, 0.2, 0.1), &idx).unwrap();
        assert!(s.partials.unwrap().values().all(|v| *v == 0.0));
    }
}

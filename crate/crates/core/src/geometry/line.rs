use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative determinant below which two lines count as parallel.
pub const PARALLEL_TOL: f64 = 1e-12;

/// The line `a x + b y + c = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Intersection {
    Point([f64; 2]),
    Parallel,
}

impl Intersection {
    pub fn point(self) -> Option<[f64; 2]> {
        match self {
            Intersection::Point(p) => Some(p),
            Intersection::Parallel => None,
        }
    }
}

impl Line {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    /// Line through `p` with unit normal `n`.
    pub fn through(p: [f64; 2], n: [f64; 2]) -> Result<Self> {
        Line::new(n[0], n[1], -(n[0] * p[0] + n[1] * p[1])).normalized()
    }

    fn norm(&self) -> Result<f64> {
        let n = self.a.hypot(self.b);
        if n == 0.0 || !n.is_finite() {
            Err(Error::DegenerateLine)
        } else {
            Ok(n)
        }
    }

    /// Scaled so that `a² + b² = 1` with `a > 0`, or `b > 0` when `a = 0`.
    pub fn normalized(&self) -> Result<Self> {
        let mut n = self.norm()?;
        if self.a < 0.0 || (self.a == 0.0 && self.b < 0.0) {
            n = -n;
        }
        Ok(Line::new(self.a / n, self.b / n, self.c / n))
    }

    pub fn eval(&self, p: [f64; 2]) -> f64 {
        self.a * p[0] + self.b * p[1] + self.c
    }

    pub fn unit_normal(&self) -> Result<[f64; 2]> {
        let l = self.normalized()?;
        Ok([l.a, l.b])
    }

    /// Unit tangent `(−b, a)` of the normalized line.
    pub fn direction(&self) -> Result<[f64; 2]> {
        let l = self.normalized()?;
        Ok([-l.b, l.a])
    }

    pub fn distance(&self, p: [f64; 2]) -> Result<f64> {
        Ok(self.normalized()?.eval(p).abs())
    }

    /// Closest point of the line to `p`.
    pub fn foot(&self, p: [f64; 2]) -> Result<[f64; 2]> {
        let l = self.normalized()?;
        let d = l.eval(p);
        Ok([p[0] - d * l.a, p[1] - d * l.b])
    }

    /// Perpendicular line through `p`.
    pub fn perpendicular_through(&self, p: [f64; 2]) -> Result<Self> {
        Line::through(p, self.direction()?)
    }

    /// Largest coefficient difference after normalization, with orientation fixed.
    pub fn coeff_distance(&self, other: &Line) -> Result<f64> {
        let (l, m) = (self.normalized()?, other.normalized()?);
        Ok((l.a - m.a).abs().max((l.b - m.b).abs()).max((l.c - m.c).abs()))
    }
}

pub fn intersect_lines(l1: &Line, l2: &Line) -> Intersection {
    let det = l1.a * l2.b - l1.b * l2.a;
    let scale = l1.a.hypot(l1.b) * l2.a.hypot(l2.b);
    if scale == 0.0 || det.abs() <= PARALLEL_TOL * scale {
        return Intersection::Parallel;
    }
    let x = (l1.b * l2.c - l2.b * l1.c) / det;
    let y = (l2.a * l1.c - l1.a * l2.c) / det;
    Intersection::Point([x, y])
}

/// Determinant of three `(a, b, c)` rows, each scaled to unit length.
pub fn concurrency_det(lines: &[Line; 3]) -> Result<f64> {
    let mut rows = [[0.0; 3]; 3];
    for (row, l) in rows.iter_mut().zip(lines) {
        let n = (l.a * l.a + l.b * l.b + l.c * l.c).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::DegenerateLine);
        }
        *row = [l.a / n, l.b / n, l.c / n];
    }
    let [r0, r1, r2] = rows;
    Ok(r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]))
}

pub(crate) fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

//! Dominant-balance graph of a tau function at fixed `t`: the piecewise
//! linear skeleton where the two largest terms of `f` tie.

use super::arm::ArmDescriptor;
use super::line::{intersect_lines, Line};
use crate::catalog::ResonantSolution;
use crate::error::Result;

/// Slack allowed when deciding that a tied triple is the maximum.
const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    /// Sorted template indices of the three tied terms.
    pub terms: [usize; 3],
    pub point: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    /// Sorted template indices of the two balancing terms.
    pub pair: (usize, usize),
    /// Indices into `BalanceGraph::vertices`.
    pub vertices: Vec<usize>,
    /// Unit direction away from the vertex, for rays.
    pub ray: Option<[f64; 2]>,
}

impl Edge {
    pub fn is_bounded(&self) -> bool {
        self.vertices.len() == 2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BalanceGraph {
    pub t: f64,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

/// Exponent `θ_m = K x + P y + C` of every template term at time `t`.
pub(crate) fn term_planes(sol: &ResonantSolution, t: f64) -> Vec<[f64; 3]> {
    sol.template
        .iter()
        .map(|term| {
            let [k, p, w, c] = sol.term_exponent(term);
            [k, p, w * t + c]
        })
        .collect()
}

/// Line on which terms `a` and `b` balance.
pub(crate) fn balance_line(planes: &[[f64; 3]], a: usize, b: usize) -> Line {
    let (pa, pb) = (planes[a], planes[b]);
    Line::new(pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2])
}

pub(crate) fn pair_arm(sol: &ResonantSolution, a: usize, b: usize) -> Result<ArmDescriptor> {
    ArmDescriptor::between(sol, &sol.template[a], &sol.template[b])
}

impl BalanceGraph {
    pub fn new(sol: &ResonantSolution, t: f64) -> Self {
        let planes = term_planes(sol, t);
        let n = planes.len();
        let theta = |m: usize, p: [f64; 2]| planes[m][0] * p[0] + planes[m][1] * p[1] + planes[m][2];
        let mut vertices = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let Some(p) = intersect_lines(&balance_line(&planes, a, b), &balance_line(&planes, a, c)).point()
                    else {
                        continue;
                    };
                    let top = theta(a, p);
                    let slack = TIE_TOL * (1.0 + top.abs());
                    if (0..n).all(|m| theta(m, p) <= top + slack) {
                        vertices.push(Vertex { terms: [a, b, c], point: p });
                    }
                }
            }
        }
        let mut edges: Vec<Edge> = Vec::new();
        for (vi, v) in vertices.iter().enumerate() {
            let [a, b, c] = v.terms;
            for (pair, third) in [((a, b), c), ((a, c), b), ((b, c), a)] {
                match edges.iter_mut().find(|e| e.pair == pair) {
                    Some(e) => {
                        e.vertices.push(vi);
                        e.ray = None;
                    }
                    None => {
                        let l = balance_line(&planes, pair.0, pair.1);
                        let mut d = [-l.b, l.a];
                        let norm = d[0].hypot(d[1]);
                        d = [d[0] / norm, d[1] / norm];
                        let g = [planes[third][0] - planes[pair.0][0], planes[third][1] - planes[pair.0][1]];
                        if d[0] * g[0] + d[1] * g[1] > 0.0 {
                            d = [-d[0], -d[1]];
                        }
                        edges.push(Edge { pair, vertices: vec![vi], ray: Some(d) });
                    }
                }
            }
        }
        Self { t, vertices, edges }
    }

    pub fn edge(&self, pair: (usize, usize)) -> Option<&Edge> {
        let key = (pair.0.min(pair.1), pair.0.max(pair.1));
        self.edges.iter().find(|e| e.pair == key)
    }

    pub fn vertex(&self, terms: [usize; 3]) -> Option<&Vertex> {
        let mut key = terms;
        key.sort_unstable();
        self.vertices.iter().find(|v| v.terms == key)
    }

    pub fn rays(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.ray.is_some())
    }

    pub fn bounded(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_bounded())
    }

    pub fn edge_length(&self, e: &Edge) -> f64 {
        if e.is_bounded() {
            super::line::dist(self.vertices[e.vertices[0]].point, self.vertices[e.vertices[1]].point)
        } else {
            f64::INFINITY
        }
    }
}

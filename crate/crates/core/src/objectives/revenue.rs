//! Expected revenue of word-of-mouth advertising on a weighted network.
//!
//! Spending `x(i)` units on vertex `i` turns it into an advocate with
//! probability `1 - q^{x(i)}`, `q = 1 - p`, independently across vertices.
//! Revenue is the total weight of ordered pairs `(i, j)` with `i` an
//! advocate and `j` not, so its expectation is
//!
//! ```text
//! f(x) = Σ_i Σ_j w_ij (1 - q^{x(i)}) q^{x(j)}
//! ```
//!
//! The gain of `g(x) = (1 - q^{x(i)}) q^{x(j)}` along `i` is
//! `g(χ_i | x) = q^{x(i)+x(j)} (1 - q)`, which any unit step on `i` or `j`
//! multiplies by `q <= 1`. Along `j` the term is convex, so `f` itself is
//! DR-submodular only while
//!
//! ```text
//! f(χ_i | x) = p q^{x(i)} (Σ_{i→j} w_ij q^{x(j)} - Σ_{j→i} w_ji (1 - q^{x(j)}))
//! ```
//!
//! keeps a nonnegative bracket; see [`RevenueObjective::is_dr_submodular_on`].

use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::lattice::{BoxConstraint, LatticeVector};
use crate::math::powu;
use crate::oracle::Objective;

/// Advocacy probability used in the network experiments.
pub const DEFAULT_ADVOCACY_P: f64 = 1e-4;

const IDENTITY_TOLERANCE: f64 = 1e-12;

/// Directed weighted graph without self-loops, with adjacency in both
/// directions.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    vertex_count: usize,
    arcs: Vec<(usize, usize, f64)>,
    out_adj: Vec<Vec<(usize, f64)>>,
    in_adj: Vec<Vec<(usize, f64)>>,
}

impl WeightedGraph {
    /// Graph from ordered arcs `(i, j, w_ij)`.
    pub fn directed(vertex_count: usize, arcs: Vec<(usize, usize, f64)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(invalid("graph needs at least one vertex"));
        }
        let mut out_adj = alloc::vec![Vec::new(); vertex_count];
        let mut in_adj = alloc::vec![Vec::new(); vertex_count];
        for &(i, j, w) in &arcs {
            if i >= vertex_count || j >= vertex_count {
                return Err(invalid(alloc::format!("arc ({i}, {j}) out of range")));
            }
            if i == j {
                return Err(invalid(alloc::format!("self-loop at vertex {i}")));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return Err(invalid(alloc::format!("arc ({i}, {j}) has invalid weight {w}")));
            }
            out_adj[i].push((j, w));
            in_adj[j].push((i, w));
        }
        Ok(WeightedGraph {
            vertex_count,
            arcs,
            out_adj,
            in_adj,
        })
    }

    /// Undirected graph: each edge `{i, j}` contributes both `(i, j)` and `(j, i)`.
    pub fn undirected(vertex_count: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let arcs = edges.iter().flat_map(|&(i, j, w)| [(i, j, w), (j, i, w)]).collect();
        Self::directed(vertex_count, arcs)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[(usize, usize, f64)] {
        &self.arcs
    }

    pub fn total_weight(&self) -> f64 {
        self.arcs.iter().map(|a| a.2).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RevenueObjective {
    graph: WeightedGraph,
    p: f64,
    q: f64,
}

impl RevenueObjective {
    pub fn new(graph: WeightedGraph, p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(invalid(alloc::format!(
                "advocacy probability must lie in (0, 1), got {p}"
            )));
        }
        Ok(RevenueObjective { graph, p, q: 1.0 - p })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// The per-arc term `g(x) = (1 - q^{x(i)}) q^{x(j)}`.
    pub fn edge_term(&self, x: &LatticeVector, i: usize, j: usize) -> f64 {
        (1.0 - powu(self.q, x[i])) * powu(self.q, x[j])
    }

    /// Checks the closed-form identity behind DR-submodularity of the arc
    /// term for `(i, j)`: `g(χ_i | x + χ_k) = q · g(χ_i | x)` for both
    /// `k = j` and `k = i`, and `g(χ_i | x) = q^{x(i)+x(j)} (1 - q)`, each to
    /// within `1e-12`.
    pub fn per_edge_identity(&self, x: &LatticeVector, i: usize, j: usize) -> Result<bool> {
        let n = self.graph.vertex_count;
        if x.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.dim(),
            });
        }
        if i >= n || j >= n || i == j {
            return Err(invalid(alloc::format!("({i}, {j}) is not a pair of distinct vertices")));
        }
        let gain = |x: &LatticeVector| {
            let mut up = x.clone();
            up.set(i, x[i] + 1);
            self.edge_term(&up, i, j) - self.edge_term(x, i, j)
        };
        let base = gain(x);
        let closed = powu(self.q, x[i] + x[j]) * (1.0 - self.q);
        let mut ok = (base - closed).abs() <= IDENTITY_TOLERANCE;
        for k in [j, i] {
            let mut bumped = x.clone();
            bumped.set(k, x[k] + 1);
            ok &= (gain(&bumped) - self.q * base).abs() <= IDENTITY_TOLERANCE;
        }
        Ok(ok)
    }

    /// Whether `f` is DR-submodular on the box `0 ≤ x ≤ bounds`.
    ///
    /// `f(χ_i | x)` is `p q^{x(i)}` times a bracket that does not depend on
    /// `x(i)` and is smallest at `x = bounds`. The gain falls along `i` iff
    /// the bracket is nonnegative, so the test is that bracket at `bounds`
    /// for every vertex with `bounds(i) ≥ 2`.
    pub fn is_dr_submodular_on(&self, bounds: &BoxConstraint) -> Result<bool> {
        let n = self.graph.vertex_count;
        if bounds.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bounds.dim(),
            });
        }
        let top = bounds.upper();
        Ok((0..n)
            .filter(|&i| bounds.bound(i) >= 2)
            .all(|i| self.bracket(&top, i) >= 0.0))
    }

    fn bracket(&self, x: &LatticeVector, i: usize) -> f64 {
        let out: f64 = self.graph.out_adj[i].iter().map(|&(j, w)| w * powu(self.q, x[j])).sum();
        let inc: f64 = self.graph.in_adj[i]
            .iter()
            .map(|&(j, w)| w * (1.0 - powu(self.q, x[j])))
            .sum();
        out - inc
    }

    fn powers(&self, x: &LatticeVector) -> Vec<f64> {
        x.as_slice().iter().map(|&v| powu(self.q, v)).collect()
    }
}

impl Objective for RevenueObjective {
    fn dim(&self) -> usize {
        self.graph.vertex_count
    }

    fn value(&self, x: &LatticeVector) -> f64 {
        let qx = self.powers(x);
        self.graph.arcs.iter().map(|&(i, j, w)| w * (1.0 - qx[i]) * qx[j]).sum()
    }

    /// `f(χ_i | x) = p q^{x(i)} (Σ_{i→j} w_ij q^{x(j)} - Σ_{j→i} w_ji (1 - q^{x(j)}))`,
    /// touching only arcs incident to `i`.
    fn fast_marginal(&self, x: &LatticeVector, i: usize) -> Option<f64> {
        Some(self.p * powu(self.q, x[i]) * self.bracket(x, i))
    }
}

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{invalid, Result};
use crate::lattice::{BoxConstraint, LatticeVector};
use crate::oracle::Objective;

/// `f(x) = c + Σ_e φ_e(x(e)) + ψ(‖x‖₁)` with every `φ_e` and `ψ` concave.
///
/// Always DR-submodular. With all increments of one sign it is strictly
/// monotone, which makes it the standard sanity instance for the
/// maximizers.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcaveSum {
    bounds: BoxConstraint,
    offset: f64,
    coords: Vec<Vec<f64>>,
    shared: Vec<f64>,
}

fn is_concave(values: &[f64]) -> bool {
    values
        .windows(3)
        .all(|w| w[2] - w[1] <= w[1] - w[0] + 1e-12 * (1.0 + w[1].abs()))
}

impl ConcaveSum {
    /// `coords[e]` tabulates `φ_e` on `0..=B(e)`, `shared` tabulates `ψ` on
    /// `0..=‖B‖₁`.
    pub fn new(bounds: BoxConstraint, offset: f64, coords: Vec<Vec<f64>>, shared: Vec<f64>) -> Result<Self> {
        if coords.len() != bounds.dim() {
            return Err(invalid("one coordinate table per element required"));
        }
        for (e, table) in coords.iter().enumerate() {
            if table.len() as u64 != bounds.bound(e) + 1 {
                return Err(invalid(alloc::format!("table for element {e} has wrong length")));
            }
            if !is_concave(table) {
                return Err(invalid(alloc::format!("table for element {e} is not concave")));
            }
        }
        if shared.len() as u64 != bounds.l1_norm() + 1 || !is_concave(&shared) {
            return Err(invalid("shared table must be concave on 0..=‖B‖₁"));
        }
        Ok(ConcaveSum {
            bounds,
            offset,
            coords,
            shared,
        })
    }

    /// Random strictly increasing instance with `f(0) = 0`.
    pub fn random_increasing<R: Rng + ?Sized>(bounds: &BoxConstraint, rng: &mut R) -> Self {
        let coords = (0..bounds.dim())
            .map(|e| running_sum(&sorted_desc(rng, bounds.bound(e) as usize, 0.1, 1.0)))
            .collect();
        let shared = running_sum(&sorted_desc(rng, bounds.l1_norm() as usize, 0.0, 0.1));
        Self::new(bounds.clone(), 0.0, coords, shared).expect("increments sorted descending")
    }

    /// Random strictly decreasing instance, nonnegative with `f(B) >= 0`.
    pub fn random_decreasing<R: Rng + ?Sized>(bounds: &BoxConstraint, rng: &mut R) -> Self {
        let coords: Vec<Vec<f64>> = (0..bounds.dim())
            .map(|e| running_sum(&sorted_desc(rng, bounds.bound(e) as usize, -1.0, -0.1)))
            .collect();
        let shared = running_sum(&sorted_desc(rng, bounds.l1_norm() as usize, -0.1, 0.0));
        let drop: f64 = coords.iter().map(|c| -c[c.len() - 1]).sum::<f64>() - shared[shared.len() - 1];
        Self::new(bounds.clone(), drop + 1.0, coords, shared).expect("increments sorted descending")
    }

    pub fn bounds(&self) -> &BoxConstraint {
        &self.bounds
    }
}

fn sorted_desc<R: Rng + ?Sized>(rng: &mut R, len: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..len).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn running_sum(increments: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(increments.len() + 1);
    let mut acc = 0.0;
    out.push(acc);
    for d in increments {
        acc += d;
        out.push(acc);
    }
    out
}

impl Objective for ConcaveSum {
    fn dim(&self) -> usize {
        self.bounds.dim()
    }

    fn value(&self, x: &LatticeVector) -> f64 {
        let per: f64 = self.coords.iter().zip(x.as_slice()).map(|(t, &v)| t[v as usize]).sum();
        self.offset + per + self.shared[x.l1_norm() as usize]
    }

    fn domain(&self) -> Option<&BoxConstraint> {
        Some(&self.bounds)
    }

    fn fast_marginal(&self, x: &LatticeVector, e: usize) -> Option<f64> {
        let k = x[e] as usize;
        let s = x.l1_norm() as usize;
        let t = &self.coords[e];
        Some((t[k + 1] - t[k]) + (self.shared[s + 1] - self.shared[s]))
    }
}

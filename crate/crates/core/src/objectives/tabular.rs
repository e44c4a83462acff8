use alloc::vec::Vec;

use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::lattice::{BoxConstraint, LatticeVector};
use crate::oracle::Objective;

/// Largest box `is_dr_submodular` will scan.
pub const DR_CHECK_LIMIT: u128 = 1_000_000;
/// Largest box [`generate_dr_table`] will fill.
pub const GENERATOR_LIMIT: u128 = 100_000;

const DR_TOLERANCE: f64 = 1e-12;
const GENERATOR_ATTEMPTS: usize = 16;

/// A function given by its full table of values on a small box, stored
/// row-major (last coordinate fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct TabularObjective {
    bounds: BoxConstraint,
    strides: Vec<usize>,
    table: Vec<f64>,
}

fn strides_for(bounds: &BoxConstraint) -> Vec<usize> {
    let mut strides = alloc::vec![0usize; bounds.dim()];
    let mut acc = 1usize;
    for e in (0..bounds.dim()).rev() {
        strides[e] = acc;
        acc *= bounds.bound(e) as usize + 1;
    }
    strides
}

impl TabularObjective {
    pub fn new(bounds: BoxConstraint, table: Vec<f64>) -> Result<Self> {
        let count = bounds
            .point_count()
            .ok_or_else(|| invalid("box too large to tabulate"))?;
        if table.len() as u128 != count {
            return Err(invalid(alloc::format!(
                "table has {} entries, box has {count} points",
                table.len()
            )));
        }
        let strides = strides_for(&bounds);
        Ok(TabularObjective { bounds, strides, table })
    }

    /// Tabulate `f` over every point of `bounds`.
    pub fn from_fn(bounds: BoxConstraint, mut f: impl FnMut(&LatticeVector) -> f64) -> Result<Self> {
        let count = bounds.point_count().unwrap_or(u128::MAX);
        if count > DR_CHECK_LIMIT {
            return Err(Error::Capacity {
                what: "tabulated objective",
                needed: count,
                limit: DR_CHECK_LIMIT,
            });
        }
        let table = points(&bounds).map(|x| f(&x)).collect();
        Self::new(bounds, table)
    }

    pub fn bounds(&self) -> &BoxConstraint {
        &self.bounds
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    fn index(&self, x: &LatticeVector) -> usize {
        x.as_slice()
            .iter()
            .zip(&self.strides)
            .map(|(&v, &s)| v as usize * s)
            .sum()
    }

    /// Exhaustive DR-submodularity check.
    ///
    /// `f(χ_e | x) >= f(χ_e | y)` for all `x <= y` reduces, by chaining unit
    /// steps from `x` to `y`, to `f(χ_e | x) >= f(χ_e | x + χ_d)` for every
    /// point `x` and pair of coordinates `d, e` (possibly equal) that stay
    /// inside the box.
    pub fn is_dr_submodular(&self) -> Result<bool> {
        let count = self.table.len() as u128;
        if count > DR_CHECK_LIMIT {
            return Err(Error::Capacity {
                what: "DR-submodularity check",
                needed: count,
                limit: DR_CHECK_LIMIT,
            });
        }
        let scale = self.table.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let tol = DR_TOLERANCE * scale;
        let dim = self.bounds.dim();
        for x in points(&self.bounds) {
            let base = self.index(&x);
            for e in 0..dim {
                if x[e] >= self.bounds.bound(e) {
                    continue;
                }
                let se = self.strides[e];
                let gain = self.table[base + se] - self.table[base];
                for d in 0..dim {
                    let room = if d == e { 2 } else { 1 };
                    if x[d] + room > self.bounds.bound(d) {
                        continue;
                    }
                    let shifted = base + self.strides[d];
                    let later = self.table[shifted + se] - self.table[shifted];
                    if later > gain + tol {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// An optimal point and its value, by scanning the whole table.
    pub fn brute_force_max(&self) -> (LatticeVector, f64) {
        let mut best = (LatticeVector::zeros(self.bounds.dim()), f64::NEG_INFINITY);
        for x in points(&self.bounds) {
            let v = self.table[self.index(&x)];
            if v > best.1 {
                best = (x, v);
            }
        }
        best
    }
}

impl Objective for TabularObjective {
    fn dim(&self) -> usize {
        self.bounds.dim()
    }

    fn value(&self, x: &LatticeVector) -> f64 {
        self.table[self.index(x)]
    }

    fn domain(&self) -> Option<&BoxConstraint> {
        Some(&self.bounds)
    }
}

/// All points of the box in row-major order.
pub(crate) fn points(bounds: &BoxConstraint) -> impl Iterator<Item = LatticeVector> + '_ {
    let dim = bounds.dim();
    let mut next = Some(LatticeVector::zeros(dim));
    core::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        for e in (0..dim).rev() {
            if succ[e] < bounds.bound(e) {
                succ.set(e, succ[e] + 1);
                next = Some(succ);
                break;
            }
            succ.set(e, 0);
        }
        Some(current)
    })
}

/// Non-increasing random marginals in `[lo, hi)`.
fn concave_increments<R: Rng + ?Sized>(rng: &mut R, len: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut inc: Vec<f64> = (0..len).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect();
    inc.sort_by(|a, b| b.total_cmp(a));
    inc
}

fn prefix_sums(increments: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(increments.len() + 1);
    let mut acc = 0.0;
    out.push(acc);
    for d in increments {
        acc += d;
        out.push(acc);
    }
    out
}

/// A random nonnegative DR-submodular function on a small box.
///
/// The function is a sum of a concave function of each coordinate, a
/// concave function of `‖x‖₁`, and nonpositive pairwise terms
/// `-c_{de} x(d) x(e)`, shifted so its minimum lies in `[0, 1)`. Each part
/// is DR-submodular, so the sum is; the result is still verified, and after
/// repeated failures (possible only through rounding) a separable instance
/// is returned instead.
pub fn generate_dr_table<R: Rng + ?Sized>(bounds: &BoxConstraint, rng: &mut R) -> Result<TabularObjective> {
    let count = bounds.point_count().unwrap_or(u128::MAX);
    if count > GENERATOR_LIMIT {
        return Err(Error::Capacity {
            what: "random DR table",
            needed: count,
            limit: GENERATOR_LIMIT,
        });
    }
    let dim = bounds.dim();
    for _ in 0..GENERATOR_ATTEMPTS {
        let coords: Vec<Vec<f64>> = (0..dim)
            .map(|e| prefix_sums(&concave_increments(rng, bounds.bound(e) as usize, -3.0, 3.0)))
            .collect();
        let shared = prefix_sums(&concave_increments(rng, bounds.l1_norm() as usize, -2.0, 2.0));
        let mut pair = alloc::vec![0.0; dim * dim];
        for d in 0..dim {
            for e in d + 1..dim {
                pair[d * dim + e] = 0.5 * rng.random::<f64>();
            }
        }
        let raw = TabularObjective::from_fn(bounds.clone(), |x| {
            let mut v = shared[x.l1_norm() as usize];
            for e in 0..dim {
                v += coords[e][x[e] as usize];
                for d in 0..e {
                    v -= pair[d * dim + e] * (x[d] * x[e]) as f64;
                }
            }
            v
        })?;
        let lift = rng.random::<f64>();
        let shifted = shift_to_nonnegative(raw, lift);
        if shifted.is_dr_submodular()? {
            return Ok(shifted);
        }
    }
    let coords: Vec<Vec<f64>> = (0..dim)
        .map(|e| prefix_sums(&concave_increments(rng, bounds.bound(e) as usize, -1.0, 1.0)))
        .collect();
    let raw = TabularObjective::from_fn(bounds.clone(), |x| (0..dim).map(|e| coords[e][x[e] as usize]).sum())?;
    Ok(shift_to_nonnegative(raw, 0.0))
}

fn shift_to_nonnegative(mut t: TabularObjective, lift: f64) -> TabularObjective {
    let min = t.table.iter().copied().fold(f64::INFINITY, f64::min);
    for v in &mut t.table {
        *v = *v - min + lift;
    }
    t
}

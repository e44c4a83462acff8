use alloc::collections::BTreeMap;
use alloc::vec;

use rand::Rng;

use super::samplers::{sample_binomial, sample_geometric};
use crate::error::{invalid, Error, Result};
use crate::rng::coin;

/// Largest grid [`process_exact_distribution`] will build.
pub const EXACT_STATE_LIMIT: u128 = 1_000_000;

/// Parameters of the process `P(p, ℓa, ℓb, ℓa+b)` plus the failure budget
/// `η` of its batched simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessParams {
    p: f64,
    l_a: u64,
    l_b: u64,
    l_ab: u64,
    eta: f64,
}

impl ProcessParams {
    pub fn new(p: f64, l_a: u64, l_b: u64, l_ab: u64, eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(invalid(alloc::format!("p must lie in [0, 1], got {p}")));
        }
        if !(eta > 0.0 && eta < 1.0) {
            return Err(invalid(alloc::format!("eta must lie in (0, 1), got {eta}")));
        }
        Ok(ProcessParams { p, l_a, l_b, l_ab, eta })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn l_a(&self) -> u64 {
        self.l_a
    }

    pub fn l_b(&self) -> u64 {
        self.l_b
    }

    pub fn l_ab(&self) -> u64 {
        self.l_ab
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Distance `N` from a boundary below which the simulation switches to
    /// exact single steps: `⌈6 ln(3L/η)⌉` with
    /// `L = ⌈log₂(ℓa + ℓb + ℓa+b + 2)⌉ + 1` batching rounds.
    ///
    /// A batch starts only when all three gaps are at least `N`; it
    /// overshoots a gap with probability at most `exp(-gap/6)`, and at most
    /// `L` batches happen because each one halves some gap.
    pub fn batch_size(&self) -> u64 {
        let total = self
            .l_a
            .saturating_add(self.l_b)
            .saturating_add(self.l_ab)
            .saturating_add(2);
        let rounds = libm::ceil(libm::log2(total as f64)) + 1.0;
        libm::ceil(6.0 * libm::log(3.0 * rounds / self.eta)) as u64
    }

    /// The process keeps running from `(a, b)`.
    fn running(&self, a: u64, b: u64) -> bool {
        a < self.l_a && b < self.l_b && a + b < self.l_ab
    }

    /// `(a, b)` is a legal end point: inside the bounds and on at least one
    /// boundary.
    pub fn is_terminal(&self, a: u64, b: u64) -> bool {
        a <= self.l_a && b <= self.l_b && a + b <= self.l_ab && (a == self.l_a || b == self.l_b || a + b == self.l_ab)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProcessOutcome {
    pub a: u64,
    pub b: u64,
    /// A batch overshot a boundary; `a` and `b` are meaningless.
    pub failed: bool,
}

impl ProcessOutcome {
    fn done(params: &ProcessParams, a: u64, b: u64) -> Self {
        assert!(
            params.is_terminal(a, b),
            "simulation stopped off the boundary at ({a}, {b})"
        );
        ProcessOutcome { a, b, failed: false }
    }
}

/// Run the process one coin flip at a time.
pub fn process_naive<R: Rng + ?Sized>(params: &ProcessParams, rng: &mut R) -> ProcessOutcome {
    let (mut a, mut b) = (0, 0);
    while params.running(a, b) {
        if coin(rng, params.p) {
            a += 1;
        } else {
            b += 1;
        }
    }
    ProcessOutcome::done(params, a, b)
}

/// Exact end-point distribution of the process, by forward dynamic
/// programming over the `(a, b)` grid in order of `a + b`.
pub fn process_exact_distribution(params: &ProcessParams) -> Result<BTreeMap<(u64, u64), f64>> {
    let rows = params.l_a.min(params.l_ab) as u128 + 1;
    let cols = params.l_b.min(params.l_ab) as u128 + 1;
    let states = rows * cols;
    if states > EXACT_STATE_LIMIT {
        return Err(Error::Capacity {
            what: "exact process distribution",
            needed: states,
            limit: EXACT_STATE_LIMIT,
        });
    }
    let (rows, cols) = (rows as usize, cols as usize);
    let mut mass = vec![0.0f64; rows * cols];
    mass[0] = 1.0;
    let (p, q) = (params.p, 1.0 - params.p);
    let mut out = BTreeMap::new();
    let max_level = (rows + cols - 2).min(params.l_ab as usize);
    for level in 0..=max_level {
        let lo = level.saturating_sub(cols - 1);
        let hi = level.min(rows - 1);
        for a in lo..=hi {
            let b = level - a;
            let m = mass[a * cols + b];
            if m == 0.0 {
                continue;
            }
            if params.running(a as u64, b as u64) {
                mass[(a + 1) * cols + b] += p * m;
                mass[a * cols + b + 1] += q * m;
            } else {
                out.insert((a as u64, b as u64), m);
            }
        }
    }
    Ok(out)
}

/// Sample the end point of the process in `O(N log ℓ)` time, failing with
/// probability at most `η`.
///
/// Within `N` of the `a` or `a + b` boundary, the next `a` step is found by
/// a geometric jump (`G(p) - 1` intermediate `b` steps); within `N` of the
/// `b` boundary, symmetrically with `G(1-p)`. Otherwise `m = ⌊n/2⌋` steps
/// are taken at once with `B(m, p)` increments of `a`, where `n` is the
/// smallest of `⌊(ℓa-a)/p⌋`, `⌊(ℓb-b)/(1-p)⌋` and `ℓa+b-(a+b)`. A batch
/// that reaches the `a` or `b` boundary may have stopped the process
/// earlier than its last step, so it is reported as a failure.
pub fn simulate_process<R: Rng + ?Sized>(params: &ProcessParams, rng: &mut R) -> ProcessOutcome {
    let ProcessParams { p, l_a, l_b, l_ab, .. } = *params;
    if !params.running(0, 0) {
        return ProcessOutcome::done(params, 0, 0);
    }
    if p == 1.0 {
        return ProcessOutcome::done(params, l_a.min(l_ab), 0);
    }
    if p == 0.0 {
        return ProcessOutcome::done(params, 0, l_b.min(l_ab));
    }
    let q = 1.0 - p;
    let near = params.batch_size();
    let (mut a, mut b) = (0u64, 0u64);
    loop {
        if !params.running(a, b) {
            return ProcessOutcome::done(params, a, b);
        }
        if l_a - a <= near || l_ab - (a + b) < near {
            let s = sample_geometric(p, rng).expect("0 < p < 1");
            if b.saturating_add(s) <= l_b && (a + b).saturating_add(s) <= l_ab {
                a += 1;
                b += s - 1;
            } else {
                return ProcessOutcome::done(params, a, l_b.min(l_ab - a));
            }
        } else if l_b - b <= near {
            let s = sample_geometric(q, rng).expect("0 < q < 1");
            if a.saturating_add(s) <= l_a && (a + b).saturating_add(s) <= l_ab {
                a += s - 1;
                b += 1;
            } else {
                return ProcessOutcome::done(params, l_a.min(l_ab - b), b);
            }
        } else {
            let by_a = floor_div(l_a - a, p);
            let by_b = floor_div(l_b - b, q);
            let n = by_a.min(by_b).min(l_ab - (a + b));
            let m = n / 2;
            let s = sample_binomial(m, p, rng).expect("0 < p < 1");
            a += s;
            b += m - s;
            if a >= l_a || b >= l_b || a + b >= l_ab {
                return ProcessOutcome { a, b, failed: true };
            }
        }
    }
}

fn floor_div(gap: u64, rate: f64) -> u64 {
    let v = libm::floor(gap as f64 / rate);
    if v >= u64::MAX as f64 {
        u64::MAX
    } else {
        v as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::element_stream;

    fn params(p: f64, la: u64, lb: u64, lab: u64) -> ProcessParams {
        ProcessParams::new(p, la, lb, lab, 0.01).unwrap()
    }

    #[test]
    fn invalid_params() {
        assert!(ProcessParams::new(1.5, 1, 1, 1, 0.1).is_err());
        assert!(ProcessParams::new(0.5, 1, 1, 1, 0.0).is_err());
        assert!(ProcessParams::new(0.5, 1, 1, 1, 1.0).is_err());
    }

    #[test]
    fn batch_size_formula() {
        // L = ceil(log2(152)) + 1 = 9, N = ceil(6 ln(2700)) = 48
        assert_eq!(params(0.3, 50, 50, 50).batch_size(), 48);
    }

    #[test]
    fn naive_deterministic_cases() {
        let mut rng = element_stream(0, 0);
        let o = process_naive(&params(1.0, 3, 5, 10), &mut rng);
        assert_eq!((o.a, o.b), (3, 0));
        let o = process_naive(&params(0.0, 3, 5, 4), &mut rng);
        assert_eq!((o.a, o.b), (0, 4));
        let o = process_naive(&params(0.0, 3, 5, 10), &mut rng);
        assert_eq!((o.a, o.b), (0, 5));
    }

    #[test]
    fn exact_distribution_small() {
        let d = process_exact_distribution(&params(0.5, 1, 1, 2)).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[&(1, 0)], 0.5);
        assert_eq!(d[&(0, 1)], 0.5);
        let d = process_exact_distribution(&params(1.0, 4, 2, 3)).unwrap();
        assert_eq!(d.into_iter().collect::<alloc::vec::Vec<_>>(), vec![((3, 0), 1.0)]);
        let d = process_exact_distribution(&params(0.3, 0, 5, 5)).unwrap();
        assert_eq!(d[&(0, 0)], 1.0);
    }

    #[test]
    fn exact_distribution_conserves_mass() {
        for &(p, la, lb, lab) in &[
            (0.3, 40, 40, 60),
            (0.9, 7, 3, 100),
            (0.5, 100, 100, 150),
            (0.01, 3, 17, 12),
        ] {
            let pr = params(p, la, lb, lab);
            let d = process_exact_distribution(&pr).unwrap();
            let total: f64 = d.values().sum();
            assert!((total - 1.0).abs() < 1e-12, "{total}");
            assert!(d.keys().all(|&(a, b)| pr.is_terminal(a, b)));
        }
    }

    #[test]
    fn exact_distribution_capacity() {
        assert!(matches!(
            process_exact_distribution(&params(0.5, 5000, 5000, 8000)),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn simulation_degenerate_cases() {
        let mut rng = element_stream(0, 0);
        for &(la, lb, lab) in &[(3, 5, 10), (1000, 2, 400), (0, 3, 3)] {
            let o = simulate_process(&params(1.0, la, lb, lab), &mut rng);
            assert_eq!((o.a, o.b, o.failed), (la.min(lab), 0, false));
        }
        let o = simulate_process(&params(0.0, 9, 5, 12), &mut rng);
        assert_eq!((o.a, o.b), (0, 5));
    }

    #[test]
    fn simulation_always_stops_on_boundary() {
        let mut rng = element_stream(3, 0);
        for &(p, la, lb, lab) in &[
            (0.5, 1, 1, 2),
            (0.3, 40, 40, 60),
            (0.001, 10_000, 10_000, 15_000),
            (0.999, 10_000, 10_000, 15_000),
            (0.5, 1_000_000, 900_000, 1_500_000),
        ] {
            let pr = params(p, la, lb, lab);
            for _ in 0..200 {
                let o = simulate_process(&pr, &mut rng);
                if !o.failed {
                    assert!(pr.is_terminal(o.a, o.b));
                }
            }
        }
    }
}

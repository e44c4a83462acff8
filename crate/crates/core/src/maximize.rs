//! Double greedy maximizers and the single greedy baseline.
//!
//! All algorithms keep a lower point `x` (from `0`) and, for the double
//! greedy variants, an upper point `y` (from `B`), and close the gap one
//! element at a time in the configured order. Element `e`'s coins come from
//! [`rng::element_stream`](crate::rng::element_stream)`(seed, e)`.

use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use rand::seq::SliceRandom;

use crate::error::{invalid, Error, Result};
use crate::lattice::{BoxConstraint, LatticeVector};
use crate::oracle::{Objective, Oracle};
use crate::rng::{coin, element_stream, run_stream};
use crate::sketch::Sketch;

/// Relative slack before `alpha + beta < 0` is reported as a violation;
/// covers cancellation in objectives whose marginals nearly balance.
const VIOLATION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Single greedy baseline.
    SG,
    /// Pseudopolynomial double greedy.
    DG,
    /// Double greedy on sketched marginals.
    FastDG,
    /// Batched simulation of `FastDG`.
    PolyDG,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::SG, Algorithm::DG, Algorithm::FastDG, Algorithm::PolyDG];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::SG => "SG",
            Algorithm::DG => "DG",
            Algorithm::FastDG => "FastDG",
            Algorithm::PolyDG => "PolyDG",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name().eq_ignore_ascii_case(name))
    }

    pub fn uses_epsilon(self) -> bool {
        matches!(self, Algorithm::FastDG | Algorithm::PolyDG)
    }

    pub fn is_randomized(self) -> bool {
        !matches!(self, Algorithm::SG)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one algorithm execution.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub solution: LatticeVector,
    /// Fresh evaluation of the maximized function at `solution` (not
    /// included in `oracle_calls`).
    pub objective: f64,
    /// Constant subtracted from the objective by [`shifted_maximize`];
    /// zero otherwise.
    pub shift: f64,
    pub oracle_calls: u64,
    pub seed: u64,
    pub epsilon: Option<f64>,
    /// Filled by callers that measure time; the algorithms leave it zero.
    pub wall_time: Duration,
    /// A batched simulation failed and the zero vector was returned.
    pub failed: bool,
    /// Number of batched process simulations (`PolyDG` only).
    pub simulations: u64,
    /// Per-simulation failure budget (`PolyDG` only).
    pub eta: Option<f64>,
}

impl RunReport {
    /// Value of the original, unshifted objective at `solution`.
    pub fn raw_objective(&self) -> f64 {
        self.objective + self.shift
    }
}

/// Knobs shared by every maximizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub seed: u64,
    /// Visit elements in a seeded random order instead of ascending index.
    pub shuffle: bool,
    /// Let [`double_greedy`] continue when `α + β < 0` instead of returning
    /// [`Error::DrViolation`]. The step rule is unchanged: raise when
    /// `β < 0`, else lower when `α < 0`.
    pub skip_dr_check: bool,
}

impl RunOptions {
    pub fn seeded(seed: u64) -> Self {
        RunOptions {
            seed,
            ..RunOptions::default()
        }
    }

    pub(crate) fn order(&self, dim: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..dim).collect();
        if self.shuffle {
            order.shuffle(&mut run_stream(self.seed));
        }
        order
    }
}

pub(crate) fn check_problem<O: Objective + ?Sized>(f: &O, bounds: &BoxConstraint) -> Result<()> {
    if f.dim() != bounds.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: bounds.dim(),
        });
    }
    if let Some(domain) = f.domain() {
        domain.check(&bounds.upper())?;
    }
    Ok(())
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(invalid(alloc::format!(
            "epsilon must be positive and finite, got {epsilon}"
        )))
    }
}

pub(crate) fn finish<O: Objective + ?Sized>(
    algorithm: Algorithm,
    f: &O,
    solution: LatticeVector,
    oracle_calls: u64,
    seed: u64,
    epsilon: Option<f64>,
) -> RunReport {
    RunReport {
        algorithm,
        objective: f.value(&solution),
        solution,
        shift: 0.0,
        oracle_calls,
        seed,
        epsilon,
        wall_time: Duration::ZERO,
        failed: false,
        simulations: 0,
        eta: None,
    }
}

/// Probability of moving `x` up given nonnegative `alpha`, `beta`.
pub(crate) fn up_probability(alpha: f64, beta: f64) -> f64 {
    let total = alpha + beta;
    if total == 0.0 {
        1.0
    } else {
        alpha / total
    }
}

/// Coordinate-wise greedy: raise `x(e)` while the marginal gain is positive.
pub fn single_greedy<O: Objective + ?Sized>(f: &O, bounds: &BoxConstraint) -> Result<RunReport> {
    single_greedy_with(f, bounds, &RunOptions::default())
}

pub fn single_greedy_with<O: Objective + ?Sized>(
    f: &O,
    bounds: &BoxConstraint,
    opts: &RunOptions,
) -> Result<RunReport> {
    check_problem(f, bounds)?;
    let mut oracle = Oracle::new(f);
    let mut x = LatticeVector::zeros(bounds.dim());
    for e in opts.order(bounds.dim()) {
        while x[e] < bounds.bound(e) && oracle.up_in_place(&mut x, e) > 0.0 {
            x.set(e, x[e] + 1);
        }
    }
    Ok(finish(Algorithm::SG, f, x, oracle.calls(), opts.seed, None))
}

/// Randomized double greedy with exact marginals; `Θ(‖B‖₁)` oracle calls
/// and a 1/2 approximation in expectation for nonnegative DR-submodular `f`.
pub fn double_greedy<O: Objective + ?Sized>(f: &O, bounds: &BoxConstraint, seed: u64) -> Result<RunReport> {
    double_greedy_with(f, bounds, &RunOptions::seeded(seed))
}

pub fn double_greedy_with<O: Objective + ?Sized>(
    f: &O,
    bounds: &BoxConstraint,
    opts: &RunOptions,
) -> Result<RunReport> {
    check_problem(f, bounds)?;
    let mut oracle = Oracle::new(f);
    let mut x = LatticeVector::zeros(bounds.dim());
    let mut y = bounds.upper();
    for e in opts.order(bounds.dim()) {
        let mut rng = element_stream(opts.seed, e);
        while x[e] < y[e] {
            let alpha = oracle.up_in_place(&mut x, e);
            let beta = oracle.down_in_place(&mut y, e);
            if !opts.skip_dr_check && alpha + beta < -VIOLATION_SLACK * (alpha.abs() + beta.abs()) {
                return Err(Error::DrViolation {
                    element: e,
                    alpha,
                    beta,
                });
            }
            let raise = if beta < 0.0 {
                true
            } else if alpha < 0.0 {
                false
            } else {
                coin(&mut rng, up_probability(alpha, beta))
            };
            if raise {
                x.set(e, x[e] + 1);
            } else {
                y.set(e, y[e] - 1);
            }
        }
        debug_assert_eq!(x[e], y[e]);
    }
    Ok(finish(Algorithm::DG, f, x, oracle.calls(), opts.seed, None))
}

/// Sketches of `g(b) = f(χ_e | x + bχ_e)` and `h(b) = f(-χ_e | y - bχ_e)` on
/// `{0, .., B(e) - 1}`, taken while `x(e) = 0` and `y(e) = B(e)`.
pub(crate) fn element_sketches<O: Objective + ?Sized>(
    oracle: &mut Oracle<'_, O>,
    x: &mut LatticeVector,
    y: &mut LatticeVector,
    e: usize,
    bound: u64,
    epsilon: f64,
) -> Result<(Sketch, Sketch)> {
    debug_assert!(x[e] == 0 && y[e] == bound);
    let up = Sketch::build(
        |b| {
            x.set(e, b);
            oracle.up_in_place(x, e)
        },
        bound,
        epsilon,
    );
    x.set(e, 0);
    let down = Sketch::build(
        |b| {
            y.set(e, bound - b);
            oracle.down_in_place(y, e)
        },
        bound,
        epsilon,
    );
    y.set(e, bound);
    Ok((up?, down?))
}

/// Double greedy driven by `(1+ε)`-accurate sketches of the marginals.
///
/// Oracle calls are `O(|E|/ε · log(Δ/δ) · log ‖B‖∞)`; the expected value is
/// at least `OPT / (2 + ε)` for nonnegative DR-submodular `f`.
pub fn fast_double_greedy<O: Objective + ?Sized>(
    f: &O,
    bounds: &BoxConstraint,
    epsilon: f64,
    seed: u64,
) -> Result<RunReport> {
    fast_double_greedy_with(f, bounds, epsilon, &RunOptions::seeded(seed))
}

pub fn fast_double_greedy_with<O: Objective + ?Sized>(
    f: &O,
    bounds: &BoxConstraint,
    epsilon: f64,
    opts: &RunOptions,
) -> Result<RunReport> {
    check_epsilon(epsilon)?;
    check_problem(f, bounds)?;
    let mut oracle = Oracle::new(f);
    let mut x = LatticeVector::zeros(bounds.dim());
    let mut y = bounds.upper();
    for e in opts.order(bounds.dim()) {
        let bound = bounds.bound(e);
        let (g, h) = element_sketches(&mut oracle, &mut x, &mut y, e, bound, epsilon)?;
        let mut rng = element_stream(opts.seed, e);
        while x[e] < y[e] {
            let alpha = g.value_at(x[e]);
            let beta = h.value_at(bound - y[e]);
            debug_assert!(alpha >= 0.0 && beta >= 0.0);
            if coin(&mut rng, up_probability(alpha, beta)) {
                x.set(e, x[e] + 1);
            } else {
                y.set(e, y[e] - 1);
            }
        }
    }
    Ok(finish(
        Algorithm::FastDG,
        f,
        x,
        oracle.calls(),
        opts.seed,
        Some(epsilon),
    ))
}

/// `f - shift` for a constant shift.
struct Shifted<'a, O: ?Sized> {
    inner: &'a O,
    shift: f64,
}

impl<O: Objective + ?Sized> Objective for Shifted<'_, O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn value(&self, x: &LatticeVector) -> f64 {
        self.inner.value(x) - self.shift
    }

    fn domain(&self) -> Option<&BoxConstraint> {
        self.inner.domain()
    }

    fn fast_marginal(&self, x: &LatticeVector, e: usize) -> Option<f64> {
        self.inner.fast_marginal(x, e)
    }
}

/// Run one of the maximizers.
pub fn maximize<O: Objective + ?Sized>(
    f: &O,
    bounds: &BoxConstraint,
    algorithm: Algorithm,
    epsilon: Option<f64>,
    opts: &RunOptions,
) -> Result<RunReport> {
    let need_eps = || epsilon.ok_or_else(|| invalid(alloc::format!("{algorithm} needs an epsilon")));
    match algorithm {
        Algorithm::SG => single_greedy_with(f, bounds, opts),
        Algorithm::DG => double_greedy_with(f, bounds, opts),
        Algorithm::FastDG => fast_double_greedy_with(f, bounds, need_eps()?, opts),
        Algorithm::PolyDG => crate::fast_sim::poly_maximize_with(f, bounds, need_eps()?, opts),
    }
}

/// Maximize `f(x) - min{f(0), f(B)}`, for DR-submodular `f` that may take
/// negative values but whose shifted version is nonnegative at both corners.
///
/// The two corner evaluations are counted in `oracle_calls`. The report's
/// `objective` is the shifted value and [`RunReport::raw_objective`] the
/// original one.
pub fn shifted_maximize<O: Objective + ?Sized>(
    f: &O,
    bounds: &BoxConstraint,
    algorithm: Algorithm,
    epsilon: Option<f64>,
    opts: &RunOptions,
) -> Result<RunReport> {
    check_problem(f, bounds)?;
    let mut oracle = Oracle::new(f);
    let at_zero = oracle.evaluate(&LatticeVector::zeros(bounds.dim()))?;
    let at_top = oracle.evaluate(&bounds.upper())?;
    let shift = at_zero.min(at_top);
    let shifted = Shifted { inner: f, shift };
    let mut report = maximize(&shifted, bounds, algorithm, epsilon, opts)?;
    report.shift = shift;
    report.oracle_calls += oracle.calls();
    Ok(report)
}

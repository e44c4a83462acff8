use crate::error::Result;
use crate::lattice::{BoxConstraint, LatticeVector};
use crate::maximize::{check_epsilon, check_problem, element_sketches, finish, Algorithm, RunOptions, RunReport};
use crate::oracle::{Objective, Oracle};
use crate::rng::element_stream;
use crate::sketch::Sketch;

use super::process::{simulate_process, ProcessParams};

/// The constant `c` in the per-simulation failure budget
/// `η = ε² / (c (2+ε) |E| max(1, ln(Δ/δ)))`.
pub const ETA_CONSTANT: f64 = 4.0;

/// Failure budget `η` for one simulation, given the ratio `Δ/δ` between the
/// largest and smallest positive sketched marginals.
pub fn simulation_budget(epsilon: f64, elements: usize, spread: f64) -> f64 {
    let log_spread = libm::log(spread).max(1.0);
    let eta = epsilon * epsilon / (ETA_CONSTANT * (2.0 + epsilon) * elements as f64 * log_spread);
    eta.min(0.5)
}

fn spread(g: &Sketch, h: &Sketch) -> f64 {
    let hi = [g.max_positive(), h.max_positive()]
        .into_iter()
        .flatten()
        .fold(0.0f64, f64::max);
    let lo = [g.min_positive(), h.min_positive()]
        .into_iter()
        .flatten()
        .fold(f64::INFINITY, f64::min);
    if hi > 0.0 && lo.is_finite() {
        hi / lo
    } else {
        1.0
    }
}

/// Sketch-driven double greedy where every constant stretch of the coin
/// bias is sampled in one [`simulate_process`] call.
///
/// Oracle calls are identical to [`fast_double_greedy`](crate::maximize::fast_double_greedy);
/// conditioned on no simulation failing, the output has the same
/// distribution. If a simulation fails the zero vector is returned and the
/// report is flagged `failed`.
pub fn poly_maximize<O: Objective + ?Sized>(
    f: &O,
    bounds: &BoxConstraint,
    epsilon: f64,
    seed: u64,
) -> Result<RunReport> {
    poly_maximize_with(f, bounds, epsilon, &RunOptions::seeded(seed))
}

pub fn poly_maximize_with<O: Objective + ?Sized>(
    f: &O,
    bounds: &BoxConstraint,
    epsilon: f64,
    opts: &RunOptions,
) -> Result<RunReport> {
    check_epsilon(epsilon)?;
    check_problem(f, bounds)?;
    let dim = bounds.dim();
    let mut oracle = Oracle::new(f);
    let mut x = LatticeVector::zeros(dim);
    let mut y = bounds.upper();
    let mut simulations = 0u64;
    let mut max_eta: Option<f64> = None;
    let mut failed = false;

    'elements: for e in opts.order(dim) {
        let bound = bounds.bound(e);
        let (g, h) = element_sketches(&mut oracle, &mut x, &mut y, e, bound, epsilon)?;
        let eta = simulation_budget(epsilon, dim, spread(&g, &h));
        let mut rng = element_stream(opts.seed, e);
        while x[e] < y[e] {
            let alpha = g.value_at(x[e]);
            let beta = h.value_at(bound - y[e]);
            if beta == 0.0 {
                x.set(e, y[e]);
                break;
            }
            // alpha is constant for x(e) up to `up_end`, beta for y(e) down to `down_end`.
            let up_end = g.piece_end(x[e]);
            let down_end = bound - h.piece_end(bound - y[e]);
            let params = ProcessParams::new(
                alpha / (alpha + beta),
                up_end - x[e] + 1,
                y[e] - down_end + 1,
                y[e] - x[e],
                eta,
            )?;
            simulations += 1;
            max_eta = Some(max_eta.map_or(eta, |m: f64| m.max(eta)));
            let outcome = simulate_process(&params, &mut rng);
            if outcome.failed {
                failed = true;
                break 'elements;
            }
            x.set(e, x[e] + outcome.a);
            y.set(e, y[e] - outcome.b);
        }
        debug_assert_eq!(x[e], y[e]);
    }

    let solution = if failed { LatticeVector::zeros(dim) } else { x };
    let mut report = finish(Algorithm::PolyDG, f, solution, oracle.calls(), opts.seed, Some(epsilon));
    report.failed = failed;
    report.simulations = simulations;
    report.eta = max_eta;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maximize::fast_double_greedy;
    use crate::objectives::TabularObjective;
    use alloc::vec;

    fn one_dim(values: &[f64]) -> TabularObjective {
        TabularObjective::new(
            BoxConstraint::new(vec![values.len() as u64 - 1]).unwrap(),
            values.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn same_oracle_calls_as_fast_dg() {
        let f = one_dim(&[0.0, 4.0, 6.0, 4.0, 0.0]);
        for seed in 0..20 {
            let a = poly_maximize(&f, f.bounds(), 0.01, seed).unwrap();
            let b = fast_double_greedy(&f, f.bounds(), 0.01, seed).unwrap();
            assert_eq!(a.oracle_calls, b.oracle_calls);
            assert!(!a.failed);
            assert!((1..=3).contains(&a.solution[0]));
        }
    }

    #[test]
    fn budget_formula() {
        let eta = simulation_budget(0.1, 10, core::f64::consts::E * core::f64::consts::E);
        assert!((eta - 0.01 / (4.0 * 2.1 * 10.0 * 2.0)).abs() < 1e-15);
        // spreads below e use log factor 1
        assert!((simulation_budget(0.1, 1, 1.0) - 0.01 / (4.0 * 2.1)).abs() < 1e-15);
        assert_eq!(simulation_budget(100.0, 1, 1.0), 0.5);
    }

    #[test]
    fn rejects_bad_epsilon() {
        let f = one_dim(&[0.0, 1.0]);
        assert!(poly_maximize(&f, f.bounds(), 0.0, 0).is_err());
        assert!(poly_maximize(&f, f.bounds(), f64::INFINITY, 0).is_err());
    }
}

mod common;

use common::{chi_square_p, count};
use drmax_core::fast_sim::{process_exact_distribution, process_naive, simulate_process, ProcessParams};
use drmax_core::rng::element_stream;
use proptest::prelude::*;

const P_FLOOR: f64 = 1e-4;

fn sample_simulated(params: &ProcessParams, n: usize, seed: u64) -> (std::collections::BTreeMap<(u64, u64), u64>, u64) {
    let mut rng = element_stream(seed, 0);
    let mut failures = 0;
    let mut ok = Vec::with_capacity(n);
    for _ in 0..n {
        let o = simulate_process(params, &mut rng);
        if o.failed {
            failures += 1;
        } else {
            ok.push((o.a, o.b));
        }
    }
    (count(ok), failures)
}

#[test]
fn simulation_matches_exact_distribution_small_grid() {
    let mut seed = 0;
    for &p in &[0.1, 0.5, 0.9] {
        for &(la, lb, lab) in &[(1, 1, 1), (3, 3, 4), (5, 2, 6), (17, 3, 15), (3, 50, 40), (50, 50, 75)] {
            let params = ProcessParams::new(p, la, lb, lab, 0.01).unwrap();
            let exact = process_exact_distribution(&params).unwrap();
            seed += 1;
            let (observed, failures) = sample_simulated(&params, 20_000, seed);
            assert_eq!(failures, 0, "failures far from any batch at {params:?}");
            let pv = chi_square_p(&observed, &exact);
            assert!(pv > P_FLOOR, "p = {p}, ℓ = ({la}, {lb}, {lab}): p-value {pv}");
        }
    }
}

#[test]
fn simulation_matches_exact_distribution_with_batches() {
    // ℓ well above the batching threshold, so batches are taken.
    let cases = [
        (0.5, 600, 600, 900),
        (0.2, 400, 900, 1000),
        (0.9, 900, 300, 1100),
        (0.5, 990, 990, 990),
        (0.05, 200, 1000, 1100),
    ];
    for (i, &(p, la, lb, lab)) in cases.iter().enumerate() {
        let params = ProcessParams::new(p, la, lb, lab, 0.01).unwrap();
        assert!(params.batch_size() * 2 < la.min(lb).min(lab));
        let exact = process_exact_distribution(&params).unwrap();
        let (observed, failures) = sample_simulated(&params, 20_000, 100 + i as u64);
        assert!((failures as f64) < 0.01 * 20_000.0, "{failures} failures at {params:?}");
        let pv = chi_square_p(&observed, &exact);
        assert!(pv > P_FLOOR, "{params:?}: p-value {pv}");
    }
}

#[test]
fn naive_matches_exact_distribution() {
    for (i, &(p, la, lb, lab)) in [(0.3, 10, 10, 15), (0.7, 4, 20, 18), (0.5, 30, 30, 30)]
        .iter()
        .enumerate()
    {
        let params = ProcessParams::new(p, la, lb, lab, 0.01).unwrap();
        let exact = process_exact_distribution(&params).unwrap();
        let mut rng = element_stream(7, i);
        let observed = count((0..20_000).map(|_| {
            let o = process_naive(&params, &mut rng);
            (o.a, o.b)
        }));
        assert!(chi_square_p(&observed, &exact) > P_FLOOR);
    }
}

#[test]
fn exact_distribution_matches_closed_form_corner() {
    // ℓb = ℓa+b = n, ℓa large: the process stops after n steps, so a ~ B(n, p).
    let (n, p) = (12u64, 0.35);
    let params = ProcessParams::new(p, 100, n, n, 0.01).unwrap();
    let d = process_exact_distribution(&params).unwrap();
    let mut binom = 1.0f64;
    for k in 0..=n {
        if k > 0 {
            binom *= (n - k + 1) as f64 / k as f64;
        }
        let expected = binom * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32);
        let got = d.get(&(k, n - k)).copied().unwrap_or(0.0);
        assert!((got - expected).abs() < 1e-12, "k = {k}: {got} vs {expected}");
    }
}

#[test]
fn failure_rate_below_budget() {
    let eta = 0.01;
    let trials = 100_000u64;
    for (i, &(p, la, lb, lab)) in [
        (0.5, 2_000, 2_000, 3_000),
        (0.01, 100_000, 100_000, 100_000),
        (0.999, 1_000_000, 1_000_000, 1_500_000),
    ]
    .iter()
    .enumerate()
    {
        let params = ProcessParams::new(p, la, lb, lab, eta).unwrap();
        let mut rng = element_stream(55, i);
        let failures = (0..trials)
            .filter(|_| simulate_process(&params, &mut rng).failed)
            .count() as f64;
        let n = trials as f64;
        let limit = eta + 3.0 * (eta * (1.0 - eta) / n).sqrt();
        assert!(failures / n <= limit, "{params:?}: rate {}", failures / n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn outcomes_lie_on_the_boundary(
        p in 0.0f64..=1.0,
        la in 0u64..5_000,
        lb in 0u64..5_000,
        lab in 0u64..8_000,
        seed in any::<u64>(),
    ) {
        let params = ProcessParams::new(p, la, lb, lab, 0.05).unwrap();
        let mut rng = element_stream(seed, 0);
        let o = simulate_process(&params, &mut rng);
        if !o.failed {
            prop_assert!(params.is_terminal(o.a, o.b), "{:?} -> {:?}", params, o);
        }
    }

    #[test]
    fn exact_distribution_is_a_distribution_on_the_boundary(
        p in 0.0f64..=1.0,
        la in 0u64..60,
        lb in 0u64..60,
        lab in 0u64..100,
    ) {
        let params = ProcessParams::new(p, la, lb, lab, 0.05).unwrap();
        let d = process_exact_distribution(&params).unwrap();
        let total: f64 = d.values().sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
        prop_assert!(d.keys().all(|&(a, b)| params.is_terminal(a, b)));
    }
}

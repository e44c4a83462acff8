use drmax_core::objectives::{generate_dr_table, ConcaveSum, RevenueObjective, TabularObjective, WeightedGraph};
use drmax_core::rng::element_stream;
use drmax_core::{BoxConstraint, LatticeVector, Objective};
use proptest::prelude::*;
use rand::Rng;

fn random_graph(n: usize, density: f64, seed: u64) -> WeightedGraph {
    let mut rng = element_stream(seed, 0);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < density {
                edges.push((i, j, rng.random_range(0.1..3.0)));
            }
        }
    }
    WeightedGraph::undirected(n, &edges).unwrap()
}

fn points(bounds: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| (0..=b).map(move |v| [p.clone(), vec![v]].concat()))
            .collect();
    }
    out
}

#[test]
fn revenue_dr_test_matches_exhaustive_check() {
    let mut rng = element_stream(3, 0);
    let mut seen = [0usize; 2];
    for seed in 0..150 {
        let g = random_graph(4, 0.7, seed);
        let bounds = BoxConstraint::new((0..4).map(|_| rng.random_range(1..5)).collect()).unwrap();
        for p in [0.05, 0.1, 0.3, 0.5, 0.9] {
            let f = RevenueObjective::new(g.clone(), p).unwrap();
            let t = TabularObjective::from_fn(bounds.clone(), |x| f.value(x)).unwrap();
            let exhaustive = t.is_dr_submodular().unwrap();
            assert_eq!(
                f.is_dr_submodular_on(&bounds).unwrap(),
                exhaustive,
                "seed {seed}, p {p}, {bounds:?}"
            );
            seen[exhaustive as usize] += 1;
        }
    }
    assert!(seen[0] > 50 && seen[1] > 50, "{seen:?}");
}

#[test]
fn revenue_is_dr_submodular_while_q_to_the_bound_is_at_least_half() {
    for seed in 0..12 {
        let g = random_graph(4, 0.7, seed);
        for (p, b) in [(0.05, 4), (0.1, 4), (0.5, 1), (0.2, 3)] {
            let f = RevenueObjective::new(g.clone(), p).unwrap();
            let t = TabularObjective::from_fn(BoxConstraint::uniform(4, b).unwrap(), |x| f.value(x)).unwrap();
            assert!(t.is_dr_submodular().unwrap(), "seed {seed}, p {p}, B {b}");
        }
    }
}

#[test]
fn revenue_on_one_edge_is_convex_past_half() {
    // f(x1, 2) = 0.5^{x1+1} + 0.25 for p = 0.5: gains -0.25 then -0.125
    let f = RevenueObjective::new(WeightedGraph::undirected(2, &[(0, 1, 1.0)]).unwrap(), 0.5).unwrap();
    let v = |a: u64| f.value(&LatticeVector::from_vec(vec![a, 2]));
    assert_eq!(v(1) - v(0), -0.25);
    assert_eq!(v(2) - v(1), -0.125);
    let t = TabularObjective::from_fn(BoxConstraint::uniform(2, 2).unwrap(), |x| f.value(x)).unwrap();
    assert!(!t.is_dr_submodular().unwrap());
    assert!(!f.is_dr_submodular_on(t.bounds()).unwrap());
}

#[test]
fn revenue_matches_monte_carlo_advocates() {
    let g = random_graph(8, 0.5, 99);
    let f = RevenueObjective::new(g.clone(), 0.2).unwrap();
    let mut rng = element_stream(100, 0);
    for _ in 0..5 {
        let x = LatticeVector::from_vec((0..8).map(|_| rng.random_range(0..6)).collect());
        let trials = 40_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..trials {
            let advocate: Vec<bool> = (0..8).map(|i| (0..x[i]).any(|_| rng.random::<f64>() < 0.2)).collect();
            let revenue: f64 = g
                .arcs()
                .iter()
                .filter(|a| advocate[a.0] && !advocate[a.1])
                .map(|a| a.2)
                .sum();
            sum += revenue;
            sum_sq += revenue * revenue;
        }
        let mean = sum / trials as f64;
        let sd = ((sum_sq / trials as f64 - mean * mean) / trials as f64).sqrt();
        let exact = f.value(&x);
        assert!(
            (mean - exact).abs() <= 4.0 * sd + 1e-12,
            "MC {mean} vs {exact} (sd {sd})"
        );
    }
}

#[test]
fn revenue_fast_marginal_agrees_with_differences() {
    let g = random_graph(10, 0.4, 5);
    let mut rng = element_stream(6, 0);
    for p in [1e-4, 0.01, 0.5, 0.99] {
        let f = RevenueObjective::new(g.clone(), p).unwrap();
        for _ in 0..50 {
            let x = LatticeVector::from_vec((0..10).map(|_| rng.random_range(0..50)).collect());
            for i in 0..10 {
                let mut up = x.clone();
                up.set(i, x[i] + 1);
                let diff = f.value(&up) - f.value(&x);
                let fast = f.fast_marginal(&x, i).unwrap();
                assert!((diff - fast).abs() <= 1e-9 * (1.0 + diff.abs()), "{diff} vs {fast}");
            }
        }
    }
}

#[test]
fn revenue_value_bounded_by_total_weight() {
    let g = random_graph(12, 0.3, 8);
    let total = g.total_weight();
    let f = RevenueObjective::new(g, 0.3).unwrap();
    let mut rng = element_stream(9, 0);
    for _ in 0..500 {
        let x = LatticeVector::from_vec((0..12).map(|_| rng.random_range(0..40)).collect());
        let v = f.value(&x);
        assert!((0.0..=total).contains(&v));
    }
    assert_eq!(f.value(&LatticeVector::zeros(12)), 0.0);
}

#[test]
fn revenue_undirected_expansion_doubles_arcs() {
    let g = WeightedGraph::undirected(3, &[(0, 1, 2.0), (1, 2, 1.0)]).unwrap();
    assert_eq!(g.arcs().len(), 4);
    assert_eq!(g.total_weight(), 6.0);
    assert!(WeightedGraph::directed(2, vec![(0, 0, 1.0)]).is_err());
    assert!(WeightedGraph::directed(2, vec![(0, 1, -1.0)]).is_err());
    assert!(WeightedGraph::directed(2, vec![(0, 2, 1.0)]).is_err());
    assert!(RevenueObjective::new(g, 1.0).is_err());
}

#[test]
fn concave_sums_are_dr_submodular() {
    let mut rng = element_stream(10, 0);
    let bounds = BoxConstraint::new(vec![5, 3, 6]).unwrap();
    for _ in 0..20 {
        for f in [
            ConcaveSum::random_increasing(&bounds, &mut rng),
            ConcaveSum::random_decreasing(&bounds, &mut rng),
        ] {
            let t = TabularObjective::from_fn(bounds.clone(), |x| f.value(x)).unwrap();
            assert!(t.is_dr_submodular().unwrap());
            for x in points(bounds.bounds()) {
                let x = LatticeVector::from_vec(x);
                for e in 0..3 {
                    if x[e] < bounds.bound(e) {
                        let mut up = x.clone();
                        up.set(e, x[e] + 1);
                        let diff = f.value(&up) - f.value(&x);
                        assert!((f.fast_marginal(&x, e).unwrap() - diff).abs() < 1e-9);
                    }
                }
            }
        }
    }
}

/// α + β ≥ 0 for every x ≤ y with x(e) < y(e), checked over all such pairs.
#[test]
fn up_and_down_marginals_never_both_negative() {
    let mut rng = element_stream(11, 0);
    let bounds = BoxConstraint::new(vec![3, 2, 3]).unwrap();
    for _ in 0..10 {
        let f = generate_dr_table(&bounds, &mut rng).unwrap();
        let all = points(bounds.bounds());
        for x in &all {
            for y in &all {
                if !x.iter().zip(y).all(|(a, b)| a <= b) {
                    continue;
                }
                for e in 0..3 {
                    if x[e] >= y[e] {
                        continue;
                    }
                    let (xv, yv) = (LatticeVector::from_vec(x.clone()), LatticeVector::from_vec(y.clone()));
                    let (mut xu, mut yd) = (xv.clone(), yv.clone());
                    xu.set(e, x[e] + 1);
                    yd.set(e, y[e] - 1);
                    let alpha = f.value(&xu) - f.value(&xv);
                    let beta = f.value(&yd) - f.value(&yv);
                    assert!(alpha + beta >= -1e-9, "x {x:?}, y {y:?}, e {e}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn per_edge_identity_holds(
        seed in any::<u64>(),
        p in 0.001f64..0.999,
        xs in prop::collection::vec(0u64..200, 6),
    ) {
        let g = random_graph(6, 0.6, seed);
        let f = RevenueObjective::new(g.clone(), p).unwrap();
        let x = LatticeVector::from_vec(xs);
        for &(i, j, _) in g.arcs() {
            prop_assert!(f.per_edge_identity(&x, i, j).unwrap());
        }
    }

    #[test]
    fn generated_tables_are_nonnegative_dr(bounds in prop::collection::vec(1u64..5, 1..4), seed in any::<u64>()) {
        let bounds = BoxConstraint::new(bounds).unwrap();
        let f = generate_dr_table(&bounds, &mut element_stream(seed, 0)).unwrap();
        prop_assert!(f.is_dr_submodular().unwrap());
        prop_assert!(f.table().iter().all(|&v| v >= 0.0));
    }
}

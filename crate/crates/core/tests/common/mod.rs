#![allow(dead_code)]

use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson goodness-of-fit of `observed` counts against probabilities
/// `expected` (keyed alike, in order). Adjacent categories are pooled until
/// every pooled expected count is at least 5; probability not covered by
/// `expected` forms a final tail category. Returns the p-value.
pub fn chi_square_p<K: Ord + Clone>(observed: &BTreeMap<K, u64>, expected: &BTreeMap<K, f64>) -> f64 {
    let total: u64 = observed.values().sum();
    let n = total as f64;
    for k in observed.keys() {
        assert!(
            expected.contains_key(k),
            "observed a category with zero expected probability"
        );
    }
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut e_acc, mut o_acc) = (0.0, 0.0);
    let mut covered = 0.0;
    for (k, &p) in expected {
        covered += p;
        e_acc += p * n;
        o_acc += *observed.get(k).unwrap_or(&0) as f64;
        if e_acc >= 5.0 {
            cells.push((o_acc, e_acc));
            e_acc = 0.0;
            o_acc = 0.0;
        }
    }
    let tail = (1.0 - covered).max(0.0) * n;
    e_acc += tail;
    if e_acc > 0.0 || o_acc > 0.0 {
        if e_acc >= 5.0 || cells.is_empty() {
            cells.push((o_acc, e_acc));
        } else {
            let last = cells.last_mut().unwrap();
            last.0 += o_acc;
            last.1 += e_acc;
        }
    }
    if cells.len() < 2 {
        return 1.0;
    }
    let stat: f64 = cells.iter().map(|&(o, e)| (o - e) * (o - e) / e).sum();
    let dist = ChiSquared::new((cells.len() - 1) as f64).unwrap();
    1.0 - dist.cdf(stat)
}

pub fn count<K: Ord>(samples: impl IntoIterator<Item = K>) -> BTreeMap<K, u64> {
    let mut m = BTreeMap::new();
    for s in samples {
        *m.entry(s).or_insert(0) += 1;
    }
    m
}

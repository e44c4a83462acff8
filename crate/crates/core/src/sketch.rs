//! Piecewise-constant sketches of non-increasing functions.
//!
//! For `φ : {0, .., B-1} → R` non-increasing and `ε > 0`, a [`Sketch`] stores
//! breakpoints `(b_τ, τ)` where `τ` ranges over `δ(1+ε)^k` between the
//! smallest positive value `δ` and the largest value `Δ = φ(0)`, and `b_τ` is
//! the first argument with `φ(b_τ) < τ` (with `φ(B) = -∞`). Reading the
//! sketch at `b` returns the `τ` of the breakpoint with the smallest
//! `b_τ > b`, which satisfies
//!
//! ```text
//! φ(b) > 0  ⇒  v ≤ φ(b) < (1 + ε) v
//! φ(b) ≤ 0  ⇒  v = 0
//! ```
//!
//! Each breakpoint costs one binary search, so building takes
//! `O(1/ε · log(Δ/δ) · log B)` evaluations of `φ`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{invalid, Result};

/// Relative slack on the loop bound `τ <= Δ`, absorbing rounding in the
/// repeated multiplication `τ ← (1+ε)τ`.
const THRESHOLD_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Sketch {
    /// Sorted by strictly increasing `b_τ`; `τ` strictly decreasing.
    pairs: Vec<(u64, f64)>,
    epsilon: f64,
    domain_size: u64,
    min_positive: Option<f64>,
    max_positive: Option<f64>,
}

/// Memoized access to `φ`. Repeated probes of the same point are free.
struct Probe<F> {
    phi: F,
    cache: BTreeMap<u64, f64>,
}

impl<F: FnMut(u64) -> Result<f64>> Probe<F> {
    fn get(&mut self, b: u64) -> Result<f64> {
        if let Some(&v) = self.cache.get(&b) {
            return Ok(v);
        }
        let v = (self.phi)(b)?;
        self.cache.insert(b, v);
        Ok(v)
    }

    /// Smallest `b` in `[lo, hi]` with `pred(φ(b))`, where `b = hi` is
    /// known to satisfy the predicate (it is either `B` or a previous
    /// breakpoint) and is never evaluated.
    fn first_below(&mut self, mut lo: u64, mut hi: u64, pred: impl Fn(f64) -> bool) -> Result<u64> {
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if pred(self.get(mid)?) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }
}

impl Sketch {
    /// Sketch `phi` on `{0, .., domain_size - 1}`.
    ///
    /// `phi` must be non-increasing; if it is not, the result is some valid
    /// but meaningless sketch.
    pub fn build(mut phi: impl FnMut(u64) -> f64, domain_size: u64, epsilon: f64) -> Result<Self> {
        Self::try_build(|b| Ok(phi(b)), domain_size, epsilon)
    }

    /// Like [`Sketch::build`], but first checks in `O(B)` evaluations that
    /// `phi` is non-increasing.
    pub fn build_validated(mut phi: impl FnMut(u64) -> f64, domain_size: u64, epsilon: f64) -> Result<Self> {
        check_args(domain_size, epsilon)?;
        let values: Vec<f64> = (0..domain_size).map(&mut phi).collect();
        if let Some(b) = values.windows(2).position(|w| w[1] > w[0]) {
            return Err(invalid(alloc::format!(
                "function increases between {} and {}",
                b,
                b + 1
            )));
        }
        Self::build(|b| values[b as usize], domain_size, epsilon)
    }

    /// Fallible variant of [`Sketch::build`]; errors from `phi` abort the build.
    pub fn try_build(phi: impl FnMut(u64) -> Result<f64>, domain_size: u64, epsilon: f64) -> Result<Self> {
        check_args(domain_size, epsilon)?;
        let big_b = domain_size;
        let mut probe = Probe {
            phi,
            cache: BTreeMap::new(),
        };

        let b0 = probe.first_below(0, big_b, |v| v <= 0.0)?;
        if b0 == 0 {
            return Ok(Sketch {
                pairs: alloc::vec![(big_b, 0.0)],
                epsilon,
                domain_size,
                min_positive: None,
                max_positive: None,
            });
        }

        let max_value = probe.get(0)?;
        let min_value = probe.get(b0 - 1)?;

        // Breakpoints in order of increasing τ, hence non-increasing b_τ.
        let mut rising: Vec<(u64, f64)> = Vec::new();
        let limit = max_value * (1.0 + THRESHOLD_SLACK);
        let mut tau = min_value;
        let mut hi = big_b;
        let mut first = true;
        while tau <= limit {
            // φ ≥ δ on [0, b0) and φ(b0) ≤ 0, so b_δ = b0.
            let b_tau = if first {
                b0
            } else {
                probe.first_below(0, hi, |v| v < tau)?
            };
            first = false;
            match rising.last_mut() {
                Some(last) if last.0 == b_tau => last.1 = tau,
                _ => rising.push((b_tau, tau)),
            }
            hi = b_tau;
            if b_tau == 0 {
                break;
            }
            let next = tau * (1.0 + epsilon);
            if next <= tau {
                return Err(invalid(alloc::format!(
                    "threshold grid does not advance from {tau:e} with epsilon {epsilon}"
                )));
            }
            tau = next;
        }
        // b_τ = 0 can only appear through the slack and is never selected.
        rising.retain(|&(b, _)| b > 0);
        rising.reverse();
        if rising.last().map(|p| p.0) != Some(big_b) {
            rising.push((big_b, 0.0));
        }

        Ok(Sketch {
            pairs: rising,
            epsilon,
            domain_size,
            min_positive: Some(min_value),
            max_positive: Some(max_value),
        })
    }

    /// Reconstructed value at `b`.
    pub fn eval(&self, b: u64) -> Result<f64> {
        if b >= self.domain_size {
            return Err(invalid(alloc::format!(
                "sketch argument {b} outside 0..{}",
                self.domain_size
            )));
        }
        Ok(self.value_at(b))
    }

    fn pair_index(&self, b: u64) -> usize {
        self.pairs.partition_point(|&(bt, _)| bt <= b)
    }

    pub(crate) fn value_at(&self, b: u64) -> f64 {
        debug_assert!(b < self.domain_size);
        self.pairs[self.pair_index(b)].1
    }

    /// Largest `b'` with the same sketch value as `b`, i.e. the end of the
    /// constant piece containing `b`.
    pub fn piece_end(&self, b: u64) -> u64 {
        self.pairs[self.pair_index(b)].0 - 1
    }

    /// Breakpoints `(b_τ, τ)` sorted by increasing `b_τ`.
    pub fn pairs(&self) -> &[(u64, f64)] {
        &self.pairs
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn domain_size(&self) -> u64 {
        self.domain_size
    }

    /// `δ`: the smallest positive value of the sketched function, if any.
    pub fn min_positive(&self) -> Option<f64> {
        self.min_positive
    }

    /// `Δ = φ(0)` when the function has a positive value.
    pub fn max_positive(&self) -> Option<f64> {
        self.max_positive
    }
}

fn check_args(domain_size: u64, epsilon: f64) -> Result<()> {
    if domain_size == 0 {
        return Err(invalid("sketch domain must be nonempty"));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(invalid(alloc::format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    Ok(())
}

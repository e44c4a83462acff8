use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{invalid, Result};

/// Draw from the geometric distribution `Pr[k] = (1-p)^{k-1} p`, `k >= 1`.
///
/// Inversion: `k = ⌈ln U / ln(1-p)⌉` for `U` uniform on `(0, 1]`, which
/// takes constant time for every `p`.
pub fn sample_geometric<R: Rng + ?Sized>(p: f64, rng: &mut R) -> Result<u64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid(alloc::format!(
            "geometric parameter must lie in (0, 1], got {p}"
        )));
    }
    if p == 1.0 {
        return Ok(1);
    }
    let u = 1.0 - rng.random::<f64>();
    let k = libm::ceil(libm::log(u) / libm::log1p(-p));
    if k >= u64::MAX as f64 {
        Ok(u64::MAX)
    } else {
        Ok((k as u64).max(1))
    }
}

/// Draw from the binomial distribution `B(n, p)`.
///
/// Backed by `rand_distr`'s exact sampler (inversion for small `np`, BTPE
/// otherwise), so the cost does not grow with `n`.
pub fn sample_binomial<R: Rng + ?Sized>(n: u64, p: f64, rng: &mut R) -> Result<u64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(alloc::format!(
            "binomial parameter must lie in [0, 1], got {p}"
        )));
    }
    if n == 0 || p == 0.0 {
        return Ok(0);
    }
    if p == 1.0 {
        return Ok(n);
    }
    let dist = Binomial::new(n, p).map_err(|err| invalid(alloc::format!("binomial({n}, {p}): {err}")))?;
    Ok(dist.sample(rng))
}

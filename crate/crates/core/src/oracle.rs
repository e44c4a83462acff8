use crate::error::{invalid, Error, Result};
use crate::lattice::{BoxConstraint, LatticeVector};

/// A real-valued function on `Z_+^E`, deterministic in `x`.
pub trait Objective {
    /// Number of coordinates `|E|`.
    fn dim(&self) -> usize;

    fn value(&self, x: &LatticeVector) -> f64;

    /// The box the function is defined on, when it is not all of `Z_+^E`.
    fn domain(&self) -> Option<&BoxConstraint> {
        None
    }

    /// `f(x + χ_e) - f(x)` computed in a single step, for objectives with
    /// incremental structure. An [`Oracle`] counts it as one call.
    fn fast_marginal(&self, _x: &LatticeVector, _e: usize) -> Option<f64> {
        None
    }
}

impl<O: Objective + ?Sized> Objective for &O {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn value(&self, x: &LatticeVector) -> f64 {
        (**self).value(x)
    }

    fn domain(&self) -> Option<&BoxConstraint> {
        (**self).domain()
    }

    fn fast_marginal(&self, x: &LatticeVector, e: usize) -> Option<f64> {
        (**self).fast_marginal(x, e)
    }
}

/// Evaluation oracle with call counting. One algorithm run owns one oracle.
#[derive(Debug)]
pub struct Oracle<'a, O: ?Sized> {
    objective: &'a O,
    calls: u64,
}

impl<'a, O: Objective + ?Sized> Oracle<'a, O> {
    pub fn new(objective: &'a O) -> Self {
        Oracle { objective, calls: 0 }
    }

    pub fn objective(&self) -> &'a O {
        self.objective
    }

    /// Oracle calls made so far.
    pub fn calls(&self) -> u64 {
        self.calls
    }

    pub fn dim(&self) -> usize {
        self.objective.dim()
    }

    fn check(&self, x: &LatticeVector) -> Result<()> {
        let dim = self.objective.dim();
        if x.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: x.dim(),
            });
        }
        match self.objective.domain() {
            Some(domain) => domain.check(x),
            None => Ok(()),
        }
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e >= self.objective.dim() {
            return Err(invalid(alloc::format!(
                "element {e} out of range for ground set of size {}",
                self.objective.dim()
            )));
        }
        Ok(())
    }

    /// `f(x)`; one call.
    pub fn evaluate(&mut self, x: &LatticeVector) -> Result<f64> {
        self.check(x)?;
        self.calls += 1;
        Ok(self.objective.value(x))
    }

    /// `f(χ_e | x) = f(x + χ_e) - f(x)`.
    ///
    /// Two calls, or one if the objective provides a fast marginal.
    pub fn marginal_up(&mut self, x: &LatticeVector, e: usize) -> Result<f64> {
        self.check_element(e)?;
        self.check(x)?;
        if let Some(domain) = self.objective.domain() {
            if x[e] >= domain.bound(e) {
                return Err(Error::OutOfDomain {
                    coord: e,
                    value: x[e] + 1,
                    bound: domain.bound(e),
                });
            }
        }
        if let Some(gain) = self.objective.fast_marginal(x, e) {
            self.calls += 1;
            return Ok(gain);
        }
        let mut up = x.clone();
        up.set(e, x[e] + 1);
        self.calls += 2;
        Ok(self.objective.value(&up) - self.objective.value(x))
    }

    /// `f(-χ_e | y) = f(y - χ_e) - f(y)`; requires `y(e) >= 1`.
    pub fn marginal_down(&mut self, y: &LatticeVector, e: usize) -> Result<f64> {
        self.check_element(e)?;
        self.check(y)?;
        if y[e] == 0 {
            return Err(invalid(alloc::format!("cannot step down coordinate {e} below zero")));
        }
        let mut down = y.clone();
        down.set(e, y[e] - 1);
        if let Some(gain) = self.objective.fast_marginal(&down, e) {
            self.calls += 1;
            return Ok(-gain);
        }
        self.calls += 2;
        Ok(self.objective.value(&down) - self.objective.value(y))
    }

    // Unchecked variants for the algorithms' inner loops. The caller has
    // validated the box once, so these skip the O(|E|) domain scan and
    // mutate `x` temporarily instead of cloning it.

    pub(crate) fn up_in_place(&mut self, x: &mut LatticeVector, e: usize) -> f64 {
        if let Some(gain) = self.objective.fast_marginal(x, e) {
            self.calls += 1;
            return gain;
        }
        self.calls += 2;
        let here = self.objective.value(x);
        x.set(e, x[e] + 1);
        let there = self.objective.value(x);
        x.set(e, x[e] - 1);
        there - here
    }

    pub(crate) fn down_in_place(&mut self, y: &mut LatticeVector, e: usize) -> f64 {
        debug_assert!(y[e] >= 1);
        y.set(e, y[e] - 1);
        let gain = self.up_in_place(y, e);
        y.set(e, y[e] + 1);
        -gain
    }
}

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use crate::error::{invalid, Error, Result};

/// The ground set `E = {0, .., size - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet {
    size: usize,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(invalid("ground set must be nonempty"));
        }
        Ok(GroundSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.size
    }
}

/// A point of `Z_+^E`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector(Vec<u64>);

impl LatticeVector {
    pub fn zeros(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    pub fn from_vec(values: Vec<u64>) -> Self {
        LatticeVector(values)
    }

    /// The unit vector `χ_e`.
    pub fn unit(dim: usize, e: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[e] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn get(&self, e: usize) -> u64 {
        self.0[e]
    }

    pub fn set(&mut self, e: usize, value: u64) {
        self.0[e] = value;
    }

    pub fn l1_norm(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Component-wise `self <= other`.
    pub fn le(&self, other: &LatticeVector) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }
}

impl Index<usize> for LatticeVector {
    type Output = u64;

    fn index(&self, e: usize) -> &u64 {
        &self.0[e]
    }
}

impl From<Vec<u64>> for LatticeVector {
    fn from(values: Vec<u64>) -> Self {
        LatticeVector(values)
    }
}

/// The bound vector `B` of the feasible box `0 <= x <= B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxConstraint {
    bounds: Vec<u64>,
    l1_norm: u64,
    linf_norm: u64,
}

impl BoxConstraint {
    pub fn new(bounds: Vec<u64>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(invalid("box needs at least one coordinate"));
        }
        if let Some(e) = bounds.iter().position(|&b| b == 0) {
            return Err(invalid(alloc::format!("bound of coordinate {e} must be >= 1")));
        }
        let l1_norm = bounds
            .iter()
            .try_fold(0u64, |acc, &b| acc.checked_add(b))
            .ok_or_else(|| invalid("sum of bounds overflows u64"))?;
        let linf_norm = bounds.iter().copied().max().unwrap_or(0);
        Ok(BoxConstraint {
            bounds,
            l1_norm,
            linf_norm,
        })
    }

    /// The same bound on every one of `dim` coordinates.
    pub fn uniform(dim: usize, bound: u64) -> Result<Self> {
        Self::new(vec![bound; dim])
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn ground_set(&self) -> GroundSet {
        GroundSet { size: self.dim() }
    }

    pub fn bound(&self, e: usize) -> u64 {
        self.bounds[e]
    }

    pub fn bounds(&self) -> &[u64] {
        &self.bounds
    }

    pub fn l1_norm(&self) -> u64 {
        self.l1_norm
    }

    pub fn linf_norm(&self) -> u64 {
        self.linf_norm
    }

    /// The top corner `B` as a lattice vector.
    pub fn upper(&self) -> LatticeVector {
        LatticeVector(self.bounds.clone())
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.check(x).is_ok()
    }

    pub(crate) fn check(&self, x: &LatticeVector) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        for (coord, (&value, &bound)) in x.0.iter().zip(&self.bounds).enumerate() {
            if value > bound {
                return Err(Error::OutOfDomain { coord, value, bound });
            }
        }
        Ok(())
    }

    /// Number of lattice points in the box, `∏ (B(e) + 1)`, or `None` on overflow.
    pub fn point_count(&self) -> Option<u128> {
        self.bounds
            .iter()
            .try_fold(1u128, |acc, &b| acc.checked_mul(b as u128 + 1))
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid of `n` nodes spanning `[lo, hi]` inclusive.
///
/// `n` is odd so that a symmetric grid has a node at zero and the grid can
/// be halved for the Richardson error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid", into = "RawGrid")]
pub struct GridSpec {
    lo: f64,
    hi: f64,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct RawGrid {
    lo: f64,
    hi: f64,
    n: usize,
}

impl TryFrom<RawGrid> for GridSpec {
    type Error = Error;

    fn try_from(raw: RawGrid) -> Result<Self> {
        GridSpec::new(raw.lo, raw.hi, raw.n)
    }
}

impl From<GridSpec> for RawGrid {
    fn from(g: GridSpec) -> Self {
        RawGrid { lo: g.lo, hi: g.hi, n: g.n }
    }
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidGrid(format!("non-finite bounds [{lo}, {hi}]")));
        }
        if lo >= hi {
            return Err(Error::InvalidGrid(format!("lo = {lo} must be below hi = {hi}")));
        }
        if n < 3 || n % 2 == 0 {
            return Err(Error::InvalidGrid(format!("node count {n} must be odd and at least 3")));
        }
        Ok(Self { lo, hi, n })
    }

    /// Grid on `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n)
    }

    /// Smallest odd-node grid on `[lo, hi]` whose spacing does not exceed `max_step`.
    pub fn with_max_step(lo: f64, hi: f64, max_step: f64) -> Result<Self> {
        if !(max_step > 0.0) {
            return Err(Error::InvalidGrid(format!("step {max_step} must be positive")));
        }
        let mut cells = ((hi - lo) / max_step).ceil().max(2.0) as usize;
        if cells % 2 == 1 {
            cells += 1;
        }
        Self::new(lo, hi, cells + 1)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n - 1) as f64
    }

    /// Largest absolute coordinate covered by the grid.
    pub fn max_abs(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Node `k`, computed as `lo + (hi - lo) k / (n - 1)` so that rational
    /// nodes such as `0` or `0.5` land exactly.
    pub fn point(&self, k: usize) -> f64 {
        debug_assert!(k < self.n);
        if k + 1 == self.n {
            return self.hi;
        }
        self.lo + (self.hi - self.lo) * (k as f64) / ((self.n - 1) as f64)
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.point(k)).collect()
    }

    /// Cell midpoints; none of them coincides with a node.
    pub fn midpoints(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n - 1).map(|k| self.point(k) + 0.5 * h).collect()
    }

    /// Composite-trapezoid weight of node `k`, including the step.
    pub fn trapezoid_weight(&self, k: usize) -> f64 {
        let h = self.step();
        if k == 0 || k + 1 == self.n {
            0.5 * h
        } else {
            h
        }
    }

    pub fn trapezoid_weights(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.trapezoid_weight(k)).collect()
    }

    /// Index of the last node not exceeding `x`, or `None` when `x < lo`.
    pub fn locate(&self, x: f64) -> Option<usize> {
        if x < self.lo {
            return None;
        }
        let k = ((x - self.lo) / self.step()).floor() as usize;
        Some(k.min(self.n - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_and_inverted() {
        assert!(GridSpec::new(0.0, 1.0, 4).is_err());
        assert!(GridSpec::new(1.0, 0.0, 5).is_err());
        assert!(GridSpec::new(0.0, f64::NAN, 5).is_err());
        assert!(GridSpec::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn symmetric_grid_has_exact_zero_and_half() {
        let g = GridSpec::symmetric(4.0, 801).unwrap();
        assert_eq!(g.point(400), 0.0);
        assert_eq!(g.point(450), 0.5);
        assert_eq!(g.point(800), 4.0);
        assert!(g.midpoints().iter().all(|&m| m != 0.0));
    }

    #[test]
    fn max_step_grid_is_odd() {
        let g = GridSpec::with_max_step(-3.0, 3.0, 0.1).unwrap();
        assert_eq!(g.len() % 2, 1);
        assert!(g.step() <= 0.1 + 1e-15);
    }

    #[test]
    fn serde_validates() {
        let ok: GridSpec = serde_json::from_str(r#"{"lo":-6,"hi":6,"n":601}"#).unwrap();
        assert_eq!(ok.len(), 601);
        assert!(serde_json::from_str::<GridSpec>(r#"{"lo":-6,"hi":6,"n":600}"#).is_err());
    }
}

use crate::error::{Error, Result};
use crate::numerics::{integrate_samples_1d, integrate_samples_2d, GridSpec};

/// Default tolerance for accepting a sampled density as normalized.
pub const TOL_NORM: f64 = 1e-6;

/// Real function sampled on a uniform grid, typically a PDF.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDensity {
    grid: GridSpec,
    values: Vec<f64>,
    /// Trapezoid integral of the values as constructed, before any rescaling.
    raw_mass: f64,
    normalized: bool,
}

impl GridDensity {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        let q = integrate_samples_1d(&values, &grid)?;
        Ok(Self { grid, values, raw_mass: q.value, normalized: false })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(grid: GridSpec, f: F) -> Result<Self> {
        let values = grid.points().into_iter().map(f).collect();
        Self::new(grid, values)
    }

    /// Flags the density as normalized when its mass is within `tol` of one,
    /// without rescaling.
    pub fn check_normalized(mut self, tol: f64) -> Result<Self> {
        if (self.raw_mass - 1.0).abs() > tol {
            return Err(Error::NotNormalized { defect: (self.raw_mass - 1.0).abs() });
        }
        self.normalized = true;
        Ok(self)
    }

    /// Rescales to unit mass when the current mass is within `tol` of one.
    pub fn renormalize(mut self, tol: f64) -> Result<Self> {
        let mass = self.mass();
        if !((mass - 1.0).abs() <= tol) {
            return Err(Error::InversionFailure { mass, tol });
        }
        for v in &mut self.values {
            *v /= mass;
        }
        self.normalized = true;
        Ok(self)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn points(&self) -> Vec<f64> {
        self.grid.points()
    }

    pub fn raw_mass(&self) -> f64 {
        self.raw_mass
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Trapezoid integral of the current values.
    pub fn mass(&self) -> f64 {
        self.values.iter().enumerate().map(|(k, v)| self.grid.trapezoid_weight(k) * v).sum()
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Linear interpolation; zero outside the grid.
    pub fn value_at(&self, x: f64) -> f64 {
        match self.grid.locate(x) {
            None => 0.0,
            Some(k) if k + 1 >= self.grid.len() => {
                if x == self.grid.hi() {
                    self.values[k]
                } else {
                    0.0
                }
            }
            Some(k) => {
                let t = (x - self.grid.point(k)) / self.grid.step();
                self.values[k] * (1.0 - t) + self.values[k + 1] * t
            }
        }
    }

    /// Largest `|f(x) - f(-x)|` over the nodes of a symmetric grid.
    pub fn asymmetry(&self) -> f64 {
        let n = self.values.len();
        (0..n / 2).map(|k| (self.values[k] - self.values[n - 1 - k]).abs()).fold(0.0, f64::max)
    }
}

/// `F(x)`: trapezoid integral from the lower grid edge, with linear
/// interpolation inside the last cell; clamped to `[0, 1]`.
pub fn cdf_from_pdf(f: &GridDensity, x: f64) -> f64 {
    let g = f.grid();
    if x <= g.lo() {
        return 0.0;
    }
    if x >= g.hi() {
        return f.mass().clamp(0.0, 1.0);
    }
    let k = g.locate(x).expect("x above lo");
    let h = g.step();
    let v = f.values();
    let mut acc = 0.0;
    for j in 0..k {
        acc += 0.5 * h * (v[j] + v[j + 1]);
    }
    let dx = x - g.point(k);
    let fx = f.value_at(x);
    acc += 0.5 * dx * (v[k] + fx);
    acc.clamp(0.0, 1.0)
}

/// `<g(X)> = int g(x) f(x) dx` by the trapezoid rule on the density's grid.
pub fn expect_g<G: Fn(f64) -> f64>(f: &GridDensity, g: G) -> f64 {
    let grid = f.grid();
    f.values().iter().enumerate().map(|(k, v)| grid.trapezoid_weight(k) * g(grid.point(k)) * v).sum()
}

/// Real function on a uniform 2-D grid, stored row-major in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDensity2D {
    gx: GridSpec,
    gy: GridSpec,
    values: Vec<f64>,
}

impl GridDensity2D {
    pub fn new(gx: GridSpec, gy: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != gx.len() * gy.len() {
            return Err(Error::DimensionMismatch { expected: gx.len() * gy.len(), found: values.len() });
        }
        Ok(Self { gx, gy, values })
    }

    pub fn from_fn<F: Fn(f64, f64) -> f64>(gx: GridSpec, gy: GridSpec, f: F) -> Result<Self> {
        let ys = gy.points();
        let mut values = Vec::with_capacity(gx.len() * gy.len());
        for x in gx.points() {
            values.extend(ys.iter().map(|&y| f(x, y)));
        }
        Self::new(gx, gy, values)
    }

    pub fn gx(&self) -> &GridSpec {
        &self.gx
    }

    pub fn gy(&self) -> &GridSpec {
        &self.gy
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.gy.len() + j]
    }

    pub fn integral(&self) -> Result<f64> {
        Ok(integrate_samples_2d(&self.values, &self.gx, &self.gy)?.value)
    }

    /// `int h(x, y) f(x, y) dx dy`.
    pub fn integrate_weighted<H: Fn(f64, f64) -> f64>(&self, h: H) -> Result<f64> {
        let ys = self.gy.points();
        let mut weighted = Vec::with_capacity(self.values.len());
        for (i, x) in self.gx.points().into_iter().enumerate() {
            let row = &self.values[i * ys.len()..(i + 1) * ys.len()];
            weighted.extend(ys.iter().zip(row).map(|(&y, &v)| h(x, y) * v));
        }
        Ok(integrate_samples_2d(&weighted, &self.gx, &self.gy)?.value)
    }

    /// `int f(x, y) dy` at every `x` node.
    pub fn marginal_x(&self) -> Vec<f64> {
        let ny = self.gy.len();
        (0..self.gx.len())
            .map(|i| (0..ny).map(|j| self.gy.trapezoid_weight(j) * self.get(i, j)).sum())
            .collect()
    }

    /// `int f(x, y) dx` at every `y` node.
    pub fn marginal_y(&self) -> Vec<f64> {
        let nx = self.gx.len();
        (0..self.gy.len())
            .map(|j| (0..nx).map(|i| self.gx.trapezoid_weight(i) * self.get(i, j)).sum())
            .collect()
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn normal(mu: f64, sigma: f64) -> impl Fn(f64) -> f64 {
        move |x| (-0.5 * ((x - mu) / sigma).powi(2)).exp() / (sigma * (2.0 * PI).sqrt())
    }

    fn std_normal_grid() -> GridDensity {
        GridDensity::from_fn(GridSpec::symmetric(8.0, 4001).unwrap(), normal(0.0, 1.0))
            .unwrap()
            .check_normalized(TOL_NORM)
            .unwrap()
    }

    #[test]
    fn cdf_of_standard_normal() {
        let f = std_normal_grid();
        assert!((cdf_from_pdf(&f, 0.0) - 0.5).abs() < 1e-6);
        assert_eq!(cdf_from_pdf(&f, -8.0), 0.0);
        assert_eq!(cdf_from_pdf(&f, -100.0), 0.0);
        assert!((cdf_from_pdf(&f, 8.0) - 1.0).abs() < TOL_NORM);
        // Phi(1) = 0.841344746068543
        assert!((cdf_from_pdf(&f, 1.0) - 0.841_344_746_068_543).abs() < 1e-6);
        assert!((cdf_from_pdf(&f, 1.0013) - 0.841_344_746_068_543).abs() > 1e-5);
    }

    #[test]
    fn gaussian_moments_by_expect_g() {
        let (mu, sigma) = (0.7, 1.3);
        let f = GridDensity::from_fn(GridSpec::new(mu - 8.0 * sigma, mu + 8.0 * sigma, 4001).unwrap(), normal(mu, sigma))
            .unwrap()
            .check_normalized(TOL_NORM)
            .unwrap();
        assert!((expect_g(&f, |_| 1.0) - 1.0).abs() < TOL_NORM);
        assert!((expect_g(&f, |x| x) - mu).abs() < 1e-6);
        assert!((expect_g(&f, |x| (x - mu).powi(2)) - sigma * sigma).abs() < 1e-5);
    }

    #[test]
    fn unnormalized_density_rejected() {
        let g = GridSpec::symmetric(8.0, 801).unwrap();
        let f = GridDensity::from_fn(g, |x| 2.0 * normal(0.0, 1.0)(x)).unwrap();
        assert!((f.raw_mass() - 2.0).abs() < 1e-8);
        assert!(f.clone().check_normalized(TOL_NORM).is_err());
        assert!(f.renormalize(1e-3).is_err());
    }

    #[test]
    fn interpolation_hits_nodes() {
        let f = std_normal_grid();
        assert_eq!(f.value_at(0.0), normal(0.0, 1.0)(0.0));
        assert_eq!(f.value_at(8.0), *f.values().last().unwrap());
        assert_eq!(f.value_at(8.5), 0.0);
    }

    #[test]
    fn marginals_of_product_density() {
        let g = GridSpec::symmetric(7.0, 701).unwrap();
        let n = normal(0.0, 1.0);
        let f2 = GridDensity2D::from_fn(g, g, |x, y| n(x) * n(y)).unwrap();
        assert!((f2.integral().unwrap() - 1.0).abs() < 1e-10);
        let mx = f2.marginal_x();
        assert!((mx[350] - n(0.0)).abs() < 1e-10);
        let my = f2.marginal_y();
        assert!((my[400] - n(1.0)).abs() < 1e-10);
    }
}

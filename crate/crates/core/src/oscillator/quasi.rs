use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::classical::{CharFn, GridDensity2D};
use crate::error::Result;
use crate::numerics::{integrate_2d, GridSpec};

/// `hbar z(x, y) = exp(-(x^2 + y^2)/2 + i x y) / (sqrt 2 pi)` for the ground
/// state, in the dimensionless variables `x = q/q0`, `y = p/p0`.
pub fn quasi_z(x: f64, y: f64) -> Complex64 {
    Complex64::from_polar((-0.5 * (x * x + y * y)).exp() / (SQRT_2 * PI), x * y)
}

/// `Re(hbar z)`: normalized, correct marginals, takes negative values.
pub fn quasi_f(x: f64, y: f64) -> f64 {
    (-0.5 * (x * x + y * y)).exp() * (x * y).cos() / (SQRT_2 * PI)
}

/// `Im(hbar z)`: integrates to zero.
pub fn quasi_g(x: f64, y: f64) -> f64 {
    (-0.5 * (x * x + y * y)).exp() * (x * y).sin() / (SQRT_2 * PI)
}

/// Default quadrature grid: `[-6, 6]` with 601 nodes per axis.
pub fn default_quasi_grid() -> GridSpec {
    GridSpec::symmetric(6.0, 601).expect("static grid")
}

/// Signed quasi-density sampled on a 2-D grid.
///
/// Values are the dimensionless `hbar f`; `hbar` is kept so physical
/// densities `f = values / hbar` can be recovered.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiDensity2D {
    density: GridDensity2D,
    pub hbar: f64,
}

impl QuasiDensity2D {
    pub fn sample<F: Fn(f64, f64) -> f64>(grid: GridSpec, f: F) -> Result<Self> {
        Ok(Self { density: GridDensity2D::from_fn(grid, grid, f)?, hbar: 1.0 })
    }

    pub fn quasi_f(grid: GridSpec) -> Result<Self> {
        Self::sample(grid, quasi_f)
    }

    pub fn quasi_g(grid: GridSpec) -> Result<Self> {
        Self::sample(grid, quasi_g)
    }

    pub fn grid(&self) -> &GridSpec {
        self.density.gx()
    }

    pub fn density(&self) -> &GridDensity2D {
        &self.density
    }

    pub fn integral(&self) -> Result<f64> {
        self.density.integral()
    }

    pub fn integrate_weighted<H: Fn(f64, f64) -> f64>(&self, h: H) -> Result<f64> {
        self.density.integrate_weighted(h)
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        self.density.marginal_x()
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        self.density.marginal_y()
    }

    pub fn min_value(&self) -> f64 {
        self.density.min_value()
    }

    pub fn max_value(&self) -> f64 {
        self.density.max_value()
    }
}

/// `N(0, 1/2)` density, the law of both `x` and `y` in the ground state.
pub fn half_variance_normal(x: f64) -> f64 {
    (-x * x).exp() / PI.sqrt()
}

/// `<X + Y> = int (x + y) f dx dy`.
pub fn sum_expectation_via_quasi(grid: &GridSpec) -> Result<f64> {
    Ok(integrate_2d(|x, y| (x + y) * quasi_f(x, y), grid, grid)?.value)
}

/// `<U> = int x y f dx dy`, `U = (XY + YX) / 2`.
pub fn u_expectation_via_quasi(grid: &GridSpec) -> Result<f64> {
    Ok(integrate_2d(|x, y| x * y * quasi_f(x, y), grid, grid)?.value)
}

/// `<V> = int x y g dx dy`, `V = (XY - YX) / 2i`.
pub fn v_expectation_via_quasi(grid: &GridSpec) -> Result<f64> {
    Ok(integrate_2d(|x, y| x * y * quasi_g(x, y), grid, grid)?.value)
}

/// `phi_W(s) = exp(-s^2 / 2)` for `W = X + Y` in the ground state.
pub fn sum_charfn_quantum(s: f64) -> Complex64 {
    Complex64::new((-0.5 * s * s).exp(), 0.0)
}

/// Second route to `phi_W`: `e^{i s^2 / 2} int e^{i s (x + y)} hbar z dx dy`,
/// the exponential of the sum split by the commutator correction.
pub fn sum_charfn_quantum_quadrature(s: f64, grid: &GridSpec) -> Result<Complex64> {
    let re = integrate_2d(|x, y| (Complex64::from_polar(1.0, s * (x + y)) * quasi_z(x, y)).re, grid, grid)?;
    let im = integrate_2d(|x, y| (Complex64::from_polar(1.0, s * (x + y)) * quasi_z(x, y)).im, grid, grid)?;
    Ok(Complex64::from_polar(1.0, 0.5 * s * s) * Complex64::new(re.value, im.value))
}

pub fn sum_charfn_quantum_fn() -> CharFn {
    CharFn::from_fn(sum_charfn_quantum)
}

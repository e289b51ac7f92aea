use super::grid::GridSpec;
use crate::error::{Error, Result};

/// Trapezoid value with a Richardson-style error estimate `|T(h) - T(2h)| / 3`.
///
/// The estimate is conservative for smooth, rapidly decaying integrands,
/// where the trapezoid rule converges far faster than `h^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
}

fn check_finite(x: f64, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { location: format!("x = {x}"), value })
    }
}

/// Trapezoid sum over the even-indexed nodes only (spacing `2h`).
fn coarse_trapezoid(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    let mut sum = 0.0;
    for k in (0..n).step_by(2) {
        let w = if k == 0 || k + 1 == n { 1.0 } else { 2.0 };
        sum += w * values[k];
    }
    sum * h
}

fn fine_trapezoid(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    let inner: f64 = values[1..n - 1].iter().sum();
    (inner + 0.5 * (values[0] + values[n - 1])) * h
}

/// Composite trapezoid of pre-sampled values on `grid`.
pub fn integrate_samples_1d(values: &[f64], grid: &GridSpec) -> Result<Quadrature> {
    if values.len() != grid.len() {
        return Err(Error::DimensionMismatch { expected: grid.len(), found: values.len() });
    }
    for (k, &v) in values.iter().enumerate() {
        check_finite(grid.point(k), v)?;
    }
    let h = grid.step();
    let fine = fine_trapezoid(values, h);
    let coarse = coarse_trapezoid(values, h);
    Ok(Quadrature { value: fine, error_estimate: (fine - coarse).abs() / 3.0 })
}

/// Composite trapezoid of `f` over `grid`.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, grid: &GridSpec) -> Result<Quadrature> {
    let values: Vec<f64> = grid.points().into_iter().map(f).collect();
    integrate_samples_1d(&values, grid)
}

/// Integral of `f` over `[origin + e^{t_lo}, origin + e^{t_hi}]` using the
/// substitution `x = origin + e^t`, trapezoid in `t`.
///
/// Suited to half-line integrals and to integrable singularities at
/// `origin`: the transformed integrand `e^t f(origin + e^t)` decays
/// exponentially as `t -> -inf`.
pub fn integrate_exp_mapped<F: Fn(f64) -> f64>(
    f: F,
    origin: f64,
    t_grid: &GridSpec,
) -> Result<Quadrature> {
    let mut values = Vec::with_capacity(t_grid.len());
    for t in t_grid.points() {
        let jac = t.exp();
        let x = origin + jac;
        let v = f(x);
        check_finite(x, v)?;
        values.push(jac * v);
    }
    integrate_samples_1d(&values, t_grid)
}

/// Product-trapezoid of row-major samples `values[i * ny + j] = f(x_i, y_j)`.
pub fn integrate_samples_2d(values: &[f64], gx: &GridSpec, gy: &GridSpec) -> Result<Quadrature> {
    let (nx, ny) = (gx.len(), gy.len());
    if values.len() != nx * ny {
        return Err(Error::DimensionMismatch { expected: nx * ny, found: values.len() });
    }
    let (hx, hy) = (gx.step(), gy.step());
    let mut fine_rows = Vec::with_capacity(nx);
    let mut coarse_rows = Vec::with_capacity(nx);
    for i in 0..nx {
        let row = &values[i * ny..(i + 1) * ny];
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    location: format!("(x, y) = ({}, {})", gx.point(i), gy.point(j)),
                    value: v,
                });
            }
        }
        fine_rows.push(fine_trapezoid(row, hy));
        coarse_rows.push(coarse_trapezoid(row, hy));
    }
    let fine = fine_trapezoid(&fine_rows, hx);
    let coarse = coarse_trapezoid(&coarse_rows, hx);
    Ok(Quadrature { value: fine, error_estimate: (fine - coarse).abs() / 3.0 })
}

/// Product-trapezoid of `f(x, y)` over `gx x gy`.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    gx: &GridSpec,
    gy: &GridSpec,
) -> Result<Quadrature> {
    let xs = gx.points();
    let ys = gy.points();
    let mut values = Vec::with_capacity(xs.len() * ys.len());
    for &x in &xs {
        for &y in &ys {
            values.push(f(x, y));
        }
    }
    integrate_samples_2d(&values, gx, gy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn normal(x: f64) -> f64 {
        (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
    }

    #[test]
    fn gaussian_over_six_sigma() {
        let g = GridSpec::symmetric(6.0, 1201).unwrap();
        let q = integrate_1d(normal, &g).unwrap();
        // 1 - erfc(6/sqrt 2) = 1 - 1.973e-9
        assert!((q.value - (1.0 - 1.973_175_290_075e-9)).abs() < 1e-12);
        assert!((q.value - 1.0).abs() < 1e-8);
    }

    #[test]
    fn odd_function_vanishes() {
        let g = GridSpec::symmetric(5.0, 501).unwrap();
        let q = integrate_1d(|x| x * normal(x) + x.powi(3), &g).unwrap();
        assert!(q.value.abs() < 1e-12);
    }

    #[test]
    fn exponential_on_half_line_via_map() {
        let t = GridSpec::new(-40.0, 50f64.ln(), 4001).unwrap();
        let q = integrate_exp_mapped(|x| (-x).exp(), 0.0, &t).unwrap();
        assert!((q.value - 1.0).abs() < 1e-8, "{}", q.value);
    }

    #[test]
    fn linear_is_exact_on_any_grid() {
        let g = GridSpec::new(-1.3, 2.9, 7).unwrap();
        let q = integrate_1d(|x| 3.0 * x - 0.25, &g).unwrap();
        let exact = 1.5 * (2.9f64.powi(2) - 1.3f64.powi(2)) - 0.25 * 4.2;
        assert!((q.value - exact).abs() < 1e-13);
        assert!(q.error_estimate < 1e-13);
    }

    #[test]
    fn non_finite_reports_location() {
        let g = GridSpec::symmetric(1.0, 5).unwrap();
        let err = integrate_1d(|x| 1.0 / x, &g).unwrap_err();
        assert!(err.to_string().contains("x = 0"), "{err}");
    }

    #[test]
    fn product_gaussian_2d() {
        let g = GridSpec::symmetric(7.0, 281).unwrap();
        let q = integrate_2d(|x, y| normal(x) * normal(y), &g, &g).unwrap();
        assert!((q.value - 1.0).abs() < 1e-10);
    }
}

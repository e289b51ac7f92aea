use super::charfn::CharFn;
use super::density::{GridDensity, GridDensity2D, TOL_NORM};
use super::inversion::{pdf_from_charfn_with, InversionSettings};
use crate::error::{Error, Result};
use crate::numerics::GridSpec;

/// Atoms below this fraction of the largest weight are dropped.
const ATOM_CUTOFF: f64 = 1e-13;

/// `phi_Y(s) = int e^{i s g(x1, x2)} f(x1, x2) dx1 dx2` as the discrete
/// measure of product-trapezoid atoms `(g(x_i, y_j), w_ij f_ij)`.
pub fn transformed_charfn<G: Fn(f64, f64) -> f64>(joint: &GridDensity2D, g: G) -> Result<CharFn> {
    let (gx, gy) = (joint.gx(), joint.gy());
    let ys = gy.points();
    let peak = joint.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for (i, x) in gx.points().into_iter().enumerate() {
        let wx = gx.trapezoid_weight(i);
        for (j, &y) in ys.iter().enumerate() {
            let f = joint.get(i, j);
            if f.abs() <= ATOM_CUTOFF * peak {
                continue;
            }
            let gv = g(x, y);
            if !gv.is_finite() {
                return Err(Error::NonFinite { location: format!("g({x}, {y})"), value: gv });
            }
            points.push(gv);
            weights.push(wx * gy.trapezoid_weight(j) * f);
        }
    }
    CharFn::from_atoms(points, weights)
}

/// Density of `Y = g(X1, X2)` on `out` via its characteristic function:
/// 2-D quadrature for `phi_Y`, then Fourier inversion.
pub fn rvt_transform<G: Fn(f64, f64) -> f64>(
    joint: &GridDensity2D,
    g: G,
    out: &GridSpec,
    s_max: f64,
) -> Result<GridDensity> {
    rvt_transform_with(joint, g, out, &InversionSettings::new(s_max))
}

/// [`rvt_transform`] with a damping window, needed when `phi_Y` decays
/// slowly (products of variables, for which `|phi_Y| ~ 1/|s|`).
pub fn rvt_transform_with<G: Fn(f64, f64) -> f64>(
    joint: &GridDensity2D,
    g: G,
    out: &GridSpec,
    settings: &InversionSettings,
) -> Result<GridDensity> {
    let mass = joint.integral()?;
    if (mass - 1.0).abs() > TOL_NORM {
        return Err(Error::NotNormalized { defect: (mass - 1.0).abs() });
    }
    let phi = transformed_charfn(joint, g)?;
    pdf_from_charfn_with(&phi, out, settings)
}

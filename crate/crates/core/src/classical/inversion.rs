use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::charfn::CharFn;
use super::density::GridDensity;
use crate::error::{Error, Result};
use crate::numerics::GridSpec;

/// `|phi(s_max) W(s_max)|` must fall below this before inverting.
pub const DECAY_TOL: f64 = 1e-10;
/// Accepted deviation of the recovered mass from one before renormalizing.
pub const MASS_TOL: f64 = 1e-3;

/// Multiplicative window applied to `phi(s)` before inversion.
///
/// Windows make slowly decaying characteristic functions invertible on a
/// finite band at the cost of smoothing the density on the scale `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Damping {
    None,
    /// `exp(-(s eps)^2 / 2)`: Gaussian smoothing, bias `O(eps^2)`.
    Gaussian { eps: f64 },
    /// `exp(-t^2/2) (1 + t^2/2 + t^4/8)`, `t = s eps`: sixth-order kernel
    /// whose second and fourth moments vanish, bias `O(eps^6)`.
    Gaussian6 { eps: f64 },
}

impl Damping {
    pub fn weight(&self, s: f64) -> f64 {
        match *self {
            Damping::None => 1.0,
            Damping::Gaussian { eps } => (-0.5 * (s * eps).powi(2)).exp(),
            Damping::Gaussian6 { eps } => {
                let t2 = (s * eps).powi(2);
                (-0.5 * t2).exp() * (1.0 + 0.5 * t2 + 0.125 * t2 * t2)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InversionSettings {
    pub s_max: f64,
    pub damping: Damping,
}

impl InversionSettings {
    pub fn new(s_max: f64) -> Self {
        Self { s_max, damping: Damping::None }
    }

    pub fn damped(s_max: f64, damping: Damping) -> Self {
        Self { s_max, damping }
    }
}

/// Frequency grid on `[0, s_max]` with `ds <= pi / (8 max|x|)`.
pub fn frequency_grid(out: &GridSpec, s_max: f64) -> Result<GridSpec> {
    if !(s_max > 0.0) || !s_max.is_finite() {
        return Err(Error::InvalidParameter(format!("s_max must be positive, got {s_max}")));
    }
    let ds_max = PI / (8.0 * out.max_abs().max(1.0));
    GridSpec::with_max_step(0.0, s_max, ds_max)
}

/// `f(x) = (1/2pi) int_{-s_max}^{s_max} e^{-isx} phi(s) ds` on `grid`,
/// renormalized when the recovered mass is within `1e-3` of one.
pub fn pdf_from_charfn(phi: &CharFn, grid: &GridSpec, s_max: f64) -> Result<GridDensity> {
    pdf_from_charfn_with(phi, grid, &InversionSettings::new(s_max))
}

/// [`pdf_from_charfn`] with an optional damping window.
///
/// Uses `phi(-s) = conj(phi(s))` to fold the integral onto `[0, s_max]`;
/// the trapezoid sum in `s` is evaluated for all grid nodes at once with the
/// phase recurrence `e^{-is(x+h)} = e^{-isx} e^{-ish}`.
pub fn pdf_from_charfn_with(
    phi: &CharFn,
    grid: &GridSpec,
    settings: &InversionSettings,
) -> Result<GridDensity> {
    let s_max = settings.s_max;
    if let Some(limit) = phi.limit() {
        if s_max > limit {
            return Err(Error::UnresolvedFrequency { s: s_max, limit });
        }
    }
    let tail = phi.eval(s_max).norm() * settings.damping.weight(s_max);
    if !(tail < DECAY_TOL) {
        return Err(Error::InsufficientDecay { s_max, magnitude: tail, tol: DECAY_TOL });
    }

    let sg = frequency_grid(grid, s_max)?;
    let samples = phi.sample(&sg);
    let h = grid.step();
    let x0 = grid.lo();
    let n = grid.len();
    let mut acc = vec![0.0; n];
    for (k, p) in samples.iter().enumerate() {
        let w = sg.trapezoid_weight(k) * settings.damping.weight(sg.point(k));
        if w == 0.0 {
            continue;
        }
        let s = sg.point(k);
        let coeff = p * w;
        let step = Complex64::from_polar(1.0, -s * h);
        let mut phase = Complex64::new(0.0, 0.0);
        for (j, a) in acc.iter_mut().enumerate() {
            if j % 64 == 0 {
                phase = Complex64::from_polar(1.0, -s * (x0 + h * j as f64));
            } else {
                phase *= step;
            }
            *a += (phase * coeff).re;
        }
    }
    let values: Vec<f64> = acc.into_iter().map(|a| a / PI).collect();
    for (j, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { location: format!("x = {}", grid.point(j)), value: *v });
        }
    }
    GridDensity::new(*grid, values)?.renormalize(MASS_TOL)
}

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Oscillator constants; `q0 = sqrt(hbar / (m omega))`, `p0 = hbar / q0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct OscillatorParams {
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
}

#[derive(Deserialize)]
struct RawParams {
    hbar: f64,
    mass: f64,
    omega: f64,
}

impl TryFrom<RawParams> for OscillatorParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        Self::new(r.hbar, r.mass, r.omega)
    }
}

impl Default for OscillatorParams {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0, omega: 1.0 }
    }
}

impl OscillatorParams {
    pub fn new(hbar: f64, mass: f64, omega: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", mass), ("omega", omega)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { hbar, mass, omega })
    }

    pub fn q0(&self) -> f64 {
        (self.hbar / (self.mass * self.omega)).sqrt()
    }

    pub fn p0(&self) -> f64 {
        self.hbar / self.q0()
    }
}

/// `|psi_0(q)|^2`, the `N(0, q0^2 / 2)` density.
pub fn ground_density_q(params: &OscillatorParams, q: f64) -> f64 {
    let q0 = params.q0();
    (-(q / q0).powi(2)).exp() / (PI.sqrt() * q0)
}

/// `|psi_0(p)|^2`, the `N(0, p0^2 / 2)` density.
pub fn ground_density_p(params: &OscillatorParams, p: f64) -> f64 {
    let p0 = params.p0();
    (-(p / p0).powi(2)).exp() / (PI.sqrt() * p0)
}

/// `<q|p> = exp(i q p / hbar) / sqrt(2 pi hbar)`.
pub fn overlap_qp(params: &OscillatorParams, q: f64, p: f64) -> Complex64 {
    Complex64::from_polar((2.0 * PI * params.hbar).sqrt().recip(), q * p / params.hbar)
}

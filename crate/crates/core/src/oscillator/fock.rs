use num_complex::Complex64;
use serde::Serialize;

use super::params::OscillatorParams;
use crate::classical::{pdf_from_charfn, CharFn, GridDensity};
use crate::error::{Error, Result};
use crate::numerics::GridSpec;
use crate::spectral::{
    basis_state, eigendecompose_default, max_abs, measurement_distribution, CMatrix,
    DiscreteDistribution, HermitianOperator,
};

/// Tail mass `1 - sum |c_n|^2` above which a Fock expansion is rejected.
pub const TRUNCATION_TOL: f64 = 1e-6;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Annihilation operator on the levels `0..=n_max`: `<m|a|n> = sqrt(n) delta_{m, n-1}`.
pub fn annihilation(n_max: usize) -> CMatrix {
    let n = n_max + 1;
    CMatrix::from_fn(n, n, |m, k| if k == m + 1 { c((k as f64).sqrt(), 0.0) } else { c(0.0, 0.0) })
}

/// Position `Q = q0 (a + a^dagger) / sqrt 2`, truncated.
pub fn position_matrix(params: &OscillatorParams, n_max: usize) -> CMatrix {
    let a = annihilation(n_max);
    (&a + a.adjoint()).scale(params.q0() / std::f64::consts::SQRT_2)
}

/// Momentum `P = p0 (a - a^dagger) / (sqrt 2 i)`, truncated.
pub fn momentum_matrix(params: &OscillatorParams, n_max: usize) -> CMatrix {
    let a = annihilation(n_max);
    (&a - a.adjoint()).map(|z| z * c(0.0, -params.p0() / std::f64::consts::SQRT_2))
}

/// Largest deviation of `[Q, P]` from `i hbar I` on levels `0..n_max`; the
/// top level is excluded because truncation breaks the algebra there.
pub fn canonical_commutator_defect(params: &OscillatorParams, n_max: usize) -> f64 {
    let q = position_matrix(params, n_max);
    let p = momentum_matrix(params, n_max);
    let comm = &q * &p - &p * &q;
    let target = CMatrix::identity(n_max + 1, n_max + 1).map(|z| z * c(0.0, params.hbar));
    let diff = comm - target;
    max_abs(&diff.view((0, 0), (n_max, n_max)).into_owned())
}

fn dimensionless_xy(n_max: usize) -> (CMatrix, CMatrix) {
    let unit = OscillatorParams::default();
    (position_matrix(&unit, n_max), momentum_matrix(&unit, n_max))
}

/// `<0|X Y|0> = sum_n <0|X|n><n|Y|0>` with `X = Q/q0`, `Y = P/p0`.
pub fn xy_expectation(n_max: usize) -> Result<Complex64> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("Fock truncation needs n_max >= 2, got {n_max}")));
    }
    let (x, y) = dimensionless_xy(n_max);
    Ok((0..=n_max).map(|n| x[(0, n)] * y[(n, 0)]).sum())
}

/// `U = (XY + YX) / 2` and `V = (XY - YX) / 2i` on the truncated space.
pub fn uv_operators(n_max: usize) -> Result<(HermitianOperator, HermitianOperator)> {
    let (x, y) = dimensionless_xy(n_max);
    let xy = &x * &y;
    let yx = &y * &x;
    let u = (&xy + &yx).scale(0.5);
    let v = (&xy - &yx).map(|z| z * c(0.0, -0.5));
    Ok((HermitianOperator::new(u)?, HermitianOperator::new(v)?))
}

/// Law of `V` in the ground state: `V = I/2` away from the truncation
/// edge, so `V = 1/2` with certainty.
pub fn v_pdf() -> DiscreteDistribution {
    DiscreteDistribution::point_mass(0.5)
}

/// Law of `V` measured on `|0>` from the truncated operator.
pub fn v_pdf_fock(n_max: usize) -> Result<DiscreteDistribution> {
    let (_, v) = uv_operators(n_max)?;
    let d = eigendecompose_default(&v)?;
    measurement_distribution(&d, &basis_state(n_max + 1, 0)?)
}

/// Squeezed-vacuum amplitudes on the even levels `|2n>`, `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockCoeffs {
    pub n_max: usize,
    #[serde(skip)]
    pub coeffs: Vec<Complex64>,
}

impl FockCoeffs {
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `1 - sum |c_n|^2`.
    pub fn tail_mass(&self) -> f64 {
        1.0 - self.norm_sqr()
    }

    pub fn ensure_truncation(self, tol: f64) -> Result<Self> {
        let tail = self.tail_mass();
        if tail > tol {
            return Err(Error::Truncation { tail, tol });
        }
        Ok(self)
    }
}

/// `c_n = (cosh r)^{-1/2} sqrt((2n)!) / n! (-e^{i phi} tanh(r) / 2)^n`,
/// with the factorial ratio accumulated in log space. No truncation check.
pub fn squeezed_vacuum_amplitudes(r: f64, phi: f64, n_max: usize) -> Result<FockCoeffs> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("squeezing r must be finite and >= 0, got {r}")));
    }
    if n_max < 1 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let c0 = r.cosh().powf(-0.5);
    let log_t = (0.5 * r.tanh()).ln();
    let mut log_mag = c0.ln();
    let mut coeffs = Vec::with_capacity(n_max + 1);
    coeffs.push(c(c0, 0.0));
    for n in 1..=n_max {
        let nf = n as f64;
        log_mag += 0.5 * ((2.0 * nf) * (2.0 * nf - 1.0)).ln() - nf.ln() + log_t;
        coeffs.push(Complex64::from_polar(log_mag.exp(), nf * (phi + std::f64::consts::PI)));
    }
    Ok(FockCoeffs { n_max, coeffs })
}

/// [`squeezed_vacuum_amplitudes`], rejected when the tail mass exceeds
/// [`TRUNCATION_TOL`].
pub fn squeezed_vacuum_coeffs(r: f64, phi: f64, n_max: usize) -> Result<FockCoeffs> {
    squeezed_vacuum_amplitudes(r, phi, n_max)?.ensure_truncation(TRUNCATION_TOL)
}

/// `phi_U(s) = (cosh s)^{-1/2}`.
pub fn u_charfn(s: f64) -> f64 {
    s.cosh().powf(-0.5)
}

/// `phi_U(s)` as the vacuum amplitude of a squeezed vacuum with `r = |s|`.
pub fn u_charfn_fock(s: f64, n_max: usize) -> Result<f64> {
    Ok(squeezed_vacuum_coeffs(s.abs(), 0.0, n_max)?.coeffs[0].re)
}

pub fn u_charfn_fn() -> CharFn {
    CharFn::from_fn(|s| c(u_charfn(s), 0.0))
}

/// `phi_Y(s) = (1 + s^2/4)^{-1/2}`: the classical product law at
/// `sigma1 = sigma2 = 1/sqrt 2`, `rho = 0`.
pub fn classical_product_charfn(s: f64) -> f64 {
    (1.0 + 0.25 * s * s).powf(-0.5)
}

/// Smallest `s_max` accepted by [`u_pdf`]: `(cosh 40)^{-1/2} ~ e^{-20}`.
pub const U_PDF_MIN_S_MAX: f64 = 40.0;

/// Density of `U` by Fourier inversion of `(cosh s)^{-1/2}`.
pub fn u_pdf(grid: &GridSpec, s_max: f64) -> Result<GridDensity> {
    if s_max < U_PDF_MIN_S_MAX {
        return Err(Error::InvalidParameter(format!("u_pdf needs s_max >= 40, got {s_max}")));
    }
    pdf_from_charfn(&u_charfn_fn(), grid, s_max)
}

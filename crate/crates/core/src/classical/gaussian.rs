use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::charfn::CharFn;
use crate::error::{Error, Result};
use crate::numerics::{bessel_k0, integrate_exp_mapped, seeded_rng, GridSpec};

/// Correlations are restricted to `[-1 + RHO_MARGIN, 1 - RHO_MARGIN]`.
pub const RHO_MARGIN: f64 = 1e-9;

/// Means, standard deviations and correlation of a bivariate normal law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct BivariateGaussianParams {
    pub mu1: f64,
    pub mu2: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub rho: f64,
}

#[derive(Deserialize)]
struct RawParams {
    mu1: f64,
    mu2: f64,
    sigma1: f64,
    sigma2: f64,
    rho: f64,
}

impl TryFrom<RawParams> for BivariateGaussianParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        Self::new(r.mu1, r.mu2, r.sigma1, r.sigma2, r.rho)
    }
}

impl BivariateGaussianParams {
    pub fn new(mu1: f64, mu2: f64, sigma1: f64, sigma2: f64, rho: f64) -> Result<Self> {
        if !mu1.is_finite() || !mu2.is_finite() {
            return Err(Error::InvalidParameter(format!("means must be finite: ({mu1}, {mu2})")));
        }
        if !(sigma1 > 0.0 && sigma1.is_finite() && sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "standard deviations must be positive: ({sigma1}, {sigma2})"
            )));
        }
        if !(rho.abs() <= 1.0 - RHO_MARGIN) {
            return Err(Error::InvalidParameter(format!("correlation {rho} outside [-1+1e-9, 1-1e-9]")));
        }
        Ok(Self { mu1, mu2, sigma1, sigma2, rho })
    }

    /// Zero means.
    pub fn centered(sigma1: f64, sigma2: f64, rho: f64) -> Result<Self> {
        Self::new(0.0, 0.0, sigma1, sigma2, rho)
    }

    /// `sigma1 = sigma2 = 1`, `rho = 0`, zero means.
    pub fn standard() -> Self {
        Self { mu1: 0.0, mu2: 0.0, sigma1: 1.0, sigma2: 1.0, rho: 0.0 }
    }

    /// `det V = sigma1^2 sigma2^2 (1 - rho^2)`.
    pub fn det_v(&self) -> f64 {
        (self.sigma1 * self.sigma2).powi(2) * (1.0 - self.rho * self.rho)
    }

    pub fn is_centered(&self) -> bool {
        self.mu1 == 0.0 && self.mu2 == 0.0
    }

    /// One draw `(X1, X2)` from two standard normals.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        let x1 = self.mu1 + self.sigma1 * z1;
        let x2 = self.mu2 + self.sigma2 * (self.rho * z1 + (1.0 - self.rho * self.rho).sqrt() * z2);
        (x1, x2)
    }
}

/// Joint density `exp(-q/2) / (2 pi sqrt(det V))`.
pub fn bivariate_gaussian_pdf(p: &BivariateGaussianParams, x1: f64, x2: f64) -> f64 {
    let u = (x1 - p.mu1) / p.sigma1;
    let v = (x2 - p.mu2) / p.sigma2;
    let one_m = 1.0 - p.rho * p.rho;
    let q = (u * u - 2.0 * p.rho * u * v + v * v) / one_m;
    (-0.5 * q).exp() / (2.0 * PI * p.det_v().sqrt())
}

/// Seeded draws of `(X1, X2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleBatch {
    pub n: usize,
    pub pairs: Vec<(f64, f64)>,
    pub seed: u64,
}

pub fn sample_bivariate_gaussian(p: &BivariateGaussianParams, n: usize, seed: u64) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::InvalidParameter("sample count must be at least 1".into()));
    }
    let mut rng = seeded_rng(seed);
    let pairs = (0..n).map(|_| p.sample(&mut rng)).collect();
    Ok(SampleBatch { n, pairs, seed })
}

/// Univariate normal law `N(mu, sigma^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalLaw {
    pub mu: f64,
    pub sigma: f64,
    /// Set when `sigma` is negligible against the input scales (`rho -> -1`
    /// with equal deviations); the density is then numerically a spike.
    pub degenerate: bool,
}

impl NormalLaw {
    pub fn pdf(&self, x: f64) -> f64 {
        (-0.5 * ((x - self.mu) / self.sigma).powi(2)).exp() / (self.sigma * (2.0 * PI).sqrt())
    }

    pub fn charfn(&self) -> CharFn {
        let (mu, sigma) = (self.mu, self.sigma);
        CharFn::from_fn(move |s| Complex64::from_polar((-0.5 * (s * sigma).powi(2)).exp(), s * mu))
    }
}

/// Law of `W = X1 + X2`: `N(mu1 + mu2, sigma1^2 + 2 rho sigma1 sigma2 + sigma2^2)`.
pub fn sum_pdf_gaussian(p: &BivariateGaussianParams) -> NormalLaw {
    let var = p.sigma1 * p.sigma1 + 2.0 * p.rho * p.sigma1 * p.sigma2 + p.sigma2 * p.sigma2;
    let sigma = var.max(0.0).sqrt();
    NormalLaw { mu: p.mu1 + p.mu2, sigma, degenerate: sigma <= 1e-4 * (p.sigma1 + p.sigma2) }
}

/// `phi_W(s) = exp(-s^2 sigma_W^2 / 2 + i s (mu1 + mu2))`.
pub fn sum_charfn_gaussian(p: &BivariateGaussianParams) -> CharFn {
    sum_pdf_gaussian(p).charfn()
}

fn require_centered(p: &BivariateGaussianParams) -> Result<()> {
    if p.is_centered() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "product law requires zero means, got ({}, {})",
            p.mu1, p.mu2
        )))
    }
}

/// Density of `Y = X1 X2` for zero means,
/// `exp(rho y / c) K0(|y| / c) / (pi sqrt(det V))` with
/// `c = sigma1 sigma2 (1 - rho^2)`. At `rho = 0`, `c = sqrt(det V)`.
pub fn product_pdf_gaussian(p: &BivariateGaussianParams, y: f64) -> Result<f64> {
    require_centered(p)?;
    if y == 0.0 {
        return Err(Error::Singularity { at: 0.0 });
    }
    let s = p.sigma1 * p.sigma2;
    let one_m = 1.0 - p.rho * p.rho;
    let d = s * one_m;
    Ok((p.rho * y / d).exp() * bessel_k0(y.abs() / d)? / (PI * s * one_m.sqrt()))
}

/// `int f(x1, y/x1) / |x1| dx1`, by quadrature on each half-line with
/// `x1 = +-e^t`.
pub fn product_pdf_quadrature(p: &BivariateGaussianParams, y: f64) -> Result<f64> {
    require_centered(p)?;
    if y == 0.0 {
        return Err(Error::Singularity { at: 0.0 });
    }
    // The integrand in t decays doubly exponentially once x1 >> sigma1 or
    // |y|/x1 >> sigma2; 40 deviations is far past both.
    let t_lo = (y.abs() / (40.0 * p.sigma2)).ln();
    let t_hi = (40.0 * p.sigma1).ln();
    let tg = GridSpec::with_max_step(t_lo, t_hi, 5e-3)?;
    let pos = integrate_exp_mapped(|x1| bivariate_gaussian_pdf(p, x1, y / x1) / x1, 0.0, &tg)?;
    let neg = integrate_exp_mapped(|x1| bivariate_gaussian_pdf(p, -x1, -y / x1) / x1, 0.0, &tg)?;
    Ok(pos.value + neg.value)
}

/// `int_{-y_max}^{y_max} f_Y(y) dy` for the closed-form product density,
/// integrating through the logarithmic singularity with `y = +-e^t`.
pub fn product_pdf_mass(p: &BivariateGaussianParams, y_max: f64) -> Result<f64> {
    require_centered(p)?;
    let tg = GridSpec::with_max_step(-40.0, y_max.ln(), 5e-3)?;
    let mut total = 0.0;
    for sign in [1.0, -1.0] {
        let q = integrate_exp_mapped(|y| product_pdf_gaussian(p, sign * y).unwrap_or(f64::NAN), 0.0, &tg)?;
        total += q.value;
    }
    Ok(total)
}

/// `phi_Y(s) = (1 + s^2 (1 - rho^2) sigma1^2 sigma2^2 - 2 i s rho sigma1 sigma2)^{-1/2}`,
/// principal branch.
pub fn product_charfn_gaussian(p: &BivariateGaussianParams) -> Result<CharFn> {
    require_centered(p)?;
    let s12 = p.sigma1 * p.sigma2;
    let (a, b) = ((1.0 - p.rho * p.rho) * s12 * s12, 2.0 * p.rho * s12);
    Ok(CharFn::from_fn(move |s| Complex64::new(1.0 + a * s * s, -b * s).sqrt().inv()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::moment_from_charfn;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn density_at_mean() {
        let p = BivariateGaussianParams::standard();
        assert!((bivariate_gaussian_pdf(&p, 0.0, 0.0) - 0.159_154_943_091_895_35).abs() < 1e-15);
        let q = BivariateGaussianParams::new(0.3, -0.7, 1.0, 2.0, 0.5).unwrap();
        let peak = 1.0 / (2.0 * PI * q.det_v().sqrt());
        assert!((bivariate_gaussian_pdf(&q, 0.3, -0.7) - peak).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(BivariateGaussianParams::new(0.0, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(BivariateGaussianParams::new(0.0, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(BivariateGaussianParams::new(0.0, 0.0, 1.0, 1.0, -1.0 + 1e-9).is_ok());
        assert!(serde_json::from_str::<BivariateGaussianParams>(
            r#"{"mu1":0,"mu2":0,"sigma1":1,"sigma2":-1,"rho":0}"#
        )
        .is_err());
    }

    #[test]
    fn sum_law_cases() {
        let p = BivariateGaussianParams::centered(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0).unwrap();
        let w = sum_pdf_gaussian(&p);
        assert!((w.sigma - 1.0).abs() < 1e-15 && w.mu == 0.0);
        let q = BivariateGaussianParams::centered(1.0, 1.0, 1.0 - 1e-9).unwrap();
        assert!((sum_pdf_gaussian(&q).sigma - 2.0).abs() < 1e-9);
        let r = BivariateGaussianParams::new(1.25, -1.25, 1.0, 1.0, 0.3).unwrap();
        assert_eq!(sum_pdf_gaussian(&r).mu, 0.0);
        let d = BivariateGaussianParams::centered(1.0, 1.0, -1.0 + 1e-9).unwrap();
        assert!(sum_pdf_gaussian(&d).degenerate);
    }

    #[test]
    fn product_closed_form_at_half() {
        let p = BivariateGaussianParams::centered(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0).unwrap();
        let v = product_pdf_gaussian(&p, 0.5).unwrap();
        let expected = 2.0 / PI * 0.421_024_438_240_708_34;
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 0.268_032).abs() < 1e-6);
        assert!((product_pdf_quadrature(&p, 0.5).unwrap() - v).abs() < 1e-7 * v);
        assert_eq!(product_pdf_gaussian(&p, -0.5).unwrap(), v);
        assert!(matches!(product_pdf_gaussian(&p, 0.0), Err(Error::Singularity { .. })));
    }

    #[test]
    fn product_closed_form_correlated() {
        let p = BivariateGaussianParams::centered(0.8, 1.7, -0.6).unwrap();
        for y in [-3.0, -0.4, 0.05, 1.1, 2.5] {
            let c = product_pdf_gaussian(&p, y).unwrap();
            let q = product_pdf_quadrature(&p, y).unwrap();
            assert!(((c - q) / q).abs() < 1e-7, "y = {y}: {c} vs {q}");
        }
    }

    #[test]
    fn product_requires_zero_means() {
        let p = BivariateGaussianParams::new(0.1, 0.0, 1.0, 1.0, 0.0).unwrap();
        assert!(product_pdf_gaussian(&p, 1.0).is_err());
        assert!(product_charfn_gaussian(&p).is_err());
    }

    #[test]
    fn product_charfn_values_and_mean() {
        let p = BivariateGaussianParams::centered(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0).unwrap();
        let phi = product_charfn_gaussian(&p).unwrap();
        assert!((phi.eval(2.0) - Complex64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert_eq!(phi.eval(0.0), Complex64::new(1.0, 0.0));
        let q = BivariateGaussianParams::centered(1.0, 2.0, 0.5).unwrap();
        let m = moment_from_charfn(&product_charfn_gaussian(&q).unwrap(), 1).unwrap();
        assert!((m - 1.0).abs() < 1e-5);
    }

    #[test]
    fn sum_charfn_mean_term_sign() {
        let p = BivariateGaussianParams::new(0.3, -0.7, 1.0, 2.0, 0.5).unwrap();
        let m = moment_from_charfn(&sum_charfn_gaussian(&p), 1).unwrap();
        assert!((m - (-0.4)).abs() < 1e-8);
    }

    #[test]
    fn sampling_is_seeded() {
        let p = BivariateGaussianParams::standard();
        let a = sample_bivariate_gaussian(&p, 10, 5).unwrap();
        assert_eq!(a, sample_bivariate_gaussian(&p, 10, 5).unwrap());
        assert_ne!(a.pairs, sample_bivariate_gaussian(&p, 10, 6).unwrap().pairs);
        assert!(sample_bivariate_gaussian(&p, 0, 5).is_err());
    }
}

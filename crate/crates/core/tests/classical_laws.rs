use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use specprob::classical::{
    bivariate_gaussian_pdf, cdf_from_pdf, charfn_from_pdf, charfn_invariant_defects, expect_g,
    pdf_from_charfn, pdf_from_charfn_with, product_charfn_gaussian, product_pdf_gaussian,
    product_pdf_quadrature, rvt_transform, rvt_transform_with, sample_bivariate_gaussian,
    sum_charfn_gaussian, sum_pdf_gaussian, BivariateGaussianParams, Damping, GridDensity,
    GridDensity2D, InversionSettings,
};
use specprob::numerics::{mc_mean, seeded_rng, GridSpec};

fn normal_pdf(mu: f64, sigma: f64, x: f64) -> f64 {
    let z = (x - mu) / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * PI).sqrt())
}

fn normal_density(mu: f64, sigma: f64, grid: GridSpec) -> GridDensity {
    GridDensity::from_fn(grid, |x| normal_pdf(mu, sigma, x)).unwrap()
}

fn reference_params() -> BivariateGaussianParams {
    BivariateGaussianParams::centered(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0).unwrap()
}

fn max_dev(f: &GridDensity, exact: impl Fn(f64) -> f64, keep: impl Fn(f64) -> bool) -> f64 {
    f.points()
        .iter()
        .zip(f.values())
        .filter(|(x, _)| keep(**x))
        .map(|(x, v)| (v - exact(*x)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn empirical_cdf_matches_marginal() {
    let p = BivariateGaussianParams::new(0.3, -0.7, 1.0, 2.0, 0.5).unwrap();
    let n = 1_000_000;
    let batch = sample_bivariate_gaussian(&p, n, 11).unwrap();
    let marginal = normal_density(p.mu1, p.sigma1, GridSpec::symmetric(9.0, 3601).unwrap());
    for x in [-1.5, -0.5, 0.3, 1.0, 2.2] {
        let hits = batch.pairs.iter().filter(|(a, _)| *a <= x).count();
        let empirical = hits as f64 / n as f64;
        let f = cdf_from_pdf(&marginal, x);
        let band = 4.0 * (f * (1.0 - f) / n as f64).sqrt();
        assert!((empirical - f).abs() <= band, "x = {x}: {empirical} vs {f}");
    }
}

#[test]
fn empirical_cdf_at_mean_is_half() {
    let p = BivariateGaussianParams::new(1.2, 0.0, 0.8, 1.0, -0.3).unwrap();
    let est = mc_mean(5, 200_000, |rng| p.sample(rng), |&(a, _)| if a <= p.mu1 { 1.0 } else { 0.0 }).unwrap();
    assert!(est.within(0.5, 4.0));
}

#[test]
fn uncorrelated_samples_have_small_correlation() {
    let p = BivariateGaussianParams::new(0.0, 0.0, 1.0, 3.0, 0.0).unwrap();
    let n = 1_000_000;
    let est = mc_mean(9, n, |rng| p.sample(rng), |&(a, b)| a * b / (p.sigma1 * p.sigma2)).unwrap();
    assert!(est.mean.abs() <= 4.0 / (n as f64).sqrt());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn expectation_is_linear(alpha in -5.0f64..5.0, beta in -5.0f64..5.0, mu in -1.0f64..1.0, sigma in 0.5f64..1.5) {
        let f = normal_density(mu, sigma, GridSpec::symmetric(12.0, 2401).unwrap());
        let g = |x: f64| x.sin() + 0.1 * x * x;
        let lhs = expect_g(&f, |x| alpha + beta * g(x));
        let rhs = alpha * expect_g(&f, |_| 1.0) + beta * expect_g(&f, g);
        prop_assert!((lhs - rhs).abs() <= 1e-10);
    }

    #[test]
    fn gaussian_charfns_satisfy_invariants(mu in -2.0f64..2.0, sigma in 0.3f64..2.0) {
        let s_grid = GridSpec::symmetric(6.0, 121).unwrap();
        let f = normal_density(mu, sigma, GridSpec::new(mu - 12.0 * sigma, mu + 12.0 * sigma, 2401).unwrap());
        for phi in [charfn_from_pdf(&f).unwrap(), sum_charfn_gaussian(&BivariateGaussianParams::new(mu, 0.0, sigma, 1.0, 0.2).unwrap())] {
            let (at_zero, hermitian, excess) = charfn_invariant_defects(&phi, &s_grid);
            prop_assert!(at_zero <= 1e-12);
            prop_assert!(hermitian <= 1e-12);
            prop_assert!(excess <= 1e-12);
        }
    }

    #[test]
    fn pdf_charfn_pdf_round_trip(mu in -1.0f64..1.0, sigma in 0.7f64..1.5) {
        let grid = GridSpec::symmetric(14.0, 2801).unwrap();
        let f = normal_density(mu, sigma, grid);
        let phi = charfn_from_pdf(&f).unwrap();
        let back = pdf_from_charfn(&phi, &grid, 12.0).unwrap();
        prop_assert!(max_dev(&back, |x| normal_pdf(mu, sigma, x), |_| true) <= 1e-5);
    }
}

#[test]
fn product_closed_form_matches_quadrature_for_random_parameters() {
    let mut rng = seeded_rng(2024);
    let mut sets = vec![reference_params()];
    while sets.len() < 6 {
        let s1 = rng.random_range(0.3..2.0);
        let s2 = rng.random_range(0.3..2.0);
        let rho = rng.random_range(-0.9..0.9);
        sets.push(BivariateGaussianParams::centered(s1, s2, rho).unwrap());
    }
    let (a, b) = (0.05f64.ln(), 4.0f64.ln());
    for p in &sets {
        for k in 0..20 {
            let y0 = (a + (b - a) * k as f64 / 19.0).exp();
            for y in [y0, -y0] {
                let closed = product_pdf_gaussian(p, y).unwrap();
                let quad = product_pdf_quadrature(p, y).unwrap();
                assert!(((closed - quad) / quad).abs() <= 1e-7, "{p:?} y = {y}: {closed} vs {quad}");
            }
        }
    }
}

#[test]
fn product_density_symmetry_and_singularity() {
    let p = reference_params();
    for y in [0.05, 0.5, 2.0] {
        assert_eq!(product_pdf_gaussian(&p, y).unwrap(), product_pdf_gaussian(&p, -y).unwrap());
    }
    let f = |y| product_pdf_gaussian(&p, y).unwrap();
    assert!(f(1e-3) > f(1e-2) && f(1e-2) > f(1e-1));
    let skewed = BivariateGaussianParams::centered(1.0, 1.0, 0.6).unwrap();
    assert!(product_pdf_gaussian(&skewed, 0.8).unwrap() > product_pdf_gaussian(&skewed, -0.8).unwrap());
}

#[test]
fn bivariate_marginal_by_quadrature() {
    let p = BivariateGaussianParams::new(0.4, -1.0, 1.3, 0.6, 0.7).unwrap();
    let g = GridSpec::symmetric(10.0, 4001).unwrap();
    let m = specprob::numerics::integrate_1d(|x2| bivariate_gaussian_pdf(&p, p.mu1, x2), &g).unwrap();
    assert!((m.value - 1.0 / ((2.0 * PI).sqrt() * p.sigma1)).abs() <= 1e-6);
}

#[test]
fn sum_charfn_against_monte_carlo_and_inversion() {
    let p = reference_params();
    let phi = sum_charfn_gaussian(&p);
    for s in [0.5, 1.0, 2.0] {
        assert!((phi.eval(s).re - (-0.5 * s * s).exp()).abs() < 1e-15);
        let re = mc_mean(17, 1_000_000, |rng| p.sample(rng), |&(a, b)| (s * (a + b)).cos()).unwrap();
        let im = mc_mean(17, 1_000_000, |rng| p.sample(rng), |&(a, b)| (s * (a + b)).sin()).unwrap();
        assert!(re.within(phi.eval(s).re, 4.0) && im.within(phi.eval(s).im, 4.0));
    }

    let shifted = BivariateGaussianParams::new(0.5, 0.25, 1.0, 0.5, -0.4).unwrap();
    let law = sum_pdf_gaussian(&shifted);
    let f = pdf_from_charfn(&sum_charfn_gaussian(&shifted), &GridSpec::symmetric(8.0, 1601).unwrap(), 12.0).unwrap();
    assert!(max_dev(&f, |x| law.pdf(x), |_| true) <= 1e-6);
}

#[test]
fn product_charfn_against_monte_carlo() {
    let p = BivariateGaussianParams::centered(1.0, 2.0, 0.5).unwrap();
    let phi = product_charfn_gaussian(&p).unwrap();
    for s in [0.5, 1.0, 2.0] {
        let z = phi.eval(s);
        let re = mc_mean(23, 1_000_000, |rng| p.sample(rng), |&(a, b)| (s * a * b).cos()).unwrap();
        let im = mc_mean(23, 1_000_000, |rng| p.sample(rng), |&(a, b)| (s * a * b).sin()).unwrap();
        assert!(re.within(z.re, 4.0), "s = {s}: {} vs {}", re.mean, z.re);
        assert!(im.within(z.im, 4.0), "s = {s}: {} vs {}", im.mean, z.im);
    }
    let reference_phi = product_charfn_gaussian(&reference_params()).unwrap();
    assert!((reference_phi.eval(2.0) - Complex64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
}

/// `|phi_Y| ~ 2/|s|` decays too slowly for a bare truncation; the sixth
/// order window keeps the smoothing bias far below the tolerance away from
/// the singularity at the origin.
#[test]
fn product_density_by_inversion() {
    let phi = product_charfn_gaussian(&reference_params()).unwrap();
    let grid = GridSpec::symmetric(8.0, 4001).unwrap();
    let settings = InversionSettings::damped(710.0, Damping::Gaussian6 { eps: 0.01 });
    let f = pdf_from_charfn_with(&phi, &grid, &settings).unwrap();
    let p = reference_params();
    let err = max_dev(&f, |y| product_pdf_gaussian(&p, y).unwrap_or(0.0), |y| (0.05..=4.0).contains(&y.abs()));
    assert!(err <= 2e-4, "max deviation {err}");
}

#[test]
fn bare_truncation_of_slow_charfn_is_rejected() {
    let phi = product_charfn_gaussian(&reference_params()).unwrap();
    assert!(pdf_from_charfn(&phi, &GridSpec::symmetric(4.0, 401).unwrap(), 50.0).is_err());
}

fn standard_joint(half_width: f64, n: usize) -> GridDensity2D {
    let g = GridSpec::symmetric(half_width, n).unwrap();
    let p = BivariateGaussianParams::standard();
    GridDensity2D::from_fn(g, g, |a, b| bivariate_gaussian_pdf(&p, a, b)).unwrap()
}

#[test]
fn transformation_to_sum_and_projection() {
    let joint = standard_joint(8.0, 321);
    let out = GridSpec::symmetric(8.0, 801).unwrap();
    let sum = rvt_transform(&joint, |a, b| a + b, &out, 10.0).unwrap();
    let law = sum_pdf_gaussian(&BivariateGaussianParams::standard());
    assert!(max_dev(&sum, |x| law.pdf(x), |_| true) <= 5e-4);

    let proj = rvt_transform(&joint, |a, _| a, &out, 12.0).unwrap();
    assert!(max_dev(&proj, |x| normal_pdf(0.0, 1.0, x), |_| true) <= 5e-4);
}

#[test]
fn transformation_to_product() {
    let g = GridSpec::symmetric(5.5, 551).unwrap();
    let p = reference_params();
    let joint = GridDensity2D::from_fn(g, g, |a, b| bivariate_gaussian_pdf(&p, a, b)).unwrap();
    let out = GridSpec::symmetric(4.0, 801).unwrap();
    let settings = InversionSettings::damped(250.0, Damping::Gaussian6 { eps: 0.03 });
    let f = rvt_transform_with(&joint, |a, b| a * b, &out, &settings).unwrap();
    let err = max_dev(&f, |y| product_pdf_gaussian(&p, y).unwrap_or(0.0), |y| y.abs() >= 0.1);
    assert!(err <= 2e-3, "max deviation {err}");
}

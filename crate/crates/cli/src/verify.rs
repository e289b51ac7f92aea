use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use clap::ValueEnum;
use num_complex::Complex64;
use rand::Rng;
use specprob::classical::{
    moment_from_charfn, pdf_from_charfn, product_charfn_gaussian, product_pdf_gaussian,
    product_pdf_mass, product_pdf_quadrature, sum_charfn_gaussian, BivariateGaussianParams, NormalLaw,
};
use specprob::export::format_number;
use specprob::numerics::{mc_mean, seeded_rng, GridSpec};
use specprob::oscillator::{
    classical_product_charfn, half_variance_normal, squeezed_vacuum_amplitudes, sum_charfn_quantum,
    sum_charfn_quantum_fn, sum_charfn_quantum_quadrature, u_charfn, u_charfn_fn, u_expectation_via_quasi,
    u_pdf, v_expectation_via_quasi, v_pdf, xy_expectation, QuasiDensity2D,
};
use specprob::spectral::{
    eigendecompose_default, joint_distribution, marginal_defect, max_abs, CMatrix, HermitianOperator,
    StateVector,
};
use specprob::Error;

use crate::config::Config;
use crate::figures::{fig3_grid, fig4_grid, FIG3_S_MAX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Classical,
    Quantum,
    Spectral,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub expected: f64,
    pub tol: f64,
}

impl Check {
    /// Passes when `|measured - expected| <= tol`.
    fn close(name: &'static str, measured: f64, expected: f64, tol: f64) -> Self {
        Self { name, passed: (measured - expected).abs() <= tol, measured, expected, tol }
    }

    /// A deviation that must not exceed `tol`.
    fn at_most(name: &'static str, defect: f64, tol: f64) -> Self {
        Self::close(name, defect, 0.0, tol)
    }

    fn predicate(name: &'static str, passed: bool, measured: f64, expected: f64) -> Self {
        Self { name, passed, measured, expected, tol: 0.0 }
    }

    /// Records a library error as a failed check.
    fn failed(name: &'static str, expected: f64, tol: f64) -> Self {
        Self { name, passed: false, measured: f64::NAN, expected, tol }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} measured={} expected={} tol={}",
            self.name,
            if self.passed { "pass" } else { "fail" },
            format_number(self.measured),
            format_number(self.expected),
            format_number(self.tol),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        writeln!(f, "overall: {}", if self.passed() { "pass" } else { "fail" })
    }
}

fn or_fail(name: &'static str, expected: f64, tol: f64, r: Result<Check, Error>) -> Check {
    r.unwrap_or_else(|_| Check::failed(name, expected, tol))
}

pub fn run(suite: Suite, seed: u64, config: &Config) -> VerificationReport {
    let mut checks = Vec::new();
    if matches!(suite, Suite::All | Suite::Spectral) {
        checks.extend(spectral_checks(seed));
    }
    if matches!(suite, Suite::All | Suite::Classical) {
        checks.extend(classical_checks(seed, config.mc_n));
    }
    if matches!(suite, Suite::All | Suite::Quantum) {
        checks.extend(quantum_checks(&config.grid));
    }
    VerificationReport { checks }
}

fn spectral_checks(seed: u64) -> Vec<Check> {
    let y = HermitianOperator::pauli_y();
    let mut out = Vec::new();
    match eigendecompose_default(&y) {
        Ok(d) => {
            let ev = d.eigenvalues();
            let ev_defect = if ev.len() == 2 { (ev[0] + 1.0).abs().max((ev[1] - 1.0).abs()) } else { f64::INFINITY };
            out.push(Check::at_most("pauli_y_eigenvalues", ev_defect, 0.0));
            let id = CMatrix::identity(2, 2);
            let proj_defect = if d.projectors().len() == 2 {
                let minus = (&id - y.matrix()).scale(0.5);
                let plus = (&id + y.matrix()).scale(0.5);
                max_abs(&(&d.projectors()[0] - minus)).max(max_abs(&(&d.projectors()[1] - plus)))
            } else {
                f64::INFINITY
            };
            out.push(Check::at_most("pauli_y_projectors", proj_defect, 1e-12));
            out.push(Check::at_most("pauli_y_reconstruction", d.reconstruction_residual(&y), 1e-12));
        }
        Err(_) => {
            for name in ["pauli_y_eigenvalues", "pauli_y_projectors", "pauli_y_reconstruction"] {
                out.push(Check::failed(name, 0.0, 1e-12));
            }
        }
    }

    let mut rng = seeded_rng(seed);
    out.push(or_fail(
        "random_reconstruction",
        0.0,
        1e-10,
        HermitianOperator::random(4, &mut rng).and_then(|a| {
            let d = eigendecompose_default(&a)?;
            Ok(Check::at_most("random_reconstruction", d.reconstruction_residual(&a), 1e-10))
        }),
    ));

    let (defect, accepted, rejected) = joint_gate(&mut rng);
    out.push(Check::at_most("joint_marginals_commuting", defect, 1e-10));
    out.push(Check::predicate("joint_accepts_commuting", accepted == GATE_PAIRS, accepted as f64, GATE_PAIRS as f64));
    out.push(Check::predicate("joint_rejects_noncommuting", rejected == GATE_PAIRS, rejected as f64, GATE_PAIRS as f64));
    out
}

pub const GATE_PAIRS: usize = 100;

/// Commuting pairs are `(A, p(A))` for a random cubic `p`; noncommuting
/// pairs are independent random operators.
fn joint_gate<R: Rng>(rng: &mut R) -> (f64, usize, usize) {
    let mut worst = 0.0f64;
    let (mut accepted, mut rejected) = (0, 0);
    for k in 0..GATE_PAIRS {
        let dim = 2 + k % 4;
        let a = HermitianOperator::random(dim, rng).expect("dim > 0");
        let coeffs: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
        let b = a.polynomial(&coeffs);
        let v = StateVector::random(dim, rng).expect("dim > 0");
        if let Ok(j) = joint_distribution(&a, &b, &v, -1.0) {
            accepted += 1;
            worst = worst.max(marginal_defect(&j, &a, &b, &v).unwrap_or(f64::INFINITY));
        } else {
            worst = f64::INFINITY;
        }
    }
    for k in 0..GATE_PAIRS {
        let dim = 2 + k % 4;
        let a = HermitianOperator::random(dim, rng).expect("dim > 0");
        let b = HermitianOperator::random(dim, rng).expect("dim > 0");
        let v = StateVector::random(dim, rng).expect("dim > 0");
        if matches!(joint_distribution(&a, &b, &v, -1.0), Err(Error::Incompatible { .. })) {
            rejected += 1;
        }
    }
    (worst, accepted, rejected)
}

/// `sigma1 = sigma2 = 1/sqrt 2`, `rho = 0`: the parameters behind fig1 and fig4.
fn reference_params() -> BivariateGaussianParams {
    BivariateGaussianParams::centered(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0).expect("valid")
}

/// The 20 sample points in `[0.05, 4]`, log spaced.
pub fn product_check_points() -> Vec<f64> {
    let (a, b) = (0.05f64.ln(), 4.0f64.ln());
    (0..20).map(|k| (a + (b - a) * k as f64 / 19.0).exp()).collect()
}

fn classical_checks(seed: u64, mc_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let p = reference_params();

    let rel = product_check_points().into_iter().try_fold(0.0f64, |acc, y| {
        let closed = product_pdf_gaussian(&p, y)?;
        let quad = product_pdf_quadrature(&p, y)?;
        Ok::<_, Error>(acc.max(((closed - quad) / quad).abs()))
    });
    out.push(or_fail("product_pdf_quadrature", 0.0, 1e-7, rel.map(|r| Check::at_most("product_pdf_quadrature", r, 1e-7))));
    out.push(or_fail(
        "product_pdf_mass",
        1.0,
        1e-5,
        product_pdf_mass(&p, 40.0).map(|m| Check::close("product_pdf_mass", m, 1.0, 1e-5)),
    ));

    let mc = BivariateGaussianParams::new(0.3, -0.7, 1.0, 2.0, 0.5).expect("valid");
    let cov = mc.rho * mc.sigma1 * mc.sigma2;
    let cases: [(&'static str, f64, Box<dyn Fn(&(f64, f64)) -> f64>); 3] = [
        ("mc_centered_product_mean", cov, Box::new(|&(a, b)| (a - mc.mu1) * (b - mc.mu2))),
        ("mc_product_mean", cov + mc.mu1 * mc.mu2, Box::new(|&(a, b)| a * b)),
        ("mc_sum_mean", mc.mu1 + mc.mu2, Box::new(|&(a, b)| a + b)),
    ];
    for (name, expected, g) in cases {
        out.push(match mc_mean(seed, mc_n, |rng| mc.sample(rng), g) {
            Ok(est) => Check::close(name, est.mean, expected, 4.0 * est.std_error),
            Err(_) => Check::failed(name, expected, f64::NAN),
        });
    }

    let roundtrip = GridSpec::symmetric(8.0, 1601).and_then(|g| {
        let law = NormalLaw { mu: 0.0, sigma: 1.0, degenerate: false };
        let f = pdf_from_charfn(&law.charfn(), &g, 10.0)?;
        let err = f.points().iter().zip(f.values()).map(|(x, v)| (v - law.pdf(*x)).abs()).fold(0.0, f64::max);
        Ok(Check::at_most("normal_roundtrip", err, 1e-6))
    });
    out.push(or_fail("normal_roundtrip", 0.0, 1e-6, roundtrip));

    let centered = BivariateGaussianParams::centered(mc.sigma1, mc.sigma2, mc.rho).expect("valid");
    let moment = product_charfn_gaussian(&centered).and_then(|phi| moment_from_charfn(&phi, 1));
    out.push(or_fail("product_charfn_first_moment", cov, 1e-5, moment.map(|m| Check::close("product_charfn_first_moment", m, cov, 1e-5))));
    out
}

fn quantum_checks(grid: &GridSpec) -> Vec<Check> {
    let mut out = Vec::new();

    match QuasiDensity2D::quasi_f(grid.clone()) {
        Ok(f) => {
            out.push(or_fail("quasi_f_integral", 1.0, 1e-6, f.integral().map(|v| Check::close("quasi_f_integral", v, 1.0, 1e-6))));
            let pts = grid.points();
            let dev = |m: Vec<f64>| m.iter().zip(&pts).map(|(v, x)| (v - half_variance_normal(*x)).abs()).fold(0.0, f64::max);
            out.push(Check::at_most("quasi_f_marginal_x", dev(f.marginal_x()), 1e-6));
            out.push(Check::at_most("quasi_f_marginal_y", dev(f.marginal_y()), 1e-6));
            out.push(Check::predicate("quasi_f_negative", f.min_value() < 0.0, f.min_value(), 0.0));
        }
        Err(_) => out.push(Check::failed("quasi_f_integral", 1.0, 1e-6)),
    }
    out.push(or_fail(
        "quasi_g_integral",
        0.0,
        1e-8,
        QuasiDensity2D::quasi_g(grid.clone()).and_then(|g| g.integral()).map(|v| Check::at_most("quasi_g_integral", v.abs(), 1e-8)),
    ));

    let dual = GridSpec::symmetric(4.0, 41).and_then(|sg| {
        sg.points().into_iter().try_fold(0.0f64, |acc, s| {
            Ok(acc.max((sum_charfn_quantum_quadrature(s, grid)? - sum_charfn_quantum(s)).norm()))
        })
    });
    out.push(or_fail("phi_w_dual_route", 0.0, 1e-6, dual.map(|d| Check::at_most("phi_w_dual_route", d, 1e-6))));

    let w_inv = GridSpec::symmetric(8.0, 1601).and_then(|g| {
        let f = pdf_from_charfn(&sum_charfn_quantum_fn(), &g, 10.0)?;
        let law = NormalLaw { mu: 0.0, sigma: 1.0, degenerate: false };
        Ok(f.points().iter().zip(f.values()).map(|(x, v)| (v - law.pdf(*x)).abs()).fold(0.0, f64::max))
    });
    out.push(or_fail("w_inversion", 0.0, 1e-6, w_inv.map(|d| Check::at_most("w_inversion", d, 1e-6))));

    let classical = sum_charfn_gaussian(&reference_params());
    let gap = fig4_grid().points().into_iter().map(|s| (classical.eval(s) - sum_charfn_quantum(s)).norm()).fold(0.0, f64::max);
    out.push(Check::at_most("w_matches_classical_sum", gap, 1e-12));

    out.push(or_fail(
        "xy_expectation",
        0.0,
        1e-14,
        xy_expectation(8).map(|z| Check::at_most("xy_expectation", (z - Complex64::new(0.0, 0.5)).norm(), 1e-14)),
    ));
    out.push(Check::close("v_expectation", v_pdf().mean(), 0.5, 0.0));
    out.push(or_fail("v_expectation_quasi", 0.5, 1e-8, v_expectation_via_quasi(grid).map(|v| Check::close("v_expectation_quasi", v, 0.5, 1e-8))));
    out.push(or_fail("u_expectation_quasi", 0.0, 1e-8, u_expectation_via_quasi(grid).map(|v| Check::at_most("u_expectation_quasi", v.abs(), 1e-8))));
    out.push(or_fail(
        "u_expectation_charfn",
        0.0,
        1e-8,
        moment_from_charfn(&u_charfn_fn(), 1).map(|v| Check::at_most("u_expectation_charfn", v.abs(), 1e-8)),
    ));

    match u_pdf(&fig3_grid(), FIG3_S_MAX) {
        Ok(f) => {
            out.push(Check::close("u_pdf_integral", f.raw_mass(), 1.0, 1e-6));
            out.push(Check::at_most("u_pdf_symmetry", f.asymmetry(), 1e-10));
        }
        Err(_) => {
            out.push(Check::failed("u_pdf_integral", 1.0, 1e-6));
            out.push(Check::failed("u_pdf_symmetry", 0.0, 1e-10));
        }
    }

    out.push(Check::at_most("fock_normalization", fock_normalization_defect(FOCK_N_MAX), 1e-8));

    let s_grid = fig4_grid().points();
    let excess = s_grid.iter().map(|&s| u_charfn(s) - classical_product_charfn(s)).fold(f64::NEG_INFINITY, f64::max);
    out.push(Check::predicate("phi_u_below_phi_y", excess <= 0.0, excess, 0.0));
    let min_gap = s_grid
        .iter()
        .filter(|s| s.abs() >= 0.5)
        .map(|&s| classical_product_charfn(s) - u_charfn(s))
        .fold(f64::INFINITY, f64::min);
    out.push(Check::predicate("phi_u_strict_gap", min_gap > 0.0, min_gap, 0.0));
    out
}

pub const FOCK_N_MAX: usize = 80;

/// Squeezing strengths probed for the Fock normalization.
pub const FOCK_R: [f64; 5] = [0.0, 0.5, 1.0, 1.5, 2.0];

/// `max_r |sum_n |c_n|^2 - 1|` over [`FOCK_R`] at truncation `n_max`.
pub fn fock_normalization_defect(n_max: usize) -> f64 {
    FOCK_R
        .iter()
        .map(|&r| squeezed_vacuum_amplitudes(r, 0.0, n_max).map_or(f64::INFINITY, |c| (c.norm_sqr() - 1.0).abs()))
        .fold(0.0, f64::max)
}

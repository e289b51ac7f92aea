use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::density::GridDensity;
use crate::error::{Error, Result};
use crate::numerics::GridSpec;

type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Phases are recomputed exactly every this many recurrence steps.
const RESEED: usize = 64;

#[derive(Clone)]
enum Repr {
    Closure(Evaluator),
    /// `phi(s) = sum_k w_k exp(i s x_k)`.
    Discrete { points: Vec<f64>, weights: Vec<f64> },
}

/// Characteristic function `phi(s) = <exp(i s X)>`.
#[derive(Clone)]
pub struct CharFn {
    repr: Repr,
    /// Largest `|s|` the representation resolves; `None` for exact closures.
    limit: Option<f64>,
    /// Set when the source density had not decayed at its grid edges.
    poorly_decayed: bool,
}

impl fmt::Debug for CharFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.repr {
            Repr::Closure(_) => "closure".to_string(),
            Repr::Discrete { points, .. } => format!("discrete({} atoms)", points.len()),
        };
        f.debug_struct("CharFn")
            .field("repr", &kind)
            .field("limit", &self.limit)
            .field("poorly_decayed", &self.poorly_decayed)
            .finish()
    }
}

impl CharFn {
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self { repr: Repr::Closure(Arc::new(f)), limit: None, poorly_decayed: false }
    }

    /// Characteristic function of the discrete measure `sum_k w_k delta(x - x_k)`,
    /// rescaled to unit total weight.
    pub fn from_atoms(points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), found: weights.len() });
        }
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::InvalidParameter(format!("atom weights sum to {total}")));
        }
        let weights = weights.into_iter().map(|w| w / total).collect();
        Ok(Self { repr: Repr::Discrete { points, weights }, limit: None, poorly_decayed: false })
    }

    pub fn with_limit(mut self, limit: f64) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn limit(&self) -> Option<f64> {
        self.limit
    }

    pub fn poorly_decayed(&self) -> bool {
        self.poorly_decayed
    }

    pub fn eval(&self, s: f64) -> Complex64 {
        match &self.repr {
            Repr::Closure(f) => f(s),
            Repr::Discrete { points, weights } => points
                .iter()
                .zip(weights)
                .map(|(x, w)| Complex64::from_polar(*w, s * x))
                .sum(),
        }
    }

    /// [`CharFn::eval`] that refuses frequencies beyond the resolvable limit.
    pub fn try_eval(&self, s: f64) -> Result<Complex64> {
        match self.limit {
            Some(limit) if s.abs() > limit => Err(Error::UnresolvedFrequency { s, limit }),
            _ => Ok(self.eval(s)),
        }
    }

    /// Values on every node of `grid`. Discrete measures use the phase
    /// recurrence `e^{i(s+ds)x} = e^{isx} e^{i ds x}`.
    pub fn sample(&self, grid: &GridSpec) -> Vec<Complex64> {
        match &self.repr {
            Repr::Closure(f) => grid.points().into_iter().map(|s| f(s)).collect(),
            Repr::Discrete { points, weights } => {
                let n = grid.len();
                let ds = grid.step();
                let mut out = vec![Complex64::new(0.0, 0.0); n];
                for (x, w) in points.iter().zip(weights) {
                    if *w == 0.0 {
                        continue;
                    }
                    let step = Complex64::from_polar(1.0, ds * x);
                    let mut phase = Complex64::new(0.0, 0.0);
                    for (k, o) in out.iter_mut().enumerate() {
                        if k % RESEED == 0 {
                            phase = Complex64::from_polar(*w, grid.point(k) * x);
                        } else {
                            phase *= step;
                        }
                        *o += phase;
                    }
                }
                out
            }
        }
    }
}

/// `phi(s) = int e^{isx} f(x) dx` as the trapezoid-weighted atom measure of
/// the grid density. Resolvable up to `|s| <= pi / (8 h)`.
pub fn charfn_from_pdf(f: &GridDensity) -> Result<CharFn> {
    let grid = f.grid();
    let values = f.values();
    let weights: Vec<f64> = values.iter().enumerate().map(|(k, v)| grid.trapezoid_weight(k) * v).collect();
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let edge = values[0].abs().max(values[values.len() - 1].abs());
    let mut phi = CharFn::from_atoms(grid.points(), weights)?.with_limit(PI / (8.0 * grid.step()));
    phi.poorly_decayed = edge >= 1e-12 * peak.max(1.0);
    Ok(phi)
}

/// Largest `|phi(-s) - conj(phi(s))|`, `|phi(0) - 1|` and `max(|phi| - 1, 0)`
/// over the nodes of `grid`.
pub fn charfn_invariant_defects(phi: &CharFn, grid: &GridSpec) -> (f64, f64, f64) {
    let at_zero = (phi.eval(0.0) - 1.0).norm();
    let mut hermitian = 0.0f64;
    let mut excess = 0.0f64;
    for s in grid.points() {
        let p = phi.eval(s);
        hermitian = hermitian.max((phi.eval(-s) - p.conj()).norm());
        excess = excess.max(p.norm() - 1.0);
    }
    (at_zero, hermitian, excess)
}

fn derivative_stencil(phi: &CharFn, n: u32, h: f64) -> Complex64 {
    let p = |k: f64| phi.eval(k * h);
    match n {
        1 => (p(1.0) - p(-1.0)) / (2.0 * h),
        2 => (p(1.0) - p(0.0) * 2.0 + p(-1.0)) / (h * h),
        3 => (p(2.0) - p(1.0) * 2.0 + p(-1.0) * 2.0 - p(-2.0)) / (2.0 * h.powi(3)),
        _ => (p(2.0) - p(1.0) * 4.0 + p(0.0) * 6.0 - p(-1.0) * 4.0 + p(-2.0)) / h.powi(4),
    }
}

/// Finite-difference step for the `n`-th derivative. Higher orders use wider
/// steps because the stencil roundoff grows like `eps / h^n`.
pub fn moment_step(n: u32) -> f64 {
    match n {
        1 | 2 => 1e-3,
        3 => 5e-3,
        _ => 2e-2,
    }
}

/// `<X^n> = phi^{(n)}(0) / i^n` by central differences with one Richardson level.
pub fn moment_from_charfn(phi: &CharFn, n: u32) -> Result<f64> {
    if !(1..=4).contains(&n) {
        return Err(Error::MomentOrder(n));
    }
    let h = moment_step(n);
    let coarse = derivative_stencil(phi, n, h);
    let fine = derivative_stencil(phi, n, 0.5 * h);
    let d = (fine * 4.0 - coarse) / 3.0;
    let i_pow = Complex64::new(0.0, 1.0).powu(n);
    let m = d / i_pow;
    let tol = 1e-8f64.max(1e3 * f64::EPSILON / (0.5 * h).powi(n as i32));
    if m.im.abs() > tol {
        return Err(Error::ImaginaryResidue { imag: m.im, tol });
    }
    Ok(m.re)
}

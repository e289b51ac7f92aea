use num_complex::Complex64;
use serde::Serialize;

use super::operator::{
    max_abs, sandwich, CMatrix, CVector, HermitianOperator, OperatorJson, StateVector,
};
use crate::error::{Error, Result};

/// Relative merge tolerance for nearly equal eigenvalues.
pub const DEFAULT_DEGENERACY_REL: f64 = 1e-9;

/// Eigenvalues and orthogonal projectors with `A = sum_i a_i P_i`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    projectors: Vec<CMatrix>,
    /// Orthonormal column basis of each eigenspace, aligned with `eigenvalues`.
    bases: Vec<CMatrix>,
    dim: usize,
}

/// Probability mass function on strictly ascending points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteDistribution {
    pub points: Vec<f64>,
    pub masses: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn point_mass(at: f64) -> Self {
        Self { points: vec![at], masses: vec![1.0] }
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.points.iter().zip(&self.masses).map(|(x, w)| x * w).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.points.iter().zip(&self.masses).map(|(x, w)| w * (x - m).powi(2)).sum()
    }

    /// `P(X <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.points.iter().zip(&self.masses).filter(|(p, _)| **p <= x).map(|(_, w)| w).sum()
    }

    /// Mass at `x`, or zero when `x` is not a support point.
    pub fn mass_at(&self, x: f64) -> f64 {
        self.points.iter().position(|&p| p == x).map_or(0.0, |k| self.masses[k])
    }
}

/// Default merge tolerance `1e-9 max|a_i|`.
pub fn default_degeneracy_tol(eigenvalues: &[f64]) -> f64 {
    DEFAULT_DEGENERACY_REL * eigenvalues.iter().fold(0.0f64, |m, a| m.max(a.abs()))
}

/// Multiplies column `k` by a unit phase so its first non-negligible entry
/// is real and positive.
fn fix_phase(v: &mut CMatrix, k: usize) {
    let col = v.column(k);
    let scale = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(first) = col.iter().find(|z| z.norm() > 1e-8 * scale).copied() {
        let phase = first.conj() / first.norm();
        for z in v.column_mut(k).iter_mut() {
            *z *= phase;
        }
    }
}

/// Eigenpairs of a Hermitian matrix, ascending, with phase-fixed eigenvectors.
pub(crate) fn sorted_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
        fix_phase(&mut vectors, k);
    }
    (values, vectors)
}

fn projector_from_basis(basis: &CMatrix) -> CMatrix {
    let p = basis * basis.adjoint();
    (&p + p.adjoint()).scale(0.5)
}

/// Spectral decomposition with eigenvalues closer than `degeneracy_tol`
/// merged into one projector. A negative `degeneracy_tol` selects the
/// default `1e-9 max|a_i|`.
pub fn eigendecompose(a: &HermitianOperator, degeneracy_tol: f64) -> Result<SpectralDecomposition> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    let (values, vectors) = sorted_eigen(a.matrix());
    let tol = if degeneracy_tol < 0.0 { default_degeneracy_tol(&values) } else { degeneracy_tol };

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        match groups.last_mut() {
            Some(g) if values[k] - values[*g.last().unwrap()] <= tol => g.push(k),
            _ => groups.push(vec![k]),
        }
    }

    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut projectors = Vec::with_capacity(groups.len());
    let mut bases = Vec::with_capacity(groups.len());
    for g in &groups {
        let mean = g.iter().map(|&k| values[k]).sum::<f64>() / g.len() as f64;
        let basis = vectors.select_columns(g.iter());
        eigenvalues.push(mean);
        projectors.push(projector_from_basis(&basis));
        bases.push(basis);
    }
    Ok(SpectralDecomposition { eigenvalues, projectors, bases, dim: n })
}

/// [`eigendecompose`] with the default merge tolerance.
pub fn eigendecompose_default(a: &HermitianOperator) -> Result<SpectralDecomposition> {
    eigendecompose(a, -1.0)
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    pub(crate) fn bases(&self) -> &[CMatrix] {
        &self.bases
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.ncols()).collect()
    }

    /// `sum_i a_i P_i`.
    pub fn reconstruct(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (a, p) in self.eigenvalues.iter().zip(&self.projectors) {
            m += p.scale(*a);
        }
        m
    }

    pub fn reconstruction_residual(&self, a: &HermitianOperator) -> f64 {
        max_abs(&(self.reconstruct() - a.matrix()))
    }

    /// Largest entrywise violation of `P_i P_j = delta_ij P_i` and `sum P_i = I`.
    pub fn projector_algebra_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        let mut sum = CMatrix::zeros(self.dim, self.dim);
        for (i, p) in self.projectors.iter().enumerate() {
            sum += p;
            for (j, q) in self.projectors.iter().enumerate() {
                let prod = p * q;
                let defect = if i == j { max_abs(&(prod - p)) } else { max_abs(&prod) };
                worst = worst.max(defect);
            }
        }
        worst.max(max_abs(&(sum - CMatrix::identity(self.dim, self.dim))))
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            eigenvalues: self.eigenvalues.clone(),
            projectors: self
                .projectors
                .iter()
                .map(|p| {
                    let OperatorJson { re, im, .. } = OperatorJson::from(p);
                    ProjectorJson { re, im }
                })
                .collect(),
        }
    }
}

/// Decomposition wire format: `{ "eigenvalues": [...], "projectors": [{re, im}, ...] }`.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionJson {
    pub eigenvalues: Vec<f64>,
    pub projectors: Vec<ProjectorJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectorJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// `E(lambda) = sum_i H(lambda - a_i) P_i` with `H(0) = 1`.
pub fn spectral_family_at(d: &SpectralDecomposition, lambda: f64) -> CMatrix {
    let mut e = CMatrix::zeros(d.dim, d.dim);
    for (a, p) in d.eigenvalues.iter().zip(&d.projectors) {
        if *a <= lambda {
            e += p;
        }
    }
    e
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Born weights `w_i = <v|P_i|v>` on the eigenvalues.
///
/// Weights are clamped at zero; a symmetrized projector can return
/// `-1e-17`-sized values for states orthogonal to its range.
pub fn measurement_distribution(
    d: &SpectralDecomposition,
    v: &StateVector,
) -> Result<DiscreteDistribution> {
    check_dim(d.dim, v.dim())?;
    let amps = v.amplitudes();
    let masses = d.projectors.iter().map(|p| sandwich(amps, p, amps).re.max(0.0)).collect();
    Ok(DiscreteDistribution { points: d.eigenvalues.clone(), masses })
}

/// `<v|A|v>`; the imaginary part must vanish to `1e-12 max(1, |A|_max)`.
pub fn expectation(a: &HermitianOperator, v: &StateVector) -> Result<f64> {
    check_dim(a.dim(), v.dim())?;
    let z: Complex64 = sandwich(v.amplitudes(), a.matrix(), v.amplitudes());
    let tol = 1e-12 * a.max_abs().max(1.0);
    if z.im.abs() > tol {
        return Err(Error::ImaginaryResidue { imag: z.im, tol });
    }
    Ok(z.re)
}

/// `F(lambda) = <v|E(lambda)|v>`, clamped to `[0, 1]`.
pub fn cdf_at(d: &SpectralDecomposition, v: &StateVector, lambda: f64) -> Result<f64> {
    check_dim(d.dim, v.dim())?;
    let e = spectral_family_at(d, lambda);
    let amps = v.amplitudes();
    Ok(sandwich(amps, &e, amps).re.clamp(0.0, 1.0))
}

/// Basis vector `e_k` as a state.
pub fn basis_state(dim: usize, k: usize) -> Result<StateVector> {
    if k >= dim {
        return Err(Error::DimensionMismatch { expected: dim, found: k });
    }
    let mut v = CVector::zeros(dim);
    v[k] = Complex64::new(1.0, 0.0);
    StateVector::new(v)
}

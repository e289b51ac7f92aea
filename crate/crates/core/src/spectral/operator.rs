use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |A - A^dagger|` entrywise.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Dense complex matrix with `|A - A^dagger|_max <= 1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension);
        }
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let defect = hermiticity_defect(&matrix);
        if !(defect <= HERMITIAN_TOL) {
            return Err(Error::NotHermitian { defect });
        }
        Ok(Self { matrix })
    }

    /// Real symmetric operator from row-major entries.
    pub fn from_real_rows(dim: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: rows.len() });
        }
        Self::new(CMatrix::from_row_iterator(
            dim,
            dim,
            rows.iter().map(|&x| Complex64::new(x, 0.0)),
        ))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let d = CVector::from_iterator(values.len(), values.iter().map(|&x| Complex64::new(x, 0.0)));
        Self::new(CMatrix::from_diagonal(&d))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(CMatrix::identity(dim, dim))
    }

    pub fn pauli_x() -> Self {
        let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        Self { matrix: CMatrix::from_row_slice(2, 2, &[o, l, l, o]) }
    }

    pub fn pauli_y() -> Self {
        let (o, i) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0));
        Self { matrix: CMatrix::from_row_slice(2, 2, &[o, -i, i, o]) }
    }

    pub fn pauli_z() -> Self {
        Self::diagonal(&[1.0, -1.0]).expect("diagonal is Hermitian")
    }

    /// `(M + M^dagger) / 2` with standard complex normal entries in `M`.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        let m = random_matrix(dim, rng);
        Self::new((&m + m.adjoint()).scale(0.5))
    }

    /// Real polynomial `sum_k coeffs[k] A^k`, which commutes with `A`.
    pub fn polynomial(&self, coeffs: &[f64]) -> Self {
        let n = self.dim();
        let mut acc = CMatrix::zeros(n, n);
        let mut power = CMatrix::identity(n, n);
        for &c in coeffs {
            acc += power.scale(c);
            power = &power * &self.matrix;
        }
        // Powers of a Hermitian matrix drift by roundoff; restore exact symmetry.
        let acc = (&acc + acc.adjoint()).scale(0.5);
        Self { matrix: acc }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.matrix)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: OperatorJson = serde_json::from_str(text)?;
        raw.try_into()
    }

    pub fn to_json(&self) -> OperatorJson {
        OperatorJson::from(&self.matrix)
    }
}

fn random_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Operator wire format: `{ "dim": n, "re": [[...]], "im": [[...]] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&CMatrix> for OperatorJson {
    fn from(m: &CMatrix) -> Self {
        let n = m.nrows();
        let re = (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect();
        let im = (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect();
        Self { dim: n, re, im }
    }
}

impl TryFrom<OperatorJson> for HermitianOperator {
    type Error = Error;

    fn try_from(raw: OperatorJson) -> Result<Self> {
        let n = raw.dim;
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        for part in [&raw.re, &raw.im] {
            if part.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: part.len() });
            }
            if let Some(row) = part.iter().find(|r| r.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        Self::new(CMatrix::from_fn(n, n, |i, j| Complex64::new(raw.re[i][j], raw.im[i][j])))
    }
}

/// Normalized state vector, `|<v|v> - 1| <= 1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(amplitudes: CVector) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyDimension);
        }
        let defect = (amplitudes.norm_squared() - 1.0).abs();
        if !(defect <= NORMALIZATION_TOL) {
            return Err(Error::NotNormalized { defect });
        }
        Ok(Self { amplitudes })
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidParameter(format!("cannot normalize vector of norm {norm}")));
        }
        Self::new(amplitudes.unscale(norm))
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::normalized(CVector::from_iterator(
            values.len(),
            values.iter().map(|&x| Complex64::new(x, 0.0)),
        ))
    }

    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        let v = CVector::from_fn(dim, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        Self::normalized(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: StateJson = serde_json::from_str(text)?;
        if raw.re.len() != raw.im.len() {
            return Err(Error::DimensionMismatch { expected: raw.re.len(), found: raw.im.len() });
        }
        let v = CVector::from_iterator(
            raw.re.len(),
            raw.re.iter().zip(&raw.im).map(|(&r, &i)| Complex64::new(r, i)),
        );
        Self::new(v)
    }
}

/// State wire format: `{ "re": [...], "im": [...] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

/// `<u|M|v>`.
pub fn sandwich(u: &CVector, m: &CMatrix, v: &CVector) -> Complex64 {
    u.dotc(&(m * v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::seeded_rng;

    #[test]
    fn rejects_non_hermitian_with_defect() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        );
        match HermitianOperator::new(m) {
            Err(Error::NotHermitian { defect }) => assert_eq!(defect, 2.0),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(HermitianOperator::new(CMatrix::zeros(0, 0)), Err(Error::EmptyDimension)));
    }

    #[test]
    fn json_round_trip() {
        let y = HermitianOperator::pauli_y();
        let text = serde_json::to_string(&y.to_json()).unwrap();
        assert_eq!(HermitianOperator::from_json(&text).unwrap(), y);
        let bad = r#"{"dim":2,"re":[[0,0],[0,0]],"im":[[0,-1],[1]]}"#;
        assert!(matches!(HermitianOperator::from_json(bad), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn state_requires_normalization() {
        let v = CVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert!(matches!(StateVector::new(v.clone()), Err(Error::NotNormalized { .. })));
        assert!(StateVector::normalized(v).is_ok());
        let s = StateVector::from_json(r#"{"re":[0.6,0],"im":[0,0.8]}"#).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn random_operator_is_hermitian_and_seeded() {
        let a = HermitianOperator::random(5, &mut seeded_rng(3)).unwrap();
        let b = HermitianOperator::random(5, &mut seeded_rng(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(hermiticity_defect(a.matrix()), 0.0);
    }
}

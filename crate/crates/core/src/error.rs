use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |A - A^dagger| = {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized: |<v|v> - 1| = {defect:e}")]
    NotNormalized { defect: f64 },

    #[error("imaginary part {imag:e} exceeds tolerance {tol:e}")]
    ImaginaryResidue { imag: f64, tol: f64 },

    #[error("operators do not commute: max |AB - BA| = {commutator_norm:e} > tol {tol:e}")]
    Incompatible { commutator_norm: f64, tol: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite integrand value {value} at {location}")]
    NonFinite { location: String, value: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("density is singular at y = {at}")]
    Singularity { at: f64 },

    #[error("characteristic function has not decayed: |phi(s_max = {s_max})| = {magnitude:e} >= {tol:e}")]
    InsufficientDecay { s_max: f64, magnitude: f64, tol: f64 },

    #[error("Fourier inversion failed: recovered mass {mass} differs from 1 by more than {tol:e}")]
    InversionFailure { mass: f64, tol: f64 },

    #[error("requested frequency {s} exceeds the resolvable limit {limit} of the sampled grid")]
    UnresolvedFrequency { s: f64, limit: f64 },

    #[error("quadrature did not converge: error estimate {estimate:e} > {tol:e}")]
    NotConverged { estimate: f64, tol: f64 },

    #[error("Fock truncation inadequate: tail mass {tail:e} > {tol:e}")]
    Truncation { tail: f64, tol: f64 },

    #[error("unsupported moment order {0} (expected 1..=4)")]
    MomentOrder(u32),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

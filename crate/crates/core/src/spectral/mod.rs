//! Finite-dimensional spectral theory: projector decompositions of Hermitian
//! matrices, spectral families, measurement statistics and joint
//! distributions of commuting observables.

mod decomposition;
mod joint;
mod operator;

pub use decomposition::{
    basis_state, cdf_at, default_degeneracy_tol, eigendecompose, eigendecompose_default,
    expectation, measurement_distribution, spectral_family_at, DecompositionJson,
    DiscreteDistribution, ProjectorJson, SpectralDecomposition, DEFAULT_DEGENERACY_REL,
};
pub use joint::{
    commutator, default_compatibility_tol, joint_distribution, marginal_defect, JointDistribution,
    JointMass,
};
pub use operator::{
    hermiticity_defect, max_abs, sandwich, CMatrix, CVector, HermitianOperator, OperatorJson,
    StateJson, StateVector, HERMITIAN_TOL, NORMALIZATION_TOL,
};

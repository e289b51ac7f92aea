//! Probability distributions of observables.
//!
//! * [`spectral`]: eigendecomposition of Hermitian matrices, measurement
//!   laws of states and joint laws of commuting pairs.
//! * [`classical`]: gridded densities, characteristic functions and their
//!   inversion, and the Gaussian sum and product laws.
//! * [`oscillator`]: ground-state quasi-probabilities of the harmonic
//!   oscillator and the laws of the symmetrized and antisymmetrized
//!   position-momentum products.
//! * [`numerics`]: grids, trapezoid quadrature, `K0` and seeded Monte Carlo.

pub mod classical;
pub mod error;
pub mod export;
pub mod numerics;
pub mod oscillator;
pub mod spectral;

pub use error::{Error, Result};

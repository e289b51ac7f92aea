//! Shared numerical kernels: uniform grids, trapezoidal quadrature with a
//! Richardson error estimate, the modified Bessel function `K0`, and seeded
//! Monte Carlo reduction.

mod bessel;
mod grid;
mod montecarlo;
mod quadrature;

pub use bessel::bessel_k0;
pub use grid::GridSpec;
pub use montecarlo::{mc_mean, seeded_rng, McEstimate, Welford};
pub use quadrature::{
    integrate_1d, integrate_2d, integrate_exp_mapped, integrate_samples_1d, integrate_samples_2d,
    Quadrature,
};

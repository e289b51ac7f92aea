//! Classical random variables on grids: densities and distribution
//! functions, characteristic functions and their inversion, the bivariate
//! normal sum and product laws, and densities of transformed variables.

mod charfn;
mod density;
mod gaussian;
mod inversion;
mod rvt;

pub use charfn::{charfn_from_pdf, charfn_invariant_defects, moment_from_charfn, moment_step, CharFn};
pub use density::{cdf_from_pdf, expect_g, GridDensity, GridDensity2D, TOL_NORM};
pub use gaussian::{
    bivariate_gaussian_pdf, product_charfn_gaussian, product_pdf_gaussian, product_pdf_mass,
    product_pdf_quadrature, sample_bivariate_gaussian, sum_charfn_gaussian, sum_pdf_gaussian,
    BivariateGaussianParams, NormalLaw, SampleBatch, RHO_MARGIN,
};
pub use inversion::{
    frequency_grid, pdf_from_charfn, pdf_from_charfn_with, Damping, InversionSettings, DECAY_TOL,
    MASS_TOL,
};
pub use rvt::{rvt_transform, rvt_transform_with, transformed_charfn};

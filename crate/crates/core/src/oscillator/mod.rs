//! Harmonic-oscillator ground state: position and momentum densities, the
//! signed quasi-density of `(X, Y) = (Q/q0, P/p0)`, the law of `X + Y`,
//! and the laws of the Hermitian parts `U`, `V` of `XY`.

mod fock;
mod params;
mod quasi;

pub use fock::{
    annihilation, canonical_commutator_defect, classical_product_charfn, momentum_matrix,
    position_matrix, squeezed_vacuum_amplitudes, squeezed_vacuum_coeffs, u_charfn, u_charfn_fn,
    u_charfn_fock, u_pdf, uv_operators, v_pdf, v_pdf_fock, xy_expectation, FockCoeffs,
    TRUNCATION_TOL, U_PDF_MIN_S_MAX,
};
pub use params::{ground_density_p, ground_density_q, overlap_qp, OscillatorParams};
pub use quasi::{
    default_quasi_grid, half_variance_normal, quasi_f, quasi_g, quasi_z, sum_charfn_quantum,
    sum_charfn_quantum_fn, sum_charfn_quantum_quadrature, sum_expectation_via_quasi,
    u_expectation_via_quasi, v_expectation_via_quasi, QuasiDensity2D,
};

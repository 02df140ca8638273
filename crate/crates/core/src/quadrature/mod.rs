//! Lattice sums of Gaussian densities against their integrals, and the
//! Euler-Maclaurin identity they rest on.

mod em;
mod lattice;

pub use em::{
    bernoulli_numbers, bernoulli_polynomial, em_bound_constant_check, euler_maclaurin_m0, extended_em_identity,
    EmClassical, EmConstantReport, EmIdentity, GaussianBump, Polynomial, SmoothFunction, RESIDUAL_TOL,
};
pub use lattice::{
    discretized_gauss_1d, discretized_gauss_1d_with_eta, discretized_gauss_2d, discretized_gauss_2d_with_eta,
    discretized_gauss_3d, discretized_gauss_3d_with_eta, Gauss1d, GaussNd, LatticeSpec,
};

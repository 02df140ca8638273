//! Bernoulli-dictionary penalties: the binomial-vs-Gaussian ratio bound
//! `phi(l)`, the `iota` terms, `err_Ber`, and the resulting theorem bound.

mod fixtures;
mod iota;
mod phi;

pub use fixtures::{assemble_a, b_lambda_limit, proof_matrix_b, proof_matrix_btilde, BtildeSign};
pub use iota::{ber_theorem_bound, err_ber, eta, iota_breakdown, iota_breakdown_with, BerTheoremBound, IotaBreakdown};
pub use phi::{
    binom_gauss_ratio, phi, phi_zeta, phi_zeta_branches, PhiBranch, PhiResult, PhiTable, RatioMax, RATIO_MAX_L,
    ZETA_GRID_HI, ZETA_GRID_LO, ZETA_GRID_POINTS, ZETA_TOL,
};

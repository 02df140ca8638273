//! Small numerical kernels shared by the bound and verification modules.

mod integrate;
mod linalg;
mod optimize;
mod special;

pub use integrate::{integrate_adaptive, integrate_real_line};
pub use linalg::{determinant, is_positive_definite, leading_minors, SymMatrix};
pub use optimize::{golden_section, grid_then_golden, Minimum};
pub use special::{gaussian_integral, ln_binomial, ln_factorial, log_add_exp, log_sum_exp};

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bernoulli;
pub mod codec;
pub mod error;
pub mod exponents;
pub mod harness;
pub mod numeric;
pub mod params;
pub mod quadrature;

pub use error::{Error, Result};

//! Quadratic-form matrices from the Bernoulli-dictionary analysis, exported
//! as positive-definite test fixtures for the lattice-sum bounds.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exponents::rho_terms;
use crate::numeric::{is_positive_definite, leading_minors, SymMatrix};

/// Sign of the `(2,2)` entry of the 3x3 matrix, which is ambiguous as
/// typeset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BtildeSign {
    /// `-alpha^2 (1 - alpha) v / (1 + alpha^2 v)`; makes the matrix
    /// `p p^T / (1 + alpha v) - q q^T / (1 + alpha^2 v)`.
    Negative,
    Positive,
}

fn check(alpha: f64, v: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if !(v > 0.0) {
        return Err(domain(format!("SNR must be positive, got {v}")));
    }
    Ok(())
}

/// `B = (1 - rho_2^2) [[-1, 1/(alpha sqrt v)], [1/(alpha sqrt v), 1]]`.
pub fn proof_matrix_b(alpha: f64, v: f64) -> Result<SymMatrix<2>> {
    check(alpha, v)?;
    let c = rho_terms(alpha, v)?.one_minus_rho2sq;
    let off = c / (alpha * v.sqrt());
    Ok([[-c, off], [off, c]])
}

/// The 3x3 matrix `B~` with the chosen sign of its `(2,2)` entry.
pub fn proof_matrix_btilde(alpha: f64, v: f64, sign: BtildeSign) -> Result<SymMatrix<3>> {
    check(alpha, v)?;
    let av = alpha * v;
    let d1 = 1.0 + av;
    let d2 = 1.0 + alpha * av;
    let sqrt_av = av.sqrt();
    let b11 = av / d1 - alpha * alpha * av / d2;
    let b12 = -alpha * alpha * (alpha * (1.0 - alpha)).sqrt() * v / d2;
    let b13 = sqrt_av / d1 - alpha * sqrt_av / d2;
    let b22_mag = alpha * alpha * (1.0 - alpha) * v / d2;
    let b22 = match sign {
        BtildeSign::Negative => -b22_mag,
        BtildeSign::Positive => b22_mag,
    };
    let b23 = -alpha * ((1.0 - alpha) * v).sqrt() / d2;
    let b33 = 1.0 / d1 - 1.0 / d2;
    Ok([[b11, b12, b13], [b12, b22, b23], [b13, b23, b33]])
}

/// Supremum of feasible `lambda` for `I - lambda B`: `1 / sqrt(1 - rho_2^2)`.
pub fn b_lambda_limit(alpha: f64, v: f64) -> Result<f64> {
    check(alpha, v)?;
    Ok(1.0 / rho_terms(alpha, v)?.one_minus_rho2sq.sqrt())
}

/// `A = I - lambda B`, required strictly positive definite.
pub fn assemble_a<const N: usize>(b: &SymMatrix<N>, lambda: f64) -> Result<SymMatrix<N>> {
    let mut a = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            a[i][j] = if i == j { 1.0 } else { 0.0 } - lambda * b[i][j];
        }
    }
    if !is_positive_definite(&a) {
        return Err(Error::NotPositiveDefinite(format!(
            "I - {lambda} B has leading minors {:?}",
            leading_minors(&a)
        )));
    }
    Ok(a)
}

//! Discretized Gaussian integrals: Gaussian densities summed over the
//! lattice `x_k = h (k - n/2)`, `h = 2 / sqrt(n)`, on one or two axes and
//! integrated exactly over the remaining axis.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bernoulli::eta;
use crate::error::{domain, Result};
use crate::numeric::{determinant, integrate_real_line, is_positive_definite, leading_minors, SymMatrix};

/// Tolerance of the numeric inner integral used as a cross-check, relative
/// to its peak. The raw quadratic form loses about `1e-14` relative to
/// cancellation at the far lattice points, so tighter targets never
/// converge.
const INNER_TOL: f64 = 1e-12;

/// `n + 1` equally spaced points `h (k - n/2)`, `k = 0..=n`, `h = 2/sqrt(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub n: u64,
}

impl LatticeSpec {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(domain("lattice needs n >= 1"));
        }
        Ok(Self { n })
    }

    pub fn spacing(&self) -> f64 {
        2.0 / (self.n as f64).sqrt()
    }

    pub fn point(&self, k: u64) -> f64 {
        self.spacing() * (k as f64 - self.n as f64 / 2.0)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n).map(|k| self.point(k))
    }
}

/// One-axis case: `I_d = h sum_k exp(-s^2 (x_k - mu)^2 / 2)` against
/// `I_c = sqrt(2 pi) / s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gauss1d {
    pub n: u64,
    pub mu: f64,
    pub s: f64,
    pub eta: f64,
    pub discrete: f64,
    pub continuous: f64,
    /// `I_d / I_c`
    pub ratio: f64,
    /// `1 + eta s^2 / n`
    pub bound_factor: f64,
    pub bound_ok: bool,
    /// `(I_d / I_c - 1) n / (eta s^2)`; at most 1 exactly when the bound holds.
    pub normalized_margin: f64,
}

pub fn discretized_gauss_1d(n: u64, mu: f64, s: f64) -> Result<Gauss1d> {
    discretized_gauss_1d_with_eta(n, mu, s, eta())
}

/// [`discretized_gauss_1d`] with a caller-chosen constant in the bound.
pub fn discretized_gauss_1d_with_eta(n: u64, mu: f64, s: f64, eta: f64) -> Result<Gauss1d> {
    let lattice = LatticeSpec::new(n)?;
    if !(s > 0.0) || !s.is_finite() {
        return Err(domain(format!("s must be positive, got {s}")));
    }
    if !mu.is_finite() {
        return Err(domain(format!("mu must be finite, got {mu}")));
    }
    let s2 = s * s;
    let discrete = lattice.spacing()
        * lattice
            .points()
            .map(|x| (-0.5 * s2 * (x - mu).powi(2)).exp())
            .sum::<f64>();
    let continuous = (2.0 * PI).sqrt() / s;
    let ratio = discrete / continuous;
    let bound_factor = 1.0 + eta * s2 / n as f64;
    Ok(Gauss1d {
        n,
        mu,
        s,
        eta,
        discrete,
        continuous,
        ratio,
        bound_factor,
        bound_ok: ratio <= bound_factor,
        normalized_margin: (ratio - 1.0) * n as f64 / (eta * s2),
    })
}

fn check_pd<const N: usize>(a: &SymMatrix<N>) -> Result<()> {
    for i in 0..N {
        for j in 0..i {
            if a[i][j] != a[j][i] {
                return Err(domain(format!("matrix not symmetric at ({i},{j})")));
            }
        }
    }
    if !is_positive_definite(a) {
        return Err(domain(format!(
            "matrix not strictly positive definite; leading minors {:?}",
            leading_minors(a)
        )));
    }
    Ok(())
}

/// Lattice-summed Gaussian with some axes integrated out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussNd {
    /// Lattice sizes of the summed axes; 0 for an unused second axis.
    pub lattice: [u64; 2],
    pub matrix: Vec<Vec<f64>>,
    pub eta: f64,
    /// `I_d` with the continuous axis integrated in closed form.
    pub discrete: f64,
    /// `I_d` with the continuous axis integrated numerically.
    pub discrete_numeric: f64,
    /// `|closed - numeric| / closed`
    pub dual_rel_diff: f64,
    /// `(2 pi)^{N/2} / sqrt(det A)`
    pub continuous: f64,
    pub ratio: f64,
    pub bound_factor: f64,
    pub bound_ok: bool,
}

/// `exp(-q/2)` integrated over the last coordinate, where `q` is the
/// quadratic form with the last coordinate free:
/// `q = r + 2 b x + c x^2`, giving `sqrt(2 pi / c) exp(-(r - b^2/c)/2)`.
fn marginal(r: f64, b: f64, c: f64) -> f64 {
    (2.0 * PI / c).sqrt() * (-0.5 * (r - b * b / c)).exp()
}

fn numeric_marginal(r: f64, b: f64, c: f64) -> Result<f64> {
    // integrate around the conditional mean; scale the tolerance to the peak
    let center = -b / c;
    let peak = (-0.5 * (r - b * b / c)).exp();
    if peak == 0.0 {
        return Ok(0.0);
    }
    integrate_real_line(
        |x| (-0.5 * (r + 2.0 * b * x + c * x * x)).exp(),
        center,
        1.0 / c.sqrt(),
        INNER_TOL * peak,
    )
}

/// Two axes: `x1` on the lattice, `x2` continuous, density `exp(-x'Ax/2)`;
/// checks `I_d <= (1 + eta A11 / n) I_c`.
pub fn discretized_gauss_2d(n: u64, a: &SymMatrix<2>) -> Result<GaussNd> {
    discretized_gauss_2d_with_eta(n, a, eta())
}

pub fn discretized_gauss_2d_with_eta(n: u64, a: &SymMatrix<2>, eta: f64) -> Result<GaussNd> {
    let lattice = LatticeSpec::new(n)?;
    check_pd(a)?;
    let h = lattice.spacing();
    let (mut closed, mut numeric) = (0.0, 0.0);
    for x1 in lattice.points() {
        let (r, b, c) = (a[0][0] * x1 * x1, a[0][1] * x1, a[1][1]);
        closed += marginal(r, b, c);
        numeric += numeric_marginal(r, b, c)?;
    }
    let (closed, numeric) = (h * closed, h * numeric);
    let continuous = 2.0 * PI / determinant(a).sqrt();
    let bound_factor = 1.0 + eta * a[0][0] / n as f64;
    Ok(finish([n, 0], *a, eta, closed, numeric, continuous, bound_factor))
}

/// Three axes: `x1` on a lattice of size `n`, `x2` on one of size `n2`,
/// `x3` continuous; checks
/// `I_d <= (1 + eta A11 / n)(1 + eta A22 / n2) I_c`.
pub fn discretized_gauss_3d(n: u64, n2: u64, a: &SymMatrix<3>) -> Result<GaussNd> {
    discretized_gauss_3d_with_eta(n, n2, a, eta())
}

pub fn discretized_gauss_3d_with_eta(n: u64, n2: u64, a: &SymMatrix<3>, eta: f64) -> Result<GaussNd> {
    let l1 = LatticeSpec::new(n)?;
    let l2 = LatticeSpec::new(n2)?;
    check_pd(a)?;
    let (mut closed, mut numeric) = (0.0, 0.0);
    for x1 in l1.points() {
        for x2 in l2.points() {
            let r = a[0][0] * x1 * x1 + 2.0 * a[0][1] * x1 * x2 + a[1][1] * x2 * x2;
            let b = a[0][2] * x1 + a[1][2] * x2;
            closed += marginal(r, b, a[2][2]);
            numeric += numeric_marginal(r, b, a[2][2])?;
        }
    }
    let hh = l1.spacing() * l2.spacing();
    let continuous = (2.0 * PI).powf(1.5) / determinant(a).sqrt();
    let bound_factor = (1.0 + eta * a[0][0] / n as f64) * (1.0 + eta * a[1][1] / n2 as f64);
    Ok(finish(
        [n, n2],
        *a,
        eta,
        hh * closed,
        hh * numeric,
        continuous,
        bound_factor,
    ))
}

fn finish<const N: usize>(
    lattice: [u64; 2],
    matrix: SymMatrix<N>,
    eta: f64,
    discrete: f64,
    discrete_numeric: f64,
    continuous: f64,
    bound_factor: f64,
) -> GaussNd {
    let ratio = discrete / continuous;
    GaussNd {
        lattice,
        matrix: matrix.iter().map(|r| r.to_vec()).collect(),
        eta,
        discrete,
        discrete_numeric,
        dual_rel_diff: (discrete - discrete_numeric).abs() / discrete.abs(),
        continuous,
        ratio,
        bound_factor,
        bound_ok: ratio <= bound_factor,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::{assemble_a, proof_matrix_b, proof_matrix_btilde, BtildeSign};

    #[test]
    fn lattice_points() {
        let l = LatticeSpec::new(4).unwrap();
        let pts: Vec<f64> = l.points().collect();
        assert_eq!(pts, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        let l = LatticeSpec::new(9).unwrap();
        let pts: Vec<f64> = l.points().collect();
        assert_eq!(pts.len(), 10);
        for (p, q) in pts.iter().zip(pts.iter().rev()) {
            assert!((p + q).abs() < 1e-15);
        }
        assert!(LatticeSpec::new(0).is_err());
    }

    #[test]
    fn five_term_hand_sum() {
        let g = discretized_gauss_1d(4, 0.0, 1.0).unwrap();
        let hand = 1.0 + 2.0 * (-0.5f64).exp() + 2.0 * (-2.0f64).exp();
        assert!((g.discrete - hand).abs() < 1e-15);
        assert!((g.discrete - 2.483_732).abs() < 1e-6);
        assert!((g.continuous - 2.506_628).abs() < 1e-6);
        assert!((g.bound_factor * g.continuous - 2.7341).abs() < 1e-4);
        assert!(g.bound_ok);
    }

    #[test]
    fn off_lattice_mean_sweep() {
        for k in 2..=10 {
            let n = 1u64 << k;
            let h = 2.0 / (n as f64).sqrt();
            assert!(discretized_gauss_1d(n, h / 3.0, 1.0).unwrap().bound_ok, "n = {n}");
        }
    }

    #[test]
    fn small_s_limit() {
        let g = discretized_gauss_1d(16, 0.0, 1e-6).unwrap();
        assert!((g.discrete - 2.0 * 17.0 / 4.0).abs() < 1e-9);
        assert!(g.ratio < 1e-5 && g.bound_ok);
        assert!(discretized_gauss_1d(4, 0.0, 0.0).is_err());
        assert!(discretized_gauss_1d(4, 0.0, -1.0).is_err());
    }

    #[test]
    fn corrupted_constant_is_caught() {
        let bad = (2..=12)
            .map(|k| discretized_gauss_1d_with_eta(1 << k, 0.0, 2.0, 0.0).unwrap())
            .filter(|g| !g.bound_ok)
            .count();
        assert!(bad > 0);
    }

    #[test]
    fn identity_2d_factorizes() {
        let g2 = discretized_gauss_2d(16, &[[1.0, 0.0], [0.0, 1.0]]).unwrap();
        let g1 = discretized_gauss_1d(16, 0.0, 1.0).unwrap();
        assert!((g2.discrete - g1.discrete * (2.0 * PI).sqrt()).abs() < 1e-13);
        assert!((g2.ratio - g1.ratio).abs() < 1e-13);
        assert_eq!(g2.bound_factor, g1.bound_factor);
    }

    #[test]
    fn diagonal_2d() {
        let g = discretized_gauss_2d(16, &[[4.0, 0.0], [0.0, 1.0]]).unwrap();
        let g1 = discretized_gauss_1d(16, 0.0, 2.0).unwrap();
        assert!((g.continuous - PI).abs() < 1e-14);
        assert!((g.discrete - g1.discrete * (2.0 * PI).sqrt()).abs() < 1e-13);
        assert!((g.bound_factor - (1.0 + 4.0 * eta() / 16.0)).abs() < 1e-15);
        assert!(g.bound_ok);
    }

    #[test]
    fn fixture_2d_and_dual_method() {
        let a = assemble_a(&proof_matrix_b(0.5, 3.0).unwrap(), 0.5).unwrap();
        for n in [1, 4, 16, 64, 256] {
            let g = discretized_gauss_2d(n, &a).unwrap();
            assert!(g.bound_ok, "n = {n}: {g:?}");
            assert!(g.dual_rel_diff < 1e-9, "{g:?}");
        }
        assert!(discretized_gauss_2d(4, &[[1.0, 2.0], [2.0, 1.0]]).is_err());
    }

    #[test]
    fn separable_3d() {
        let a = [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]];
        let g = discretized_gauss_3d(4, 9, &a).unwrap();
        let f1 = discretized_gauss_1d(4, 0.0, 1.0).unwrap();
        let f2 = discretized_gauss_1d(9, 0.0, 2f64.sqrt()).unwrap();
        let third = (2.0 * PI / 3.0).sqrt();
        assert!((g.discrete - f1.discrete * f2.discrete * third).abs() < 1e-12);
        assert!((g.ratio - f1.ratio * f2.ratio).abs() < 1e-12);
        assert!((g.bound_factor - f1.bound_factor * f2.bound_factor).abs() < 1e-15);
        assert!(g.bound_ok && g.dual_rel_diff < 1e-9);
    }

    #[test]
    fn btilde_fixtures_3d() {
        for sign in [BtildeSign::Negative, BtildeSign::Positive] {
            for &(alpha, v) in &[(0.3, 5.0), (0.5, 3.0), (0.8, 15.0)] {
                let bt = proof_matrix_btilde(alpha, v, sign).unwrap();
                for lambda in [0.05, 0.2, 0.5] {
                    if let Ok(a) = assemble_a(&bt, lambda) {
                        let g = discretized_gauss_3d(64, 64, &a).unwrap();
                        assert!(
                            g.bound_ok && g.dual_rel_diff < 1e-9,
                            "{sign:?} {alpha} {v} {lambda}: {g:?}"
                        );
                    }
                }
            }
        }
    }
}

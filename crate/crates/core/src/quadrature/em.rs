//! Euler-Maclaurin summation with `m = 0` and its free-constant extension.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numeric::{gaussian_integral, golden_section, integrate_adaptive};

/// Absolute tolerance of the residual integrals.
pub const RESIDUAL_TOL: f64 = 1e-12;

/// A `C^2` function with closed-form derivatives and antiderivative.
pub trait SmoothFunction: Sync {
    fn value(&self, x: f64) -> f64;
    fn d1(&self, x: f64) -> f64;
    fn d2(&self, x: f64) -> f64;
    /// Exact integral over `[a, b]`.
    fn integral(&self, a: f64, b: f64) -> f64;
}

/// `exp(-s^2 (x - mu)^2 / 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianBump {
    pub s: f64,
    pub mu: f64,
}

impl SmoothFunction for GaussianBump {
    fn value(&self, x: f64) -> f64 {
        (-0.5 * (self.s * (x - self.mu)).powi(2)).exp()
    }

    fn d1(&self, x: f64) -> f64 {
        -self.s * self.s * (x - self.mu) * self.value(x)
    }

    fn d2(&self, x: f64) -> f64 {
        let s2 = self.s * self.s;
        let u = x - self.mu;
        s2 * (s2 * u * u - 1.0) * self.value(x)
    }

    fn integral(&self, a: f64, b: f64) -> f64 {
        gaussian_integral(self.s, self.mu, a, b)
    }
}

/// `sum_i coeffs[i] x^i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    fn horner<I: DoubleEndedIterator<Item = f64>>(coeffs: I, x: f64) -> f64 {
        coeffs.rev().fold(0.0, |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Polynomial {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| i as f64 * c)
                .collect(),
        }
    }

    fn antiderivative_at(&self, x: f64) -> f64 {
        let c: Vec<f64> = std::iter::once(0.0)
            .chain(self.coeffs.iter().enumerate().map(|(i, c)| c / (i + 1) as f64))
            .collect();
        Self::horner(c.into_iter(), x)
    }
}

impl SmoothFunction for Polynomial {
    fn value(&self, x: f64) -> f64 {
        Self::horner(self.coeffs.iter().copied(), x)
    }

    fn d1(&self, x: f64) -> f64 {
        self.derivative().value(x)
    }

    fn d2(&self, x: f64) -> f64 {
        self.derivative().derivative().value(x)
    }

    fn integral(&self, a: f64, b: f64) -> f64 {
        self.antiderivative_at(b) - self.antiderivative_at(a)
    }
}

/// Both sides of the extended Euler-Maclaurin identity on `[a, b]` with
/// `n + 2` cells of width `delta = (b - a)/(n + 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmIdentity {
    pub a: f64,
    pub b: f64,
    pub n: u64,
    pub b2: f64,
    pub delta: f64,
    /// Trapezoid sum minus the exact integral.
    pub lhs: f64,
    /// Boundary-derivative term minus the residual integrals.
    pub rhs: f64,
    pub abs_diff: f64,
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain(format!("need finite a < b, got [{a}, {b}]")));
    }
    Ok(())
}

/// Trapezoid sum over `a, y_0, ..., y_n, b` with `y_k = a + (k + 1) delta`.
fn trapezoid<F: SmoothFunction + ?Sized>(f: &F, a: f64, b: f64, n: u64, delta: f64) -> f64 {
    let inner: f64 = (0..=n).map(|k| f.value(a + (k + 1) as f64 * delta)).sum();
    delta * (0.5 * f.value(a) + inner + 0.5 * f.value(b))
}

/// Sum over the `n + 2` cells of `1/2 int_0^delta kernel(t/delta) f''(y + t) dt`.
fn residual_sum<F, K>(f: &F, a: f64, n: u64, delta: f64, kernel: K) -> Result<f64>
where
    F: SmoothFunction + ?Sized,
    K: Fn(f64) -> f64,
{
    let cells = n + 2;
    let tol = RESIDUAL_TOL / cells as f64;
    let mut total = 0.0;
    for k in 0..cells {
        let y = a + k as f64 * delta;
        total += 0.5 * integrate_adaptive(|t| kernel(t / delta) * f.d2(y + t), 0.0, delta, tol)?;
    }
    Ok(total)
}

/// Evaluates `lhs = delta (f(a)/2 + sum_k f(y_k) + f(b)/2) - int_a^b f` and
/// `rhs = b2 delta^2 (f'(b) - f'(a))/2 - delta^2 sum_{k=-1}^{n} J_k` with
/// `J_k = 1/2 int_0^delta (b2 - t/delta + t^2/delta^2) f''(y_k + t) dt`.
///
/// The two agree for every choice of `b2`.
pub fn extended_em_identity<F: SmoothFunction + ?Sized>(f: &F, a: f64, b: f64, n: u64, b2: f64) -> Result<EmIdentity> {
    check_interval(a, b)?;
    let delta = (b - a) / (n + 2) as f64;
    let lhs = trapezoid(f, a, b, n, delta) - f.integral(a, b);
    let residual = residual_sum(f, a, n, delta, |x| b2 - x + x * x)?;
    let rhs = b2 * delta * delta * (f.d1(b) - f.d1(a)) / 2.0 - delta * delta * residual;
    Ok(EmIdentity {
        a,
        b,
        n,
        b2,
        delta,
        lhs,
        rhs,
        abs_diff: (lhs - rhs).abs(),
    })
}

/// Bernoulli numbers `B_0..=B_m` (with `B_1 = -1/2`) from
/// `sum_{k<=m} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(m: usize) -> Vec<f64> {
    let mut b = vec![1.0];
    for j in 1..=m {
        let mut binom = 1.0;
        let mut acc = 0.0;
        for (k, bk) in b.iter().enumerate() {
            acc += binom * bk;
            binom = binom * (j + 1 - k) as f64 / (k + 1) as f64;
        }
        b.push(-acc / (j + 1) as f64);
    }
    b
}

/// Bernoulli polynomial `B_m(x) = sum_k C(m, k) B_k x^{m-k}`.
pub fn bernoulli_polynomial(m: usize, x: f64) -> f64 {
    let b = bernoulli_numbers(m);
    let mut binom = 1.0;
    let mut acc = 0.0;
    for (k, bk) in b.iter().enumerate() {
        acc += binom * bk * x.powi((m - k) as i32);
        binom = binom * (m - k) as f64 / (k + 1) as f64;
    }
    acc
}

/// Classical Euler-Maclaurin with `m = 0` on the same cells: predicted
/// trapezoid error `B_2 delta^2 (f'(b) - f'(a))/2 - delta^2 sum_k 1/2 int B_2(t/delta) f''`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmClassical {
    pub b2: f64,
    pub predicted: f64,
    pub actual: f64,
    pub abs_diff: f64,
}

pub fn euler_maclaurin_m0<F: SmoothFunction + ?Sized>(f: &F, a: f64, b: f64, n: u64) -> Result<EmClassical> {
    check_interval(a, b)?;
    let delta = (b - a) / (n + 2) as f64;
    let b2 = bernoulli_numbers(2)[2];
    let residual = residual_sum(f, a, n, delta, |x| bernoulli_polynomial(2, x))?;
    let predicted = b2 * delta * delta * (f.d1(b) - f.d1(a)) / 2.0 - delta * delta * residual;
    let actual = trapezoid(f, a, b, n, delta) - f.integral(a, b);
    Ok(EmClassical {
        b2,
        predicted,
        actual,
        abs_diff: (predicted - actual).abs(),
    })
}

/// Numerical confirmation of the constants behind the one-axis lattice bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmConstantReport {
    /// Minimizing `b2` of `max_{x in [0,1]} |x^2 - x + b2|`.
    pub minmax_b2: f64,
    /// The min-max value itself (1/8).
    pub minmax_value: f64,
    /// `max_x |x^2 - x + 1/6|`.
    pub max_at_bernoulli_b2: f64,
    /// Gaussian slope parameter used for the derivative check.
    pub s: f64,
    /// Numerical `max_x |f'(x)|`.
    pub max_slope: f64,
    /// `s / sqrt(e)`.
    pub max_slope_closed: f64,
    /// `3 minmax max|f'| h^2` at `h = 1`, against `3 s / (8 sqrt e)`.
    pub assembled: f64,
    pub assembled_closed: f64,
    /// `assembled / (h^2 s^2 I_c) * 4` recovered as `eta`.
    pub eta_recovered: f64,
    pub eta: f64,
}

impl EmConstantReport {
    pub fn max_error(&self) -> f64 {
        [
            (self.minmax_value - 0.125).abs(),
            (self.minmax_b2 - 0.125).abs(),
            (self.max_slope - self.max_slope_closed).abs(),
            (self.assembled - self.assembled_closed).abs(),
            (self.eta_recovered - self.eta).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `max_{x in [0,1]} |x^2 - x + b2|` on a grid that contains 0, 1/2 and 1.
fn kernel_sup(b2: f64) -> f64 {
    const POINTS: usize = 4096;
    (0..=POINTS)
        .map(|i| {
            let x = i as f64 / POINTS as f64;
            (x * x - x + b2).abs()
        })
        .fold(0.0, f64::max)
}

pub fn em_bound_constant_check(s: f64) -> Result<EmConstantReport> {
    if !(s > 0.0) {
        return Err(domain(format!("s must be positive, got {s}")));
    }
    let mm = golden_section(kernel_sup, 0.0, 0.25, 1e-12);
    let f = GaussianBump { s, mu: 0.0 };
    // |f'| peaks at x = 1/s; search a window on one side of the mean
    let slope = golden_section(|x| -f.d1(x).abs(), 0.0, 5.0 / s, 1e-12);
    let max_slope = -slope.value;
    let sqrt_e = std::f64::consts::E.sqrt();
    let assembled = 3.0 * mm.value * max_slope;
    let continuous = (2.0 * std::f64::consts::PI).sqrt() / s;
    // relative error per unit h^2 s^2 is assembled / (s^2 I_c); with h^2 = 4/n
    let eta_recovered = 4.0 * assembled / (s * s * continuous);
    Ok(EmConstantReport {
        minmax_b2: mm.x,
        minmax_value: mm.value,
        max_at_bernoulli_b2: kernel_sup(1.0 / 6.0),
        s,
        max_slope,
        max_slope_closed: s / sqrt_e,
        assembled,
        assembled_closed: 3.0 * s / (8.0 * sqrt_e),
        eta_recovered,
        eta: crate::bernoulli::eta(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_numbers_and_polynomial() {
        let b = bernoulli_numbers(4);
        let want = [1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0];
        for (x, y) in b.iter().zip(want) {
            assert!((x - y).abs() < 1e-15);
        }
        for x in [0.0, 0.3, 0.5, 1.0] {
            assert!((bernoulli_polynomial(2, x) - (x * x - x + 1.0 / 6.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn gaussian_derivatives_match_finite_differences() {
        let f = GaussianBump { s: 1.7, mu: 0.3 };
        let h = 1e-5;
        for x in [-1.0, 0.0, 0.5, 2.0] {
            let fd1 = (f.value(x + h) - f.value(x - h)) / (2.0 * h);
            let fd2 = (f.value(x + h) - 2.0 * f.value(x) + f.value(x - h)) / (h * h);
            assert!((f.d1(x) - fd1).abs() < 1e-8);
            assert!((f.d2(x) - fd2).abs() < 1e-4);
        }
    }

    #[test]
    fn linear_is_exact() {
        let f = Polynomial { coeffs: vec![0.0, 1.0] };
        let r = extended_em_identity(&f, 0.0, 1.0, 8, 0.3).unwrap();
        assert!(r.lhs.abs() < 1e-15 && r.rhs.abs() < 1e-15);
    }

    #[test]
    fn quadratic_closed_form() {
        // f = x^2: trapezoid error is delta^2 (b - a) / 6 and f'' = 2
        let f = Polynomial {
            coeffs: vec![0.0, 0.0, 1.0],
        };
        let r = extended_em_identity(&f, 0.0, 2.0, 6, 0.0).unwrap();
        assert!((r.lhs - r.delta * r.delta * 2.0 / 6.0).abs() < 1e-14);
        assert!(r.abs_diff < 1e-13);
    }

    #[test]
    fn identity_for_every_b2() {
        let f = GaussianBump { s: 1.0, mu: 0.0 };
        for b2 in [0.0, 0.125, 1.0 / 6.0, -0.7, 2.0] {
            let r = extended_em_identity(&f, -3.0, 3.0, 32, b2).unwrap();
            assert!(r.abs_diff < 1e-10, "{r:?}");
        }
    }

    #[test]
    fn classical_specialization() {
        let f = GaussianBump { s: 2.0, mu: 0.1 };
        let c = euler_maclaurin_m0(&f, -2.0, 3.0, 20).unwrap();
        let e = extended_em_identity(&f, -2.0, 3.0, 20, 1.0 / 6.0).unwrap();
        assert_eq!(c.b2, 1.0 / 6.0);
        assert!(c.abs_diff < 1e-10);
        assert!((c.predicted - e.rhs).abs() < 1e-13);
        assert!((c.actual - e.lhs).abs() < 1e-15);
    }

    #[test]
    fn constants() {
        let r = em_bound_constant_check(2.0).unwrap();
        assert!((r.minmax_value - 0.125).abs() < 1e-9, "{r:?}");
        assert!((r.max_at_bernoulli_b2 - 1.0 / 6.0).abs() < 1e-15);
        assert!((r.max_slope - 1.213_06).abs() < 1e-5);
        assert!(r.max_error() < 1e-9, "{r:?}");
        assert!(em_bound_constant_check(0.0).is_err());
    }
}

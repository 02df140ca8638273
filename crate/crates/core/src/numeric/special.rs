use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// `ln(n!)` via the log-gamma function.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    libm::lgamma(n as f64 + 1.0)
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if k == 0 || k == n {
        return 0.0;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// `ln(e^a + e^b)` without overflow.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(sum_i e^{x_i})`; `-inf` for an empty iterator.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let xs: Vec<f64> = values.into_iter().collect();
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// `int_a^b exp(-s^2 (x - mu)^2 / 2) dx` in closed form.
///
/// Works with `erfc` on whichever side keeps both arguments in the same
/// tail, so the difference does not cancel catastrophically.
pub fn gaussian_integral(s: f64, mu: f64, a: f64, b: f64) -> f64 {
    let scale = (PI / 2.0).sqrt() / s;
    let za = s * (a - mu) * FRAC_1_SQRT_2;
    let zb = s * (b - mu) * FRAC_1_SQRT_2;
    let diff = if za >= 0.0 {
        libm::erfc(za) - libm::erfc(zb)
    } else if zb <= 0.0 {
        libm::erfc(-zb) - libm::erfc(-za)
    } else {
        libm::erf(zb) - libm::erf(za)
    };
    scale * diff
}

use crate::error::{Error, Result};

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 60;
/// Cap on subintervals per call, so a noisy integrand fails instead of
/// bisecting exponentially.
const MAX_INTERVALS: u32 = 1 << 18;

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kron * half, (kron - gauss).abs() * half)
}

fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32, budget: &mut u32) -> Result<f64> {
    let (value, err) = kronrod(f, a, b);
    if err <= tol || err <= 1e-15 * value.abs() {
        return Ok(value);
    }
    if depth >= MAX_DEPTH || *budget == 0 {
        return Err(Error::Quadrature(format!(
            "[{a}, {b}]: error estimate {err:e} above {tol:e} at depth {depth}"
        )));
    }
    *budget -= 1;
    let mid = 0.5 * (a + b);
    Ok(recurse(f, a, mid, 0.5 * tol, depth + 1, budget)? + recurse(f, mid, b, 0.5 * tol, depth + 1, budget)?)
}

/// Adaptive Gauss-Kronrod quadrature of `f` over `[a, b]` to absolute
/// tolerance `tol` (bisection on the 7/15-point error estimate).
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut budget = MAX_INTERVALS;
    recurse(&f, a, b, tol, 0, &mut budget)
}

/// Integral over the real line of a function with Gaussian decay around
/// `center` on length scale `scale`; integrates `center +- 40 scale`.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, center: f64, scale: f64, tol: f64) -> Result<f64> {
    const PIECES: usize = 16;
    let lo = center - 40.0 * scale;
    let width = 80.0 * scale / PIECES as f64;
    (0..PIECES).try_fold(0.0, |acc, i| {
        let a = lo + width * i as f64;
        Ok(acc + integrate_adaptive(&f, a, a + width, tol / PIECES as f64)?)
    })
}

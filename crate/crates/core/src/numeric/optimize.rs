/// Location and value of a one-dimensional minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol`. Converges to a local
/// minimum; unimodality on the bracket makes it global.
pub fn golden_section<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let tol = tol.max(f64::EPSILON * (a.abs() + b.abs()));
    // each step shrinks the bracket by INV_PHI; 400 covers any f64 range
    for _ in 0..400 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        Minimum { x: c, value: fc }
    } else {
        Minimum { x: d, value: fd }
    }
}

/// Coarse grid scan on `[lo, hi]` (endpoints included) followed by
/// golden-section refinement around the best grid point.
///
/// The returned value never exceeds the smallest grid value, so it is at
/// most the value at either endpoint.
pub fn grid_then_golden<F>(mut f: F, lo: f64, hi: f64, grid_points: usize, tol: f64) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let points = grid_points.max(2);
    if hi <= lo {
        return Minimum { x: lo, value: f(lo) };
    }
    let step = (hi - lo) / (points - 1) as f64;
    let at = |i: usize| if i == points - 1 { hi } else { lo + step * i as f64 };
    let mut best = Minimum {
        x: lo,
        value: f64::INFINITY,
    };
    let mut best_i = 0;
    for i in 0..points {
        let x = at(i);
        let v = f(x);
        if v < best.value {
            best = Minimum { x, value: v };
            best_i = i;
        }
    }
    let left = at(best_i.saturating_sub(1));
    let right = at((best_i + 1).min(points - 1));
    let refined = golden_section(&mut f, left, right, tol);
    if refined.value < best.value {
        refined
    } else {
        best
    }
}

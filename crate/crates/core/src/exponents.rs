//! Error-exponent machinery for Gaussian dictionaries.
//!
//! All probability bounds are carried as natural logarithms; `n D` routinely
//! exceeds the range of `f64` when exponentiated.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::{grid_then_golden, ln_binomial, log_sum_exp};
use crate::params::{c_alpha, capacity};

/// Grid size of the coarse scan over `t_alpha`.
pub const T_GRID_POINTS: usize = 1024;
/// Golden-section tolerance relative to the `t_alpha` interval length.
pub const T_RELATIVE_TOL: f64 = 1e-9;

/// `g(x) = sqrt(1 + 4x^2) - 1`.
pub fn g_fn(x: f64) -> f64 {
    // (1 + 4x^2) - 1 over sqrt(1 + 4x^2) + 1, exact for small x
    let q = 4.0 * x * x;
    q / ((1.0 + q).sqrt() + 1.0)
}

/// `w_v = v / (4 (1+v)^2 sqrt(1 + v^3 / (4 (1+v))))`.
pub fn w_v_fn(v: f64) -> f64 {
    v / (4.0 * (1.0 + v).powi(2) * (1.0 + 0.25 * v.powi(3) / (1.0 + v)).sqrt())
}

/// `h(alpha, delta) = min{alpha w_v delta, g(delta / (2 sqrt v)) / 4}`.
pub fn h_fn(alpha: f64, delta: f64, v: f64) -> f64 {
    let linear = alpha * w_v_fn(v) * delta;
    let quadratic = 0.25 * g_fn(delta / (2.0 * v.sqrt()));
    linear.min(quadratic)
}

/// `1 - rho_1^2` and `1 - rho_2^2` at section error rate `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoTerms {
    /// `alpha (1 - alpha) v / (1 + alpha v)`
    pub one_minus_rho1sq: f64,
    /// `alpha^2 v / (1 + alpha^2 v)`
    pub one_minus_rho2sq: f64,
}

pub fn rho_terms(alpha: f64, v: f64) -> Result<RhoTerms> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(domain(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    if !(v > 0.0) {
        return Err(domain(format!("SNR must be positive, got {v}")));
    }
    let a2v = alpha * alpha * v;
    Ok(RhoTerms {
        one_minus_rho1sq: alpha * (1.0 - alpha) * v / (1.0 + alpha * v),
        one_minus_rho2sq: a2v / (1.0 + a2v),
    })
}

/// Value and argmax of `lambda delta + 0.5 ln(1 - lambda^2 c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Maximizer {
    pub value: f64,
    pub lambda: f64,
}

fn exponent_objective(lambda: f64, delta: f64, c: f64) -> f64 {
    lambda * delta + 0.5 * (-lambda * lambda * c).ln_1p()
}

fn check_exponent_args(delta: f64, c: f64) -> Result<()> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(domain(format!("exponent slack must be finite and >= 0, got {delta}")));
    }
    if !(0.0..1.0).contains(&c) {
        return Err(domain(format!("1 - rho^2 must lie in [0, 1), got {c}")));
    }
    Ok(())
}

/// Stationary point `(-1 + sqrt(1 + 4 delta^2 / c)) / (2 delta)`, written
/// without the cancellation at small `delta`.
fn unconstrained_lambda(delta: f64, c: f64) -> f64 {
    let x = 4.0 * delta * delta / c;
    2.0 * delta / (c * (1.0 + (1.0 + x).sqrt()))
}

/// `D(delta, c) = max_{lambda >= 0} {lambda delta + 0.5 ln(1 - lambda^2 c)}`.
///
/// For `c = 0` and `delta > 0` the objective is linear in `lambda` and the
/// supremum is infinite; that case is reported as [`Error::Unbounded`].
pub fn d_max(delta: f64, c: f64) -> Result<Maximizer> {
    check_exponent_args(delta, c)?;
    if delta == 0.0 {
        return Ok(Maximizer {
            value: 0.0,
            lambda: 0.0,
        });
    }
    if c == 0.0 {
        return Err(Error::Unbounded(format!(
            "D({delta}, 0): objective is linear in lambda"
        )));
    }
    let lambda = unconstrained_lambda(delta, c);
    Ok(Maximizer {
        value: exponent_objective(lambda, delta, c).max(0.0),
        lambda,
    })
}

/// `D_1(delta, c)`: the same maximum restricted to `0 <= lambda <= 1`.
pub fn d1_max(delta: f64, c: f64) -> Result<Maximizer> {
    check_exponent_args(delta, c)?;
    if delta == 0.0 {
        return Ok(Maximizer {
            value: 0.0,
            lambda: 0.0,
        });
    }
    let lambda = if c == 0.0 {
        1.0
    } else {
        unconstrained_lambda(delta, c).min(1.0)
    };
    Ok(Maximizer {
        value: exponent_objective(lambda, delta, c).max(0.0),
        lambda,
    })
}

/// Smallest section size rate making the `err_Gauss` first term decay:
/// the maximum over `alpha in {1/L, ..., 1 - 1/L}` of
/// `R ln C(L, alpha L) / (D_1(C_alpha - alpha C, 1 - rho_1^2) L ln L)`.
pub fn a_vl(v: f64, sections: usize, rate: f64) -> Result<f64> {
    if sections < 3 {
        return Err(domain(format!("a_vL needs L >= 3, got {sections}")));
    }
    if !(rate > 0.0) {
        return Err(domain(format!("rate must be positive, got {rate}")));
    }
    let cap = capacity(v)?;
    let l_total = sections as f64;
    let mut best = f64::NEG_INFINITY;
    for l in 1..sections {
        let alpha = l as f64 / l_total;
        let rho = rho_terms(alpha, v)?;
        let d1 = d1_max(c_alpha(alpha, v)? - alpha * cap, rho.one_minus_rho1sq)?.value;
        if !(d1 > 0.0) {
            return Err(domain(format!("D_1 vanishes at interior alpha = {alpha}")));
        }
        let ratio = rate * ln_binomial(sections as u64, l as u64) / (d1 * l_total * l_total.ln());
        best = best.max(ratio);
    }
    Ok(best)
}

/// One evaluation point of an `err` bound: section error rate `alpha = l/L`
/// at slack split `t_alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentQuery {
    pub alpha: f64,
    pub v: f64,
    pub rate: f64,
    pub sections: usize,
    pub code_length: usize,
    pub t_alpha: f64,
}

impl ExponentQuery {
    pub fn new(alpha: f64, v: f64, rate: f64, sections: usize, code_length: usize, t_alpha: f64) -> Result<Self> {
        let q = Self {
            alpha,
            v,
            rate,
            sections,
            code_length,
            t_alpha,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(domain(format!("alpha must lie in (0, 1], got {}", self.alpha)));
        }
        let cap = capacity(self.v)?;
        if !(self.rate > 0.0 && self.rate < cap) {
            return Err(domain(format!("rate {} must lie in (0, C) with C = {cap}", self.rate)));
        }
        if self.code_length == 0 || self.sections == 0 {
            return Err(domain("code length and section count must be positive"));
        }
        self.mistakes()?;
        if !(self.t_alpha >= 0.0) {
            return Err(domain(format!("t_alpha must be >= 0, got {}", self.t_alpha)));
        }
        Ok(())
    }

    /// `l = alpha L`, which must be an integer.
    pub fn mistakes(&self) -> Result<u64> {
        let l = self.alpha * self.sections as f64;
        if (l - l.round()).abs() > 1e-9 {
            return Err(domain(format!("alpha L = {l} is not an integer")));
        }
        Ok(l.round() as u64)
    }

    /// `C_alpha - alpha R`, the upper end of the `t_alpha` interval.
    pub fn slack(&self) -> Result<f64> {
        Ok(c_alpha(self.alpha, self.v)? - self.alpha * self.rate)
    }

    /// `Delta_alpha = C_alpha - alpha R - t_alpha`.
    pub fn delta(&self) -> Result<f64> {
        Ok(self.slack()? - self.t_alpha)
    }

    pub fn with_t(&self, t_alpha: f64) -> Self {
        Self { t_alpha, ..*self }
    }
}

/// A two-term `err` bound in the log domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrBound {
    /// `ln C(L, l) - n (D_1(Delta_alpha, 1 - rho_1^2) - penalty_1)`
    pub ln_first: f64,
    /// `-n (D(t_alpha, 1 - rho_2^2) - penalty_2)`
    pub ln_second: f64,
    /// `ln(e^{ln_first} + e^{ln_second})`
    pub ln_raw: f64,
}

impl ErrBound {
    pub(crate) fn from_terms(ln_first: f64, ln_second: f64) -> Self {
        Self {
            ln_first,
            ln_second,
            ln_raw: crate::numeric::log_add_exp(ln_first, ln_second),
        }
    }

    /// The bound as a probability, clipped to `[0, 1]`.
    pub fn clipped(&self) -> f64 {
        self.ln_raw.min(0.0).exp()
    }
}

/// Penalized two-term bound shared by the Gaussian and Bernoulli forms.
pub(crate) fn err_with_penalties(q: &ExponentQuery, penalty1: f64, penalty2: f64) -> Result<ErrBound> {
    q.validate()?;
    let delta = q.delta()?;
    if delta < 0.0 {
        return Err(domain(format!(
            "Delta_alpha = {delta:e} < 0: t_alpha = {} exceeds C_alpha - alpha R",
            q.t_alpha
        )));
    }
    let rho = rho_terms(q.alpha, q.v)?;
    let n = q.code_length as f64;
    let l = q.mistakes()?;
    let d1 = d1_max(delta, rho.one_minus_rho1sq)?.value;
    let d = d_max(q.t_alpha, rho.one_minus_rho2sq)?.value;
    let ln_first = ln_binomial(q.sections as u64, l) - n * (d1 - penalty1);
    let ln_second = -n * (d - penalty2);
    Ok(ErrBound::from_terms(ln_first, ln_second))
}

/// `err_Gauss(alpha) = C(L, alpha L) e^{-n D_1(Delta_alpha, 1 - rho_1^2)} + e^{-n D(t_alpha, 1 - rho_2^2)}`.
pub fn err_gauss(q: &ExponentQuery) -> Result<ErrBound> {
    err_with_penalties(q, 0.0, 0.0)
}

/// Minimizer of an `err` bound over `t_alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TMinimum {
    pub t_star: f64,
    pub bound: ErrBound,
}

/// Minimizes `err_fn` over `t_alpha in [0, C_alpha - alpha R]`: a
/// 1024-point grid, then golden-section refinement around the best grid
/// point to `interval * 1e-9`.
///
/// A negative interval length yields [`Error::NoSlack`]; callers treat
/// `Pr[E_l]` as bounded by 1 there.
pub fn minimize_over_t<F>(
    alpha: f64,
    v: f64,
    rate: f64,
    sections: usize,
    code_length: usize,
    err_fn: F,
) -> Result<TMinimum>
where
    F: Fn(&ExponentQuery) -> Result<ErrBound>,
{
    let base = ExponentQuery {
        alpha,
        v,
        rate,
        sections,
        code_length,
        t_alpha: 0.0,
    };
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    let slack = base.slack()?;
    if slack < 0.0 {
        return Err(Error::NoSlack { alpha, slack });
    }
    // validate once so that errors inside the search are impossible
    err_fn(&base)?;
    let objective = |t: f64| err_fn(&base.with_t(t.clamp(0.0, slack))).map_or(f64::INFINITY, |b| b.ln_raw);
    let best = grid_then_golden(objective, 0.0, slack, T_GRID_POINTS, slack * T_RELATIVE_TOL);
    let t_star = best.x.clamp(0.0, slack);
    Ok(TMinimum {
        t_star,
        bound: err_fn(&base.with_t(t_star))?,
    })
}

/// Per-`l` entry of a summed theorem bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionBound {
    pub mistakes: usize,
    pub alpha: f64,
    pub c_alpha: f64,
    /// `C_alpha - alpha R`
    pub slack: f64,
    pub t_star: f64,
    pub ln_bound: f64,
    /// `min(1, e^{ln_bound})`
    pub bound: f64,
}

/// Theorem-level lower bound on the exponent together with the summed
/// per-`l` form `sum_{l >= alpha0 L} min_t err(l/L)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremBound {
    /// `h(alpha0, C - R) - ln(2L)/n`, minus `iota(L)` for Bernoulli dictionaries.
    pub exponent_lower: f64,
    /// `-n * exponent_lower`
    pub ln_prob_raw: f64,
    /// `min(1, e^{-n E})`
    pub prob_bound: f64,
    pub per_section: Vec<SectionBound>,
    /// `ln sum_l e^{ln_bound_l}` before any clipping.
    pub ln_summed_raw: f64,
    /// `min(1, sum_l min(1, bound_l))`
    pub summed_bound: f64,
}

impl TheoremBound {
    pub fn is_vacuous(&self) -> bool {
        self.ln_prob_raw >= 0.0
    }
}

/// Smallest `l` with `l >= alpha0 L`.
pub fn first_counted_mistake(alpha0: f64, sections: usize) -> usize {
    let x = alpha0 * sections as f64;
    ((x - 1e-9).ceil() as usize).max(1)
}

pub(crate) fn check_theorem_args(alpha0: f64, v: f64, rate: f64, sections: usize, code_length: usize) -> Result<f64> {
    if !(alpha0 > 0.0 && alpha0 <= 1.0) {
        return Err(domain(format!("alpha0 must lie in (0, 1], got {alpha0}")));
    }
    let cap = capacity(v)?;
    if !(rate > 0.0) || rate >= cap {
        return Err(domain(format!("rate {rate} must lie in (0, C) with C = {cap}")));
    }
    if sections < 1 || code_length < 1 {
        return Err(domain("L and n must be positive"));
    }
    Ok(cap)
}

pub(crate) fn summed_bound<F>(
    alpha0: f64,
    v: f64,
    rate: f64,
    sections: usize,
    code_length: usize,
    err_fn: F,
) -> Result<(Vec<SectionBound>, f64, f64)>
where
    F: Fn(&ExponentQuery) -> Result<ErrBound> + Sync,
{
    use rayon::prelude::*;
    let per_section = (first_counted_mistake(alpha0, sections)..=sections)
        .into_par_iter()
        .map(|l| {
            let alpha = l as f64 / sections as f64;
            let c_a = c_alpha(alpha, v)?;
            let slack = c_a - alpha * rate;
            let (t_star, ln_bound) = match minimize_over_t(alpha, v, rate, sections, code_length, &err_fn) {
                Ok(m) => (m.t_star, m.bound.ln_raw),
                Err(Error::NoSlack { .. }) => (0.0, 0.0),
                Err(e) => return Err(e),
            };
            Ok(SectionBound {
                mistakes: l,
                alpha,
                c_alpha: c_a,
                slack,
                t_star,
                ln_bound,
                bound: ln_bound.min(0.0).exp(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ln_raw = log_sum_exp(per_section.iter().map(|s| s.ln_bound));
    let clipped = per_section.iter().map(|s| s.bound).sum::<f64>().min(1.0);
    Ok((per_section, ln_raw, clipped))
}

/// Gaussian-dictionary theorem bound:
/// `E >= h(alpha0, C - R) - ln(2L)/n`, plus the summed per-`l` form.
pub fn gauss_theorem_bound(
    alpha0: f64,
    v: f64,
    rate: f64,
    sections: usize,
    code_length: usize,
) -> Result<TheoremBound> {
    let cap = check_theorem_args(alpha0, v, rate, sections, code_length)?;
    let n = code_length as f64;
    let exponent_lower = h_fn(alpha0, cap - rate, v) - (2.0 * sections as f64).ln() / n;
    let (per_section, ln_summed_raw, summed) = summed_bound(alpha0, v, rate, sections, code_length, err_gauss)?;
    let ln_prob_raw = -n * exponent_lower;
    Ok(TheoremBound {
        exponent_lower,
        ln_prob_raw,
        prob_bound: ln_prob_raw.min(0.0).exp(),
        per_section,
        ln_summed_raw,
        summed_bound: summed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dense-grid argmax of the exponent objective on `[0, upper)`.
    fn grid_argmax(delta: f64, c: f64, upper: f64, step: f64) -> (f64, f64) {
        let mut best = (f64::NEG_INFINITY, 0.0);
        let steps = (upper / step).round() as usize;
        for i in 0..=steps {
            let lambda = upper * i as f64 / steps as f64;
            if lambda * lambda * c < 1.0 {
                let v = exponent_objective(lambda, delta, c);
                if v > best.0 {
                    best = (v, lambda);
                }
            }
        }
        best
    }

    #[test]
    fn g_values_and_lower_bound() {
        assert_eq!(g_fn(0.0), 0.0);
        assert!((g_fn(0.5) - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        for i in 0..=10_000 {
            let x = i as f64 * 1e-3;
            assert!(g_fn(x) >= (2f64.sqrt() * x).min(x * x) - 1e-15, "x = {x}");
        }
    }

    #[test]
    fn w_v_values() {
        assert!((w_v_fn(1.0) - 1.0 / (16.0 * 1.125f64.sqrt())).abs() < 1e-15);
        assert!((w_v_fn(1.0) - 0.058_925_6).abs() < 1e-7);
        // small-v asymptote v/4
        assert!((w_v_fn(0.001) / 0.00025 - 1.0).abs() < 0.005);
        // 15 / (1024 sqrt(1 + 3375/64)) computed by hand: 0.0019983
        assert!((w_v_fn(15.0) - 0.001_998_3).abs() < 1e-7);
    }

    #[test]
    fn h_branches() {
        assert_eq!(h_fn(0.3, 0.0, 2.0), 0.0);
        let v = 3.0;
        for i in 1..200 {
            let d = i as f64 * 0.01;
            let lin = w_v_fn(v) * d;
            let quad = 0.25 * g_fn(d / (2.0 * v.sqrt()));
            let h = h_fn(1.0, d, v);
            if lin <= quad {
                assert_eq!(h, lin);
            } else {
                assert_eq!(h, quad);
            }
        }
        let mut prev = 0.0;
        for i in 0..1000 {
            let h = h_fn(0.4, i as f64 * 0.02, 7.0);
            assert!(h >= prev);
            prev = h;
        }
    }

    #[test]
    fn rho_values() {
        let r = rho_terms(1.0, 5.0).unwrap();
        assert_eq!(r.one_minus_rho1sq, 0.0);
        let r = rho_terms(0.0, 5.0).unwrap();
        assert_eq!((r.one_minus_rho1sq, r.one_minus_rho2sq), (0.0, 0.0));
        let r = rho_terms(0.5, 3.0).unwrap();
        assert!((r.one_minus_rho1sq - 0.3).abs() < 1e-15);
        assert!((r.one_minus_rho2sq - 0.75 / 1.75).abs() < 1e-15);
        assert!(rho_terms(1.5, 3.0).is_err());
    }

    #[test]
    fn d_max_examples() {
        assert_eq!(
            d_max(0.0, 0.4).unwrap(),
            Maximizer {
                value: 0.0,
                lambda: 0.0
            }
        );
        let m = d_max(0.1, 0.5).unwrap();
        assert!((m.lambda - 0.196_152).abs() < 1e-6);
        assert!((m.value - 0.009_902).abs() < 1e-6);
        let (gv, gl) = grid_argmax(0.1, 0.5, 1.4, 1e-6);
        assert!((m.value - gv).abs() < 1e-10 && (m.lambda - gl).abs() < 2e-6);
        assert!(matches!(d_max(0.1, 0.0), Err(Error::Unbounded(_))));
        assert_eq!(d_max(0.0, 0.0).unwrap().value, 0.0);
        assert!(d_max(0.1, 1.0).is_err());
        assert!(d_max(-0.1, 0.5).is_err());
    }

    #[test]
    fn d1_examples() {
        assert_eq!(d1_max(0.0, 0.3).unwrap().value, 0.0);
        let m = d1_max(2.0, 0.5).unwrap();
        assert_eq!(m.lambda, 1.0);
        assert!((m.value - (2.0 + 0.5 * 0.5f64.ln())).abs() < 1e-15);
        assert!((m.value - 1.653_426).abs() < 1e-6);
        let (gv, _) = grid_argmax(2.0, 0.5, 1.0, 1e-6);
        assert!((m.value - gv).abs() < 1e-8);
        // unclamped regime agrees with D
        let (d, d1) = (d_max(0.1, 0.5).unwrap(), d1_max(0.1, 0.5).unwrap());
        assert_eq!(d, d1);
        assert_eq!(d1_max(0.7, 0.0).unwrap().value, 0.7);
        assert!(d1_max(0.1, 1.0).is_err());
    }

    #[test]
    fn a_vl_three_sections() {
        // independent two-term maximum with C(3,1) = C(3,2) = 3
        let v = 3.0;
        let cap = capacity(v).unwrap();
        let rate = 0.5 * cap;
        let term = |alpha: f64| {
            let ca = 0.5 * (1.0 + alpha * v).ln();
            let c1 = alpha * (1.0 - alpha) * v / (1.0 + alpha * v);
            let (d1, _) = grid_argmax(ca - alpha * cap, c1, 1.0, 1e-7);
            rate * 3f64.ln() / (d1 * 3.0 * 3f64.ln())
        };
        let want = term(1.0 / 3.0).max(term(2.0 / 3.0));
        let got = a_vl(v, 3, rate).unwrap();
        assert!((got - want).abs() < 1e-6 * want, "{got} vs {want}");
        assert!(a_vl(v, 2, rate).is_err());
    }

    #[test]
    fn a_vl_linear_in_rate() {
        let a = a_vl(15.0, 20, 0.4).unwrap();
        let b = a_vl(15.0, 20, 0.8).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-12 * b);
    }

    #[test]
    fn a_vl_bounded_in_l() {
        let vals: Vec<f64> = [10, 100, 1000, 10_000]
            .iter()
            .map(|&l| a_vl(15.0, l, 0.5).unwrap())
            .collect();
        assert!(vals.iter().all(|v| v.is_finite() && *v > 0.0 && *v < 100.0), "{vals:?}");
    }

    fn query(t: f64) -> ExponentQuery {
        let v = 15.0;
        let rate = 0.6 * capacity(v).unwrap();
        ExponentQuery::new(0.5, v, rate, 10, 100, t).unwrap()
    }

    #[test]
    fn err_gauss_endpoints() {
        let q = query(0.0);
        let slack = q.slack().unwrap();
        // t = slack: Delta = 0, first term is the binomial coefficient alone
        let b = err_gauss(&q.with_t(slack)).unwrap();
        assert!((b.ln_first - 252f64.ln()).abs() < 1e-12);
        // t = 0: second term is exactly 1
        let b = err_gauss(&q).unwrap();
        assert_eq!(b.ln_second, 0.0);
        assert_eq!(b.clipped(), 1.0);
        assert!(err_gauss(&q.with_t(slack * 1.01)).is_err());
    }

    #[test]
    fn err_gauss_interior_composition() {
        let q = query(0.0);
        let t = 0.4 * q.slack().unwrap();
        let b = err_gauss(&q.with_t(t)).unwrap();
        // recompose with grid-argmax exponents
        let c1 = 0.5 * 0.5 * 15.0 / (1.0 + 0.5 * 15.0);
        let c2 = 0.25 * 15.0 / (1.0 + 0.25 * 15.0);
        let delta = q.slack().unwrap() - t;
        let (d1, _) = grid_argmax(delta, c1, 1.0, 1e-7);
        let (d, _) = grid_argmax(t, c2, 1.0 / c2.sqrt(), 1e-7);
        let want = (252f64.ln() - 100.0 * d1).exp() + (-100.0 * d).exp();
        assert!(
            (b.ln_raw.exp() - want).abs() < 1e-6 * want,
            "{} vs {want}",
            b.ln_raw.exp()
        );
    }

    #[test]
    fn t_minimization() {
        let v = 15.0;
        let rate = 0.6 * capacity(v).unwrap();
        let m = minimize_over_t(0.5, v, rate, 10, 100, err_gauss).unwrap();
        let q = query(0.0);
        let slack = q.slack().unwrap();
        let at = |t: f64| err_gauss(&q.with_t(t)).unwrap().ln_raw;
        assert!(m.bound.ln_raw <= at(0.0) && m.bound.ln_raw <= at(slack));
        // dense verification grid
        let dense = (0..=100_000)
            .map(|i| at(slack * i as f64 / 100_000.0))
            .fold(f64::INFINITY, f64::min);
        assert!(m.bound.ln_raw <= dense + 1e-9);
    }

    #[test]
    fn t_minimization_monotone_in_n() {
        let v = 15.0;
        let rate = 0.6 * capacity(v).unwrap();
        let vals: Vec<f64> = [50, 100, 200]
            .iter()
            .map(|&n| minimize_over_t(0.5, v, rate, 10, n, err_gauss).unwrap().bound.ln_raw)
            .collect();
        assert!(vals[0] >= vals[1] && vals[1] >= vals[2], "{vals:?}");
    }

    #[test]
    fn degenerate_and_empty_intervals() {
        // ten sections at alpha = 0.5 leave slack 0 when R = C_alpha / alpha
        let v = 3.0;
        let alpha = 0.5;
        let rate = c_alpha(alpha, v).unwrap() / alpha;
        // this rate is above capacity, so query the error function directly
        let zero_slack = |q: &ExponentQuery| {
            let _ = q;
            Ok(ErrBound::from_terms(0.0, 0.0))
        };
        let m = minimize_over_t(alpha, v, rate, 10, 50, zero_slack).unwrap();
        assert_eq!(m.t_star, 0.0);
        assert!((m.bound.ln_raw - 2f64.ln()).abs() < 1e-15);
        assert_eq!(m.bound.clipped(), 1.0);
        let err = minimize_over_t(alpha, v, rate * 1.1, 10, 50, zero_slack).unwrap_err();
        assert!(matches!(err, Error::NoSlack { .. }));
    }

    #[test]
    fn theorem_bound_properties() {
        let v = 15.0;
        let cap = capacity(v).unwrap();
        let rate = 0.5 * cap;
        let tb = gauss_theorem_bound(0.2, v, rate, 10, 50).unwrap();
        let h = h_fn(0.2, cap - rate, v);
        assert!((tb.exponent_lower - (h - 20f64.ln() / 50.0)).abs() < 1e-15);
        // h is tiny at this size: vacuous
        assert!(tb.exponent_lower < 0.0 && tb.prob_bound == 1.0 && tb.is_vacuous());
        let k = tb.per_section.len() as f64;
        assert_eq!(tb.per_section.first().unwrap().mistakes, 2);
        let max = tb.per_section.iter().map(|s| s.bound).fold(0.0, f64::max);
        assert!(tb.summed_bound <= k * max + 1e-15);

        let far = gauss_theorem_bound(0.2, v, rate, 10, 1_000_000).unwrap();
        assert!((far.exponent_lower - h).abs() < 1e-5);
        assert!(gauss_theorem_bound(0.2, v, cap, 10, 50).is_err());
    }
}

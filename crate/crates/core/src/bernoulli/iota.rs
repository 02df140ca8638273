use serde::{Deserialize, Serialize};

use super::phi::PhiTable;
use crate::error::{domain, Result};
use crate::exponents::{
    check_theorem_args, err_with_penalties, first_counted_mistake, h_fn, summed_bound, ErrBound, ExponentQuery,
    TheoremBound,
};

/// `eta = sqrt(9 / (8 pi e))`, the discretization constant of the
/// lattice-sum bounds.
pub fn eta() -> f64 {
    (9.0 / (8.0 * std::f64::consts::PI * std::f64::consts::E)).sqrt()
}

/// Penalty terms separating the Bernoulli-dictionary exponent from the
/// Gaussian one, for one `(L, alpha0, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IotaBreakdown {
    pub sections: usize,
    pub alpha0: f64,
    pub v: f64,
    pub eta: f64,
    pub iota3: f64,
    pub iota4: f64,
    pub iota5: f64,
    /// `ln((1 + iota3)(1 + max{iota4, iota5}))`
    pub iota1: f64,
    /// `phi(L) + ln(1 + 2 eta / L)`
    pub iota2: f64,
    /// `max{iota1, iota2}`
    pub iota: f64,
    /// `phi(L)`
    pub phi_l: f64,
    /// The `iota4` range `[ceil(alpha0 L), floor(L - sqrt L)]` was empty
    /// and `iota4` was set to 0.
    pub iota4_range_empty: bool,
}

fn ceil_sqrt(n: usize) -> usize {
    let s = n.isqrt();
    if s * s == n {
        s
    } else {
        s + 1
    }
}

/// Largest value of `f(l) - 1` over the inclusive integer range; `None`
/// when the range is empty.
fn range_max<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: F) -> Option<f64> {
    (lo <= hi).then(|| (lo..=hi).map(&f).fold(f64::NEG_INFINITY, f64::max) - 1.0)
}

/// Computes `iota_1 ... iota_5` as exact maxima over integer `l`.
///
/// Range endpoints: `alpha0 L` rounds up, `L - sqrt L` rounds down as the
/// upper end of the `iota4` range and up as the lower end of the `iota5`
/// range.
pub fn iota_breakdown(sections: usize, alpha0: f64, v: f64) -> Result<IotaBreakdown> {
    iota_breakdown_with(&PhiTable::shared(sections as u64), sections, alpha0, v)
}

/// [`iota_breakdown`] against an explicit `phi` table covering `L`.
pub fn iota_breakdown_with(table: &PhiTable, sections: usize, alpha0: f64, v: f64) -> Result<IotaBreakdown> {
    if sections < 2 {
        return Err(domain(format!("iota needs L >= 2, got {sections}")));
    }
    if !(alpha0 > 0.0 && alpha0 <= 1.0) {
        return Err(domain(format!("alpha0 must lie in (0, 1], got {alpha0}")));
    }
    if !(v > 0.0) {
        return Err(domain(format!("SNR must be positive, got {v}")));
    }
    if table.lmax() < sections as u64 {
        return Err(domain(format!("phi table stops at {} < L = {sections}", table.lmax())));
    }
    let eta = eta();
    let big_l = sections;
    let lf = big_l as f64;
    let phi = |l: usize| table.phi(l as u64);
    let first = first_counted_mistake(alpha0, big_l);

    let iota3 = range_max(first, big_l, |l| phi(l).exp() * (1.0 + eta * (1.0 + v) / l as f64)).expect("alpha0 L <= L");

    let upper4 = big_l - ceil_sqrt(big_l);
    let iota4 = range_max(first, upper4, |l| {
        let rest = big_l - l;
        (phi(l) + phi(rest)).exp() * (1.0 + eta / l as f64) * (1.0 + eta / rest as f64)
    });
    let iota4_range_empty = iota4.is_none();
    if iota4_range_empty {
        log::warn!("iota4 range [{first}, {upper4}] is empty at L = {big_l}; iota4 set to 0");
    }
    let iota4 = iota4.unwrap_or(0.0);

    let lower5 = big_l - big_l.isqrt();
    let denom = (1.0 - 1.0 / lf.sqrt()).sqrt();
    let iota5 = range_max(lower5, big_l - 1, |l| phi(l).exp() / denom * (1.0 + eta / l as f64))
        .expect("L - sqrt L <= L - 1 for L >= 2");

    let iota1 = ((1.0 + iota3) * (1.0 + iota4.max(iota5))).ln();
    let phi_l = phi(big_l);
    let iota2 = phi_l + (2.0 * eta / lf).ln_1p();
    Ok(IotaBreakdown {
        sections,
        alpha0,
        v,
        eta,
        iota3,
        iota4,
        iota5,
        iota1,
        iota2,
        iota: iota1.max(iota2),
        phi_l,
        iota4_range_empty,
    })
}

/// `err_Ber(alpha)`: the Gaussian two-term bound with the exponents
/// reduced by `iota1` and `iota2`.
pub fn err_ber(q: &ExponentQuery, iotas: &IotaBreakdown) -> Result<ErrBound> {
    if iotas.sections != q.sections {
        return Err(domain(format!(
            "iota computed for L = {}, query has L = {}",
            iotas.sections, q.sections
        )));
    }
    err_with_penalties(q, iotas.iota1, iotas.iota2)
}

/// Bernoulli-dictionary theorem bound and the penalties that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BerTheoremBound {
    pub bound: TheoremBound,
    pub iotas: IotaBreakdown,
}

/// `E >= h(alpha0, C - R) - ln(2L)/n - iota(L)`, plus the summed form over
/// `l >= alpha0 L` of `min_t err_Ber`.
pub fn ber_theorem_bound(
    alpha0: f64,
    v: f64,
    rate: f64,
    sections: usize,
    code_length: usize,
) -> Result<BerTheoremBound> {
    let cap = check_theorem_args(alpha0, v, rate, sections, code_length)?;
    let iotas = iota_breakdown(sections, alpha0, v)?;
    let n = code_length as f64;
    let exponent_lower = h_fn(alpha0, cap - rate, v) - (2.0 * sections as f64).ln() / n - iotas.iota;
    let (per_section, ln_summed_raw, summed) =
        summed_bound(alpha0, v, rate, sections, code_length, |q| err_ber(q, &iotas))?;
    let ln_prob_raw = -n * exponent_lower;
    Ok(BerTheoremBound {
        bound: TheoremBound {
            exponent_lower,
            ln_prob_raw,
            prob_bound: ln_prob_raw.min(0.0).exp(),
            per_section,
            ln_summed_raw,
            summed_bound: summed,
        },
        iotas,
    })
}

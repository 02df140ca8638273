use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bernoulli::{binom_gauss_ratio, iota_breakdown_with, phi, PhiBranch, PhiTable};
use crate::error::{Error, Result};

/// One row of the `phi` table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiRow {
    pub l: u64,
    pub zeta_star: f64,
    pub phi: f64,
    pub branch: PhiBranch,
    pub five_over_l: f64,
    /// Exact `ln max_k` of the binomial-to-Gaussian ratio, when computed.
    pub ln_max_ratio: Option<f64>,
    pub ratio_ok: Option<bool>,
}

/// `phi(l)` for `l = lmin, lmin + step, ..., <= lmax`; the exact ratio is
/// enumerated for `l <= ratio_lmax`.
pub fn phi_table(lmin: u64, lmax: u64, step: u64, ratio_lmax: u64) -> Result<Vec<PhiRow>> {
    if lmin < 1 || lmax < lmin || step < 1 {
        return Err(Error::Config(format!(
            "need 1 <= lmin <= lmax and step >= 1, got lmin={lmin} lmax={lmax} step={step}"
        )));
    }
    let ls: Vec<u64> = (lmin..=lmax).step_by(step as usize).collect();
    ls.into_par_iter()
        .map(|l| {
            let p = phi(l)?;
            let ln_ratio = if l <= ratio_lmax {
                Some(binom_gauss_ratio(l)?.ln_max_ratio)
            } else {
                None
            };
            Ok(PhiRow {
                l,
                zeta_star: p.zeta_star,
                phi: p.phi,
                branch: p.branch,
                five_over_l: 5.0 / l as f64,
                ln_max_ratio: ln_ratio,
                ratio_ok: ln_ratio.map(|r| r <= p.phi),
            })
        })
        .collect()
}

/// One row of the `iota` table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IotaRow {
    pub sections: usize,
    pub alpha0: f64,
    pub v: f64,
    pub iota3: f64,
    pub iota4: f64,
    pub iota5: f64,
    pub iota1: f64,
    pub iota2: f64,
    pub iota: f64,
    pub phi_l: f64,
    /// `iota sqrt(L)`
    pub iota_sqrt_l: f64,
    pub iota4_range_empty: bool,
}

pub fn iota_table(sections: &[usize], alpha0: f64, v: f64) -> Result<Vec<IotaRow>> {
    let lmax = *sections
        .iter()
        .max()
        .ok_or_else(|| Error::Config("empty L list".into()))?;
    let table = PhiTable::shared(lmax as u64);
    sections
        .iter()
        .map(|&l| {
            let b = iota_breakdown_with(&table, l, alpha0, v)?;
            Ok(IotaRow {
                sections: l,
                alpha0,
                v,
                iota3: b.iota3,
                iota4: b.iota4,
                iota5: b.iota5,
                iota1: b.iota1,
                iota2: b.iota2,
                iota: b.iota,
                phi_l: b.phi_l,
                iota_sqrt_l: b.iota * (l as f64).sqrt(),
                iota4_range_empty: b.iota4_range_empty,
            })
        })
        .collect()
}

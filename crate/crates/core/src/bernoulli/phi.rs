use std::f64::consts::{LN_2, PI};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numeric::{golden_section, ln_binomial};

/// Grid over `zeta` used before golden-section refinement.
pub const ZETA_GRID_POINTS: usize = 2048;
pub const ZETA_GRID_LO: f64 = 0.001;
pub const ZETA_GRID_HI: f64 = 0.499;
pub const ZETA_TOL: f64 = 1e-10;

/// Which term of `phi_zeta(l)` attains the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiBranch {
    /// `(3 c_zeta^2 / 16 + 1/12) / l`
    InverseL,
    /// `-4 zeta^4 l / 3 + ln(l/2) + 1/(12 l)`
    QuarticTail,
    /// `-(ln 2 - 1/2) l + ln(pi l / 2) / 2`
    EdgeMass,
}

/// `c_zeta = 1/(1+2 zeta)^2 + 1/(1-2 zeta)^2`.
fn c_zeta(zeta: f64) -> f64 {
    (1.0 + 2.0 * zeta).powi(-2) + (1.0 - 2.0 * zeta).powi(-2)
}

/// The three terms of `phi_zeta(l)`.
pub fn phi_zeta_branches(l: u64, zeta: f64) -> Result<[f64; 3]> {
    if l == 0 {
        return Err(domain("phi_zeta needs l >= 1"));
    }
    if !(zeta > 0.0 && zeta < 0.5) {
        return Err(domain(format!("zeta must lie in (0, 1/2), got {zeta}")));
    }
    Ok(branches_unchecked(l as f64, zeta))
}

fn branches_unchecked(l: f64, zeta: f64) -> [f64; 3] {
    let c = c_zeta(zeta);
    [
        (3.0 / 16.0 * c * c + 1.0 / 12.0) / l,
        -4.0 * zeta.powi(4) / 3.0 * l + (l / 2.0).ln() + 1.0 / (12.0 * l),
        -(LN_2 - 0.5) * l + 0.5 * (PI * l / 2.0).ln(),
    ]
}

fn max3(b: [f64; 3]) -> f64 {
    b[0].max(b[1]).max(b[2])
}

/// `phi_zeta(l)`: the largest of the three terms.
pub fn phi_zeta(l: u64, zeta: f64) -> Result<f64> {
    phi_zeta_branches(l, zeta).map(max3)
}

/// `phi(l) = inf_zeta phi_zeta(l)` with the minimizing `zeta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiResult {
    pub l: u64,
    pub zeta_star: f64,
    pub phi: f64,
    pub branch: PhiBranch,
}

/// Minimizes `phi_zeta(l)` over a 2048-point grid on `[0.001, 0.499]`
/// refined by golden-section search to `1e-10` in `zeta`.
pub fn phi(l: u64) -> Result<PhiResult> {
    if l == 0 {
        return Err(domain("phi needs l >= 1"));
    }
    Ok(phi_unchecked(l))
}

fn phi_unchecked(l: u64) -> PhiResult {
    let lf = l as f64;
    let f = |z: f64| max3(branches_unchecked(lf, z));
    let step = (ZETA_GRID_HI - ZETA_GRID_LO) / (ZETA_GRID_POINTS - 1) as f64;
    let (mut best_i, mut best) = (0, f64::INFINITY);
    for i in 0..ZETA_GRID_POINTS {
        let v = f(ZETA_GRID_LO + step * i as f64);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let lo = ZETA_GRID_LO + step * best_i.saturating_sub(1) as f64;
    let hi = ZETA_GRID_LO + step * (best_i + 1).min(ZETA_GRID_POINTS - 1) as f64;
    let refined = golden_section(f, lo, hi, ZETA_TOL);
    let (zeta_star, phi) = if refined.value < best {
        (refined.x, refined.value)
    } else {
        (ZETA_GRID_LO + step * best_i as f64, best)
    };
    let b = branches_unchecked(lf, zeta_star);
    let branch = if b[0] >= b[1] && b[0] >= b[2] {
        PhiBranch::InverseL
    } else if b[1] >= b[2] {
        PhiBranch::QuarticTail
    } else {
        PhiBranch::EdgeMass
    };
    PhiResult {
        l,
        zeta_star,
        phi,
        branch,
    }
}

/// Memoized `phi(l)` for `l = 1..=lmax`.
#[derive(Debug, Clone)]
pub struct PhiTable {
    values: Vec<PhiResult>,
}

impl PhiTable {
    /// Computes the table in parallel.
    pub fn new(lmax: u64) -> Self {
        let values = (1..=lmax).into_par_iter().map(phi_unchecked).collect();
        Self { values }
    }

    /// Process-wide table covering at least `lmax`, extended on demand.
    pub fn shared(lmax: u64) -> Arc<PhiTable> {
        static CACHE: Mutex<Option<Arc<PhiTable>>> = Mutex::new(None);
        let mut guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(t) = guard.as_ref().filter(|t| t.lmax() >= lmax) {
            return Arc::clone(t);
        }
        let mut values = guard.as_ref().map(|t| t.values.clone()).unwrap_or_default();
        let start = values.len() as u64 + 1;
        values.par_extend((start..=lmax).into_par_iter().map(phi_unchecked));
        let table = Arc::new(PhiTable { values });
        *guard = Some(Arc::clone(&table));
        table
    }

    pub fn lmax(&self) -> u64 {
        self.values.len() as u64
    }

    /// `phi(l)`; panics if `l` is 0 or beyond the table.
    pub fn phi(&self, l: u64) -> f64 {
        self.values[(l - 1) as usize].phi
    }

    pub fn get(&self, l: u64) -> Option<&PhiResult> {
        l.checked_sub(1).and_then(|i| self.values.get(i as usize))
    }

    pub fn iter(&self) -> impl Iterator<Item = &PhiResult> {
        self.values.iter()
    }
}

/// Maximum over `k` of `C(l,k) 2^{-l} / N(k | l/2, l/4)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioMax {
    pub l: u64,
    pub ln_max_ratio: f64,
    pub max_ratio: f64,
    /// Smallest maximizing `k` (the ratio is symmetric in `k <-> l - k`).
    pub argmax_k: u64,
}

/// Largest `l` accepted by [`binom_gauss_ratio`].
pub const RATIO_MAX_L: u64 = 1_000_000;

/// Exact maximum of the binomial-pmf to Gaussian-density ratio, evaluated in
/// the log domain over every `k in 0..=l`.
pub fn binom_gauss_ratio(l: u64) -> Result<RatioMax> {
    if l == 0 || l > RATIO_MAX_L {
        return Err(domain(format!("l must lie in [1, {RATIO_MAX_L}], got {l}")));
    }
    let lf = l as f64;
    let var = lf / 4.0;
    let ln_norm = -0.5 * (2.0 * PI * var).ln();
    let (mut best, mut arg) = (f64::NEG_INFINITY, 0);
    for k in 0..=l {
        let ln_pmf = ln_binomial(l, k) - lf * LN_2;
        let dev = k as f64 - lf / 2.0;
        let ln_density = ln_norm - dev * dev / (2.0 * var);
        let r = ln_pmf - ln_density;
        if r > best {
            best = r;
            arg = k;
        }
    }
    Ok(RatioMax {
        l,
        ln_max_ratio: best,
        max_ratio: best.exp(),
        argmax_k: arg,
    })
}

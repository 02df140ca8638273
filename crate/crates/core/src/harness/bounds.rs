use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::bernoulli::{ber_theorem_bound, IotaBreakdown};
use crate::codec::DictionaryKind;
use crate::error::{domain, Error, Result};
use crate::exponents::{gauss_theorem_bound, TheoremBound};
use crate::params::{capacity, CodeSpec};

/// Parameters of a bound computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundQuery {
    /// Signal-to-noise ratio `v`.
    pub snr: f64,
    /// Rate in nats per transmission.
    pub rate: f64,
    pub sections: usize,
    pub code_length: usize,
    pub alpha0: f64,
    /// Dictionary the headline figures refer to.
    pub dictionary: DictionaryKind,
}

impl BoundQuery {
    /// `M = L^a`, `R = fraction * C`, `n` derived.
    pub fn from_section_rate(
        snr: f64,
        rate_fraction: f64,
        sections: usize,
        section_rate: f64,
        alpha0: f64,
        dictionary: DictionaryKind,
    ) -> Result<(Self, CodeSpec)> {
        let cap = capacity(snr)?;
        if !(rate_fraction > 0.0 && rate_fraction < 1.0) {
            return Err(domain(format!(
                "rate fraction must lie in (0, 1), got {rate_fraction} (C = {cap})"
            )));
        }
        let spec = CodeSpec::derive(sections, section_rate, rate_fraction * cap)?;
        Ok((Self::for_code(snr, &spec, alpha0, dictionary), spec))
    }

    /// Bounds at the realized rate `K ln 2 / n` of `spec`.
    pub fn for_code(snr: f64, spec: &CodeSpec, alpha0: f64, dictionary: DictionaryKind) -> Self {
        Self {
            snr,
            rate: spec.rate,
            sections: spec.sections,
            code_length: spec.code_length,
            alpha0,
            dictionary,
        }
    }

    pub fn from_experiment(cfg: &ExperimentConfig) -> Result<Self> {
        let snr = cfg
            .snr()
            .ok_or_else(|| Error::Config("bounds need sigma2 > 0".into()))?;
        Ok(Self::for_code(snr, &cfg.code_spec()?, cfg.alpha0, cfg.dictionary))
    }
}

/// Per-`l` row of the bound table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub mistakes: usize,
    pub alpha: f64,
    pub c_alpha: f64,
    /// `C_alpha - alpha R`
    pub slack: f64,
    pub gauss_t_star: f64,
    pub gauss_ln_bound: f64,
    pub gauss_bound: f64,
    pub ber_t_star: f64,
    pub ber_ln_bound: f64,
    pub ber_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub query: BoundQuery,
    pub capacity: f64,
    pub rate_fraction: f64,
    pub gauss: TheoremBound,
    pub ber: TheoremBound,
    pub iotas: IotaBreakdown,
    pub table: Vec<BoundRow>,
    /// Exponent lower bound for the selected dictionary.
    pub exponent_lower: f64,
    /// `min(1, e^{-nE})` for the selected dictionary.
    pub prob_bound: f64,
    /// Summed per-`l` bound for the selected dictionary.
    pub summed_bound: f64,
    pub gauss_vacuous: bool,
    pub ber_vacuous: bool,
}

impl BoundReport {
    /// The Bernoulli bounds never beat the Gaussian ones.
    pub fn is_consistent(&self) -> bool {
        self.ber.prob_bound >= self.gauss.prob_bound
            && self.ber.summed_bound >= self.gauss.summed_bound
            && self.iotas.iota >= 0.0
    }
}

/// Gaussian and Bernoulli theorem bounds side by side, with the per-`l`
/// minimizing `t` for both.
pub fn compare_bounds(q: &BoundQuery) -> Result<BoundReport> {
    let cap = capacity(q.snr)?;
    if q.rate >= cap {
        return Err(domain(format!("rate {} is not below capacity C = {cap}", q.rate)));
    }
    let gauss = gauss_theorem_bound(q.alpha0, q.snr, q.rate, q.sections, q.code_length)?;
    let ber = ber_theorem_bound(q.alpha0, q.snr, q.rate, q.sections, q.code_length)?;
    let table = gauss
        .per_section
        .iter()
        .zip(&ber.bound.per_section)
        .map(|(g, b)| BoundRow {
            mistakes: g.mistakes,
            alpha: g.alpha,
            c_alpha: g.c_alpha,
            slack: g.slack,
            gauss_t_star: g.t_star,
            gauss_ln_bound: g.ln_bound,
            gauss_bound: g.bound,
            ber_t_star: b.t_star,
            ber_ln_bound: b.ln_bound,
            ber_bound: b.bound,
        })
        .collect();
    let selected = match q.dictionary {
        DictionaryKind::Gaussian => &gauss,
        DictionaryKind::Bernoulli => &ber.bound,
    };
    Ok(BoundReport {
        query: *q,
        capacity: cap,
        rate_fraction: q.rate / cap,
        exponent_lower: selected.exponent_lower,
        prob_bound: selected.prob_bound,
        summed_bound: selected.summed_bound,
        gauss_vacuous: gauss.is_vacuous(),
        ber_vacuous: ber.bound.is_vacuous(),
        iotas: ber.iotas,
        gauss,
        ber: ber.bound,
        table,
    })
}

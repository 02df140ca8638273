use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::codec::rng::derive_seed;
use crate::codec::{
    awgn_channel, codeword_power, count_mistakes, encode, least_squares_decode, Dictionary, SectionMessage,
};
use crate::error::{Error, Result};
use crate::exponents::first_counted_mistake;
use crate::params::CodeSpec;

/// Two-sided 97.5% standard normal quantile.
const Z_95: f64 = 1.959_963_984_540_054;

/// Outcome of one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub mistakes: usize,
    pub section_error_rate: f64,
    /// `||y - X beta_hat||^2`
    pub residual: f64,
    /// `(1/n) ||c||^2` of the transmitted codeword.
    pub codeword_power: f64,
    /// `mistakes >= alpha0 L`
    pub in_event: bool,
    /// The dictionary maps two messages to one codeword. Only checked when
    /// a noiseless trial decodes wrongly; such trials are left out of the
    /// aggregate.
    pub duplicate_dictionary: bool,
}

/// Wilson score interval at 95%.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WilsonInterval {
    pub low: f64,
    pub high: f64,
    pub half_width: f64,
}

pub fn wilson_interval(successes: u64, trials: u64) -> WilsonInterval {
    if trials == 0 {
        return WilsonInterval {
            low: 0.0,
            high: 1.0,
            half_width: 0.5,
        };
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z_95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    WilsonInterval {
        low: (center - half).max(0.0),
        high: (center + half).min(1.0),
        half_width: half,
    }
}

/// Aggregate over the counted (non-duplicate) trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub code: CodeSpec,
    pub snr: Option<f64>,
    pub alpha0: f64,
    /// Smallest mistake count in the event.
    pub event_threshold: usize,
    pub trials: u64,
    pub duplicate_dictionaries: u64,
    pub counted_trials: u64,
    pub events: u64,
    pub probability: f64,
    pub interval: WilsonInterval,
    /// `histogram[l]` trials with exactly `l` mistakes.
    pub histogram: Vec<u64>,
    pub mean_section_error_rate: f64,
    pub mean_codeword_power: f64,
}

/// One row of the aggregate CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub mistakes: usize,
    pub section_error_rate: f64,
    pub trials: u64,
    pub fraction: f64,
    /// Trials with at least this many mistakes.
    pub at_least: u64,
    pub in_event: bool,
}

impl MonteCarloSummary {
    pub fn histogram_rows(&self) -> Vec<HistogramRow> {
        let l = self.code.sections;
        let counted = self.counted_trials.max(1) as f64;
        let mut tail = self.counted_trials;
        self.histogram
            .iter()
            .enumerate()
            .map(|(m, &count)| {
                let row = HistogramRow {
                    mistakes: m,
                    section_error_rate: m as f64 / l as f64,
                    trials: count,
                    fraction: count as f64 / counted,
                    at_least: tail,
                    in_event: m >= self.event_threshold,
                };
                tail -= count;
                row
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloRun {
    pub summary: MonteCarloSummary,
    pub records: Vec<TrialRecord>,
}

fn run_trial(cfg: &ExperimentConfig, spec: &CodeSpec, threshold: usize, trial: u64) -> Result<TrialRecord> {
    let seed = derive_seed(cfg.master_seed, trial);
    let dict = Dictionary::generate(spec, cfg.power, cfg.dictionary, seed)?;
    let msg = SectionMessage::random(spec.sections, spec.section_size, seed);
    let c = encode(&msg, &dict)?;
    let y = awgn_channel(&c, cfg.sigma2, seed)?;
    let decoded = least_squares_decode(&dict, &y, cfg.decode_cap)?;
    let m = count_mistakes(&decoded.message, &msg)?;
    let duplicate_dictionary = cfg.sigma2 == 0.0 && m.count > 0 && dict.has_duplicate_codewords(cfg.decode_cap)?;
    Ok(TrialRecord {
        trial,
        seed,
        mistakes: m.count,
        section_error_rate: m.rate,
        residual: decoded.residual,
        codeword_power: codeword_power(&c),
        in_event: m.count >= threshold,
        duplicate_dictionary,
    })
}

/// Runs `trials` independent trials, each with its own dictionary, message
/// and noise drawn from seeds derived from `master_seed` and the trial
/// index. Results come back in trial order whatever the thread count.
pub fn run_monte_carlo(cfg: &ExperimentConfig) -> Result<MonteCarloRun> {
    cfg.validate()?;
    let spec = cfg.code_spec()?;
    let threshold = first_counted_mistake(cfg.alpha0, spec.sections);
    log::info!(
        "{} trials, L={} M={} n={}, sigma2={}",
        cfg.trials,
        spec.sections,
        spec.section_size,
        spec.code_length,
        cfg.sigma2
    );
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
    let records: Vec<TrialRecord> = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| run_trial(cfg, &spec, threshold, i))
            .collect::<Result<_>>()
    })?;
    log::info!("trials done");
    Ok(MonteCarloRun {
        summary: summarize(cfg, spec, threshold, &records),
        records,
    })
}

fn summarize(cfg: &ExperimentConfig, spec: CodeSpec, threshold: usize, records: &[TrialRecord]) -> MonteCarloSummary {
    let mut histogram = vec![0u64; spec.sections + 1];
    let (mut counted, mut events, mut dups) = (0u64, 0u64, 0u64);
    let (mut rate_sum, mut power_sum) = (0.0, 0.0);
    for r in records {
        if r.duplicate_dictionary {
            dups += 1;
            continue;
        }
        counted += 1;
        histogram[r.mistakes] += 1;
        events += r.in_event as u64;
        rate_sum += r.section_error_rate;
        power_sum += r.codeword_power;
    }
    let denom = counted.max(1) as f64;
    MonteCarloSummary {
        code: spec,
        snr: cfg.snr(),
        alpha0: cfg.alpha0,
        event_threshold: threshold,
        trials: records.len() as u64,
        duplicate_dictionaries: dups,
        counted_trials: counted,
        events,
        probability: events as f64 / denom,
        interval: wilson_interval(events, counted),
        histogram,
        mean_section_error_rate: rate_sum / denom,
        mean_codeword_power: power_sum / denom,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(sigma2: f64, trials: u64, threads: Option<usize>) -> ExperimentConfig {
        ExperimentConfig {
            power: 15.0,
            sigma2,
            sections: 3,
            section_size: Some(4),
            section_rate: None,
            rate: None,
            rate_fraction: None,
            code_length: Some(8),
            dictionary: crate::codec::DictionaryKind::Bernoulli,
            alpha0: 1.0 / 3.0,
            trials,
            master_seed: 11,
            decode_cap: 1 << 20,
            threads,
            out_dir: None,
        }
    }

    #[test]
    fn wilson_reference_values() {
        // 0 of 10: upper end z^2 / (n + z^2)
        let w = wilson_interval(0, 10);
        assert_eq!(w.low, 0.0);
        assert!((w.high - Z_95 * Z_95 / (10.0 + Z_95 * Z_95)).abs() < 1e-12);
        // symmetric around 1/2 at 5 of 10
        let w = wilson_interval(5, 10);
        assert!((w.low + w.high - 1.0).abs() < 1e-12);
        // reference: statsmodels proportion_confint(5, 10, method="wilson")
        assert!((w.high - 0.763_406_909_487_436).abs() < 1e-12, "{w:?}");
    }

    #[test]
    fn noiseless_has_no_counted_mistakes() {
        let run = run_monte_carlo(&small(0.0, 100, Some(2))).unwrap();
        let s = &run.summary;
        assert_eq!(s.events, 0);
        assert_eq!(s.histogram[0], s.counted_trials);
        assert_eq!(s.counted_trials + s.duplicate_dictionaries, 100);
        for r in &run.records {
            assert!(r.mistakes == 0 || r.duplicate_dictionary);
        }
    }

    #[test]
    fn deterministic_across_threads() {
        let a = run_monte_carlo(&small(1.0, 64, Some(1))).unwrap();
        let b = run_monte_carlo(&small(1.0, 64, Some(4))).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.records.iter().map(|r| r.trial).collect::<Vec<_>>(),
            (0..64).collect::<Vec<_>>()
        );
        let rows = a.summary.histogram_rows();
        assert_eq!(rows[0].at_least, 64);
        assert_eq!(rows.iter().map(|r| r.trials).sum::<u64>(), 64);
        let c = run_monte_carlo(&ExperimentConfig {
            master_seed: 12,
            ..small(1.0, 64, Some(4))
        })
        .unwrap();
        assert_ne!(a.records, c.records);
    }

    #[test]
    fn mistakes_within_range() {
        let run = run_monte_carlo(&small(20.0, 50, None)).unwrap();
        assert!(run.records.iter().all(|r| r.mistakes <= 3));
        assert!(run.summary.events > 0);
    }
}

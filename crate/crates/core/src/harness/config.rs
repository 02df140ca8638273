use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::codec::{DictionaryKind, DEFAULT_DECODE_CAP};
use crate::error::{Error, Result};
use crate::params::{capacity, CodeSpec};

fn default_dictionary() -> DictionaryKind {
    DictionaryKind::Bernoulli
}

fn default_decode_cap() -> u64 {
    DEFAULT_DECODE_CAP
}

/// One Monte Carlo experiment, read from a single JSON document.
///
/// The section size is given either directly (`section_size`) or through
/// `M = L^a` (`section_rate`). The code length is given directly
/// (`code_length`), through a rate in nats (`rate`), or through a fraction
/// of capacity (`rate_fraction`). Exactly one choice from each group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Signal power `P`.
    pub power: f64,
    /// Noise variance; 0 runs the noiseless control.
    pub sigma2: f64,
    /// Number of sections `L`.
    pub sections: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section_rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code_length: Option<usize>,
    #[serde(default = "default_dictionary")]
    pub dictionary: DictionaryKind,
    /// Threshold fraction of sections in error that counts as a failure.
    pub alpha0: f64,
    pub trials: u64,
    pub master_seed: u64,
    /// Largest codebook `M^L` the exhaustive decoder will search.
    #[serde(default = "default_decode_cap")]
    pub decode_cap: u64,
    /// Worker threads; defaults to rayon's choice.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| config_err(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// `P / sigma2`, or `None` for the noiseless control.
    pub fn snr(&self) -> Option<f64> {
        (self.sigma2 > 0.0).then(|| self.power / self.sigma2)
    }

    /// Resolves the section size and code length.
    pub fn code_spec(&self) -> Result<CodeSpec> {
        let size_given = [self.section_size.is_some(), self.section_rate.is_some()];
        if size_given.iter().filter(|&&b| b).count() != 1 {
            return Err(config_err("give exactly one of section_size, section_rate"));
        }
        let length_given = [
            self.rate.is_some(),
            self.rate_fraction.is_some(),
            self.code_length.is_some(),
        ];
        if length_given.iter().filter(|&&b| b).count() != 1 {
            return Err(config_err("give exactly one of rate, rate_fraction, code_length"));
        }
        let rate = match (self.rate, self.rate_fraction) {
            (Some(r), _) => Some(r),
            (_, Some(f)) => {
                let v = self
                    .snr()
                    .ok_or_else(|| config_err("rate_fraction needs sigma2 > 0; give code_length instead"))?;
                if !(f > 0.0 && f < 1.0) {
                    return Err(config_err(format!("rate_fraction must lie in (0, 1), got {f}")));
                }
                Some(f * capacity(v)?)
            }
            _ => None,
        };
        match (self.section_size, self.section_rate, rate, self.code_length) {
            (Some(m), _, Some(r), _) => CodeSpec::with_section_size(self.sections, m, r),
            (Some(m), _, None, Some(n)) => CodeSpec::with_code_length(self.sections, m, n),
            (None, Some(a), Some(r), _) => CodeSpec::derive(self.sections, a, r),
            (None, Some(a), None, Some(n)) => {
                // M from the rate, n as given
                let m = CodeSpec::derive(self.sections, a, 1.0)?.section_size;
                CodeSpec::with_code_length(self.sections, m, n)
            }
            _ => unreachable!("exactly-one checks above"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.power > 0.0) || !self.power.is_finite() {
            return Err(config_err(format!("power must be positive, got {}", self.power)));
        }
        if !(self.sigma2 >= 0.0) || !self.sigma2.is_finite() {
            return Err(config_err(format!("sigma2 must be non-negative, got {}", self.sigma2)));
        }
        if self.trials < 1 {
            return Err(config_err("trials must be at least 1"));
        }
        if !(self.alpha0 > 0.0 && self.alpha0 <= 1.0) {
            return Err(config_err(format!("alpha0 must lie in (0, 1], got {}", self.alpha0)));
        }
        if self.threads == Some(0) {
            return Err(config_err("threads must be at least 1"));
        }
        let spec = self.code_spec()?;
        match spec.codebook_size() {
            Some(size) if size <= self.decode_cap => Ok(()),
            size => Err(Error::Resource(format!(
                "codebook M^L = {}^{} = {} exceeds decode_cap {}",
                spec.section_size,
                spec.sections,
                size.map_or_else(|| "overflow".to_string(), |s| s.to_string()),
                self.decode_cap
            ))),
        }
    }

    /// Same code with `sigma2 = 0` and the code length pinned.
    pub fn noiseless_control(&self) -> Result<Self> {
        let spec = self.code_spec()?;
        Ok(Self {
            sigma2: 0.0,
            section_size: Some(spec.section_size),
            section_rate: None,
            rate: None,
            rate_fraction: None,
            code_length: Some(spec.code_length),
            ..self.clone()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{"power": 15, "sigma2": 1, "sections": 6, "section_size": 8,
        "rate_fraction": 0.3, "alpha0": 0.1666666666666667, "trials": 10, "master_seed": 7}"#;

    #[test]
    fn parses_and_resolves() {
        let cfg = ExperimentConfig::from_json(BASE).unwrap();
        assert_eq!(cfg.dictionary, DictionaryKind::Bernoulli);
        assert_eq!(cfg.decode_cap, DEFAULT_DECODE_CAP);
        let spec = cfg.code_spec().unwrap();
        assert_eq!((spec.section_size, spec.code_length), (8, 30));
        let ctl = cfg.noiseless_control().unwrap();
        assert_eq!(ctl.code_spec().unwrap(), spec);
        assert_eq!(ctl.snr(), None);
    }

    #[test]
    fn round_trip() {
        let cfg = ExperimentConfig::from_json(BASE).unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::from_json(&text).unwrap(), cfg);
    }

    #[test]
    fn rejects_bad_configs() {
        let unknown = BASE.replace("\"trials\"", "\"trails\": 1, \"trials\"");
        assert!(matches!(ExperimentConfig::from_json(&unknown), Err(Error::Config(_))));
        let both = BASE.replace("\"section_size\": 8", "\"section_size\": 8, \"section_rate\": 1.0");
        assert!(ExperimentConfig::from_json(&both).is_err());
        let zero = BASE.replace("\"trials\": 10", "\"trials\": 0");
        assert!(ExperimentConfig::from_json(&zero).is_err());
        let capped = BASE.replace("\"master_seed\": 7", "\"master_seed\": 7, \"decode_cap\": 1000");
        match ExperimentConfig::from_json(&capped) {
            Err(Error::Resource(msg)) => assert!(msg.contains("262144"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let noiseless = BASE.replace("\"sigma2\": 1", "\"sigma2\": 0");
        assert!(ExperimentConfig::from_json(&noiseless).is_err());
    }
}

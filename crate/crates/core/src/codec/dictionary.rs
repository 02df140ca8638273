use std::collections::HashSet;

use rand::RngExt;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::rng::{stream_rng, Stream};
use crate::error::{domain, Error, Result};
use crate::params::CodeSpec;

/// Default cap on the number of dictionary entries `n * N`.
pub const DEFAULT_MEMORY_CAP: usize = 1 << 28;

/// Entry law of the dictionary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DictionaryKind {
    /// Equiprobable `+-sqrt(P/L)`.
    Bernoulli,
    /// `N(0, P/L)`.
    Gaussian,
}

impl std::fmt::Display for DictionaryKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Bernoulli => "bernoulli",
            Self::Gaussian => "gaussian",
        })
    }
}

impl std::str::FromStr for DictionaryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bernoulli" => Ok(Self::Bernoulli),
            "gaussian" => Ok(Self::Gaussian),
            other => Err(Error::Config(format!("unknown dictionary kind {other:?}"))),
        }
    }
}

/// The `n x N` design matrix, stored column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary {
    rows: usize,
    sections: usize,
    section_size: usize,
    kind: DictionaryKind,
    scale: f64,
    seed: u64,
    entries: Vec<f64>,
}

impl Dictionary {
    /// Draws a dictionary for `spec` with per-entry scale `sqrt(power / L)`.
    pub fn generate(spec: &CodeSpec, power: f64, kind: DictionaryKind, seed: u64) -> Result<Self> {
        Self::generate_with_cap(spec, power, kind, seed, DEFAULT_MEMORY_CAP)
    }

    pub fn generate_with_cap(
        spec: &CodeSpec,
        power: f64,
        kind: DictionaryKind,
        seed: u64,
        memory_cap: usize,
    ) -> Result<Self> {
        if !(power > 0.0) {
            return Err(domain(format!("signal power must be positive, got {power}")));
        }
        let count = spec
            .code_length
            .checked_mul(spec.columns)
            .filter(|&c| c <= memory_cap)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "dictionary of {} x {} entries exceeds the cap of {memory_cap}",
                    spec.code_length, spec.columns
                ))
            })?;
        let scale = (power / spec.sections as f64).sqrt();
        let mut rng = stream_rng(seed, Stream::Dictionary);
        let entries: Vec<f64> = match kind {
            DictionaryKind::Bernoulli => (0..count)
                .map(|_| if rng.random::<bool>() { scale } else { -scale })
                .collect(),
            DictionaryKind::Gaussian => (0..count)
                .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
                .collect(),
        };
        Ok(Self {
            rows: spec.code_length,
            sections: spec.sections,
            section_size: spec.section_size,
            kind,
            scale,
            seed,
            entries,
        })
    }

    /// Builds a dictionary from explicit column-major entries (test fixtures).
    pub fn from_columns(
        rows: usize,
        sections: usize,
        section_size: usize,
        kind: DictionaryKind,
        scale: f64,
        entries: Vec<f64>,
    ) -> Result<Self> {
        if rows == 0 || sections == 0 || section_size == 0 {
            return Err(domain("dictionary dimensions must be positive"));
        }
        if entries.len() != rows * sections * section_size {
            return Err(domain(format!(
                "expected {} entries, got {}",
                rows * sections * section_size,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            sections,
            section_size,
            kind,
            scale,
            seed: 0,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.sections * self.section_size
    }

    pub fn sections(&self) -> usize {
        self.sections
    }

    pub fn section_size(&self) -> usize {
        self.section_size
    }

    pub fn kind(&self) -> DictionaryKind {
        self.kind
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.entries[j * self.rows..(j + 1) * self.rows]
    }

    /// Column `index` of section `section`.
    pub fn section_column(&self, section: usize, index: usize) -> &[f64] {
        self.column(section * self.section_size + index)
    }

    /// Scans all `M^L` codewords for two distinct messages that map to the
    /// same codeword. Bernoulli codewords are compared exactly through their
    /// integer sign sums; Gaussian ones bit-for-bit.
    pub fn has_duplicate_codewords(&self, cap: u64) -> Result<bool> {
        let total = codebook_size(self.sections, self.section_size, cap)?;
        let mut seen = HashSet::with_capacity(total as usize);
        let mut digits = vec![0usize; self.sections];
        let signs: Vec<i16> = self.entries.iter().map(|&x| if x >= 0.0 { 1 } else { -1 }).collect();
        for _ in 0..total {
            let key: Vec<u64> = match self.kind {
                DictionaryKind::Bernoulli => (0..self.rows)
                    .map(|i| {
                        let s: i16 = digits
                            .iter()
                            .enumerate()
                            .map(|(sec, &d)| signs[(sec * self.section_size + d) * self.rows + i])
                            .sum();
                        s as u64
                    })
                    .collect(),
                DictionaryKind::Gaussian => (0..self.rows)
                    .map(|i| {
                        digits
                            .iter()
                            .enumerate()
                            .map(|(sec, &d)| self.section_column(sec, d)[i])
                            .sum::<f64>()
                            .to_bits()
                    })
                    .collect(),
            };
            if !seen.insert(key) {
                return Ok(true);
            }
            advance_mixed_radix(&mut digits, self.section_size);
        }
        Ok(false)
    }
}

/// `M^L`, refusing anything above `cap`.
pub(crate) fn codebook_size(sections: usize, section_size: usize, cap: u64) -> Result<u64> {
    (section_size as u64)
        .checked_pow(sections as u32)
        .filter(|&n| n <= cap)
        .ok_or_else(|| {
            Error::Resource(format!(
                "codebook has M^L = {section_size}^{sections} = {} codewords, above the cap of {cap}",
                (section_size as f64).powi(sections as i32)
            ))
        })
}

/// Increments the last digit first (lexicographic order).
fn advance_mixed_radix(digits: &mut [usize], radix: usize) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return;
        }
        *d = 0;
    }
}

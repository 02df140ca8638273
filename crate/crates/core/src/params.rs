//! Channel and code parameter bookkeeping.
//!
//! Rates and capacities are carried in nats per transmission throughout the
//! crate; [`nats_to_bits`] is only for presentation.

use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

use crate::error::{domain, Result};

/// Converts a rate in nats to bits.
pub fn nats_to_bits(nats: f64) -> f64 {
    nats / LN_2
}

/// AWGN capacity `0.5 ln(1 + v)` in nats per transmission.
pub fn capacity(snr: f64) -> Result<f64> {
    if !(snr > 0.0) || !snr.is_finite() {
        return Err(domain(format!("capacity needs a positive finite SNR, got {snr}")));
    }
    Ok(0.5 * snr.ln_1p())
}

/// Partial capacity `C_alpha = 0.5 ln(1 + alpha v)`.
pub fn c_alpha(alpha: f64, snr: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(domain(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    if !(snr > 0.0) {
        return Err(domain(format!("SNR must be positive, got {snr}")));
    }
    Ok(0.5 * (alpha * snr).ln_1p())
}

/// Signal power and noise variance of an AWGN channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    power: f64,
    noise_variance: f64,
}

impl ChannelSpec {
    pub fn new(power: f64, noise_variance: f64) -> Result<Self> {
        if !(power > 0.0) || !power.is_finite() {
            return Err(domain(format!("signal power must be positive, got {power}")));
        }
        if !(noise_variance > 0.0) || !noise_variance.is_finite() {
            return Err(domain(format!("noise variance must be positive, got {noise_variance}")));
        }
        Ok(Self { power, noise_variance })
    }

    /// Channel with unit noise variance and the given SNR.
    pub fn from_snr(snr: f64) -> Result<Self> {
        Self::new(snr, 1.0)
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    /// `v = P / sigma^2`, always derived from the stored pair.
    pub fn snr(&self) -> f64 {
        self.power / self.noise_variance
    }

    /// Capacity in nats per transmission.
    pub fn capacity(&self) -> f64 {
        0.5 * self.snr().ln_1p()
    }

    pub fn capacity_bits(&self) -> f64 {
        nats_to_bits(self.capacity())
    }
}

/// Dimension and rate bookkeeping for a superposition code.
///
/// `rate` is the effective rate `K ln 2 / n` of the realized integer code
/// length, not the requested one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodeSpec {
    /// Number of sections `L`.
    pub sections: usize,
    /// Section size `M`.
    pub section_size: usize,
    /// Section size rate `a`, with `M = L^a` (`a = ln M / ln L` when `M` is explicit).
    pub section_rate: f64,
    /// Dictionary width `N = L M`.
    pub columns: usize,
    /// Message bits `K = L log2 M`.
    pub message_bits: f64,
    /// Effective rate in nats per transmission.
    pub rate: f64,
    /// Code length `n`.
    pub code_length: usize,
}

impl CodeSpec {
    /// `M = ceil(L^a)`, `n = round(a L ln L / R)`.
    pub fn derive(sections: usize, section_rate: f64, rate: f64) -> Result<Self> {
        check_sections(sections)?;
        if !(section_rate > 0.0) {
            return Err(domain(format!(
                "section size rate must be positive, got {section_rate}"
            )));
        }
        check_rate(rate)?;
        let l = sections as f64;
        // guard against L^a landing a hair above an integer
        let raw = l.powf(section_rate);
        let section_size = if (raw - raw.round()).abs() < 1e-9 {
            raw.round()
        } else {
            raw.ceil()
        } as usize;
        let length = (section_rate * l * l.ln() / rate).round();
        Self::assemble(sections, section_size, section_rate, length)
    }

    /// Explicit section size; `n = round(L ln M / R)`.
    pub fn with_section_size(sections: usize, section_size: usize, rate: f64) -> Result<Self> {
        check_sections(sections)?;
        check_section_size(section_size)?;
        check_rate(rate)?;
        let length = (sections as f64 * (section_size as f64).ln() / rate).round();
        Self::assemble(sections, section_size, section_rate_of(sections, section_size), length)
    }

    /// Explicit section size and code length.
    pub fn with_code_length(sections: usize, section_size: usize, code_length: usize) -> Result<Self> {
        check_sections(sections)?;
        check_section_size(section_size)?;
        Self::assemble(
            sections,
            section_size,
            section_rate_of(sections, section_size),
            code_length as f64,
        )
    }

    fn assemble(sections: usize, section_size: usize, section_rate: f64, length: f64) -> Result<Self> {
        if !(length >= 1.0) || !length.is_finite() {
            return Err(domain(format!("derived code length {length} is below 1")));
        }
        let code_length = length as usize;
        let message_bits = sections as f64 * (section_size as f64).log2();
        let spec = Self {
            sections,
            section_size,
            section_rate,
            columns: sections * section_size,
            message_bits,
            rate: message_bits * std::f64::consts::LN_2 / code_length as f64,
            code_length,
        };
        spec.check_counting()?;
        Ok(spec)
    }

    /// `2^K = M^L`, compared in the log domain.
    fn check_counting(&self) -> Result<()> {
        let lhs = self.message_bits * std::f64::consts::LN_2;
        let rhs = self.sections as f64 * (self.section_size as f64).ln();
        if (lhs - rhs).abs() > 1e-9 * rhs.abs().max(1.0) {
            return Err(domain(format!("2^K = M^L violated: {lhs} vs {rhs}")));
        }
        Ok(())
    }

    /// Number of codewords `M^L`, or `None` when it overflows `u64`.
    pub fn codebook_size(&self) -> Option<u64> {
        (self.section_size as u64).checked_pow(self.sections as u32)
    }
}

/// Free-function form of [`CodeSpec::derive`].
pub fn derive_code_spec(sections: usize, section_rate: f64, rate: f64) -> Result<CodeSpec> {
    CodeSpec::derive(sections, section_rate, rate)
}

fn section_rate_of(sections: usize, section_size: usize) -> f64 {
    (section_size as f64).ln() / (sections as f64).ln()
}

fn check_sections(sections: usize) -> Result<()> {
    if sections < 2 {
        return Err(domain(format!("need at least 2 sections, got {sections}")));
    }
    Ok(())
}

fn check_section_size(section_size: usize) -> Result<()> {
    if section_size < 2 {
        return Err(domain(format!("section size must be at least 2, got {section_size}")));
    }
    Ok(())
}

fn check_rate(rate: f64) -> Result<()> {
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(domain(format!("rate must be positive, got {rate}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_values() {
        assert!((capacity(3.0).unwrap() - LN_2).abs() < 1e-15);
        assert!((nats_to_bits(capacity(3.0).unwrap()) - 1.0).abs() < 1e-15);
        assert!((capacity(1.0).unwrap() - 0.5 * LN_2).abs() < 1e-15);
        assert!((nats_to_bits(capacity(15.0).unwrap()) - 2.0).abs() < 1e-15);
        assert!(capacity(0.0).is_err());
        assert!(capacity(-1.0).is_err());
    }

    #[test]
    fn c_alpha_values() {
        assert_eq!(c_alpha(0.0, 7.0).unwrap(), 0.0);
        assert!((c_alpha(1.0, 3.0).unwrap() - capacity(3.0).unwrap()).abs() < 1e-15);
        assert!((c_alpha(0.5, 2.0).unwrap() - 0.5 * LN_2).abs() < 1e-15);
        assert!(c_alpha(1.1, 2.0).is_err());
        assert!(c_alpha(-0.1, 2.0).is_err());
    }

    #[test]
    fn c_alpha_dominates_linear_interpolation() {
        let v = 7.0;
        let c = capacity(v).unwrap();
        for i in 0..=10_000 {
            let a = i as f64 / 10_000.0;
            let gap = c_alpha(a, v).unwrap() - a * c;
            assert!(gap >= -1e-15, "alpha = {a}: {gap}");
            if i == 0 || i == 10_000 {
                assert!(gap.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn capacity_increasing() {
        let mut prev = 0.0;
        for i in 1..1000 {
            let c = capacity(i as f64 * 0.05).unwrap();
            assert!(c > prev);
            prev = c;
        }
    }

    #[test]
    fn derive_examples() {
        // n = round(4 ln 4 / 0.5) = round(11.09) = 11
        let s = derive_code_spec(4, 1.0, 0.5).unwrap();
        assert_eq!((s.section_size, s.columns, s.code_length), (4, 16, 11));
        assert!((s.message_bits - 8.0).abs() < 1e-12);
        assert!((s.rate - 8.0 * LN_2 / 11.0).abs() < 1e-15);

        let s = derive_code_spec(2, 1.0, LN_2).unwrap();
        assert_eq!((s.section_size, s.columns, s.code_length), (2, 4, 2));

        // n = round(18 ln 9) = round(39.55) = 40
        let s = derive_code_spec(9, 2.0, 1.0).unwrap();
        assert_eq!((s.section_size, s.columns, s.code_length), (81, 729, 40));
    }

    #[test]
    fn derive_errors() {
        assert!(derive_code_spec(1, 1.0, 0.5).is_err());
        // huge rate rounds n down to zero
        assert!(derive_code_spec(2, 1.0, 100.0).is_err());
    }

    #[test]
    fn ceiling_for_fractional_section_rate() {
        let s = derive_code_spec(6, 1.1, 0.4).unwrap();
        assert_eq!(s.section_size, 8); // 6^1.1 = 7.18
        assert!((s.message_bits - 18.0).abs() < 1e-12);
    }

    #[test]
    fn explicit_section_size() {
        let c = capacity(15.0).unwrap();
        let s = CodeSpec::with_section_size(6, 8, 0.3 * c).unwrap();
        assert_eq!(s.code_length, 30);
        assert!((s.rate - 0.3 * c).abs() < 1e-12);
        assert_eq!(s.codebook_size(), Some(262_144));
    }
}

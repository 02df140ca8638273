use rand::RngExt;
use serde::{Deserialize, Serialize};

use super::dictionary::Dictionary;
use super::rng::{stream_rng, Stream};
use crate::error::{domain, Result};

/// One selected column index per section; the sparse `beta` in compact form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SectionMessage {
    indices: Vec<usize>,
}

impl SectionMessage {
    pub fn new(indices: Vec<usize>, section_size: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(domain("a message needs at least one section"));
        }
        if let Some((sec, &bad)) = indices.iter().enumerate().find(|(_, &i)| i >= section_size) {
            return Err(domain(format!(
                "section {sec} selects column {bad}, outside [0, {section_size})"
            )));
        }
        Ok(Self { indices })
    }

    /// Uniform message drawn from the message stream of `seed`.
    pub fn random(sections: usize, section_size: usize, seed: u64) -> Self {
        let mut rng = stream_rng(seed, Stream::Message);
        Self {
            indices: (0..sections).map(|_| rng.random_range(0..section_size)).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn sections(&self) -> usize {
        self.indices.len()
    }

    /// Dense 0/1 coefficient vector of length `L * M`.
    pub fn to_beta(&self, section_size: usize) -> Vec<u8> {
        let mut beta = vec![0; self.indices.len() * section_size];
        for (sec, &i) in self.indices.iter().enumerate() {
            beta[sec * section_size + i] = 1;
        }
        beta
    }
}

/// Channel output `y = c + noise`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReceivedWord {
    pub y: Vec<f64>,
}

/// Codeword `c = X beta`: the sum of one column per section.
pub fn encode(msg: &SectionMessage, dict: &Dictionary) -> Result<Vec<f64>> {
    if msg.sections() != dict.sections() {
        return Err(domain(format!(
            "message has {} sections, dictionary has {}",
            msg.sections(),
            dict.sections()
        )));
    }
    let mut c = vec![0.0; dict.rows()];
    for (sec, &idx) in msg.indices().iter().enumerate() {
        if idx >= dict.section_size() {
            return Err(domain(format!(
                "section {sec} index {idx} out of range for section size {}",
                dict.section_size()
            )));
        }
        for (ci, x) in c.iter_mut().zip(dict.section_column(sec, idx)) {
            *ci += x;
        }
    }
    Ok(c)
}

/// Codeword power `(1/n) sum c_i^2`.
pub fn codeword_power(c: &[f64]) -> f64 {
    if c.is_empty() {
        return 0.0;
    }
    c.iter().map(|x| x * x).sum::<f64>() / c.len() as f64
}

/// Mistake count between a decoded and a transmitted message.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mistakes {
    pub count: usize,
    /// Section error rate `count / L`.
    pub rate: f64,
}

pub fn count_mistakes(decoded: &SectionMessage, truth: &SectionMessage) -> Result<Mistakes> {
    if decoded.sections() != truth.sections() {
        return Err(domain(format!(
            "cannot compare messages with {} and {} sections",
            decoded.sections(),
            truth.sections()
        )));
    }
    let count = decoded
        .indices()
        .iter()
        .zip(truth.indices())
        .filter(|(a, b)| a != b)
        .count();
    Ok(Mistakes {
        count,
        rate: count as f64 / truth.sections() as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::DictionaryKind;
    use crate::params::CodeSpec;

    fn toy_dictionary() -> Dictionary {
        // L = 3, M = 4, n = 2; column j = (j, -j)
        let entries: Vec<f64> = (0..12).flat_map(|j| [j as f64, -(j as f64)]).collect();
        Dictionary::from_columns(2, 3, 4, DictionaryKind::Gaussian, 1.0, entries).unwrap()
    }

    #[test]
    fn three_section_layout() {
        // columns 2, 5, 11 are indices (2, 1, 3) within sections of width 4
        let d = toy_dictionary();
        let msg = SectionMessage::new(vec![2, 1, 3], 4).unwrap();
        assert_eq!(encode(&msg, &d).unwrap(), vec![18.0, -18.0]);
        let beta = msg.to_beta(4);
        let ones: Vec<usize> = beta
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(j, _)| j)
            .collect();
        assert_eq!(ones, vec![2, 5, 11]);
    }

    #[test]
    fn single_section_is_the_column() {
        let s = CodeSpec::with_code_length(2, 4, 9).unwrap();
        let d = Dictionary::generate(&s, 1.0, DictionaryKind::Gaussian, 1).unwrap();
        // L = 1 view: one section of the same dictionary
        let one =
            Dictionary::from_columns(9, 1, 4, DictionaryKind::Gaussian, d.scale(), d.entries()[..36].to_vec()).unwrap();
        let msg = SectionMessage::new(vec![3], 4).unwrap();
        assert_eq!(encode(&msg, &one).unwrap(), d.column(3).to_vec());
    }

    #[test]
    fn bernoulli_codeword_lattice() {
        let s = CodeSpec::with_code_length(5, 4, 40).unwrap();
        let d = Dictionary::generate(&s, 5.0, DictionaryKind::Bernoulli, 11).unwrap();
        let step = 2.0 * d.scale();
        for seed in 0..20 {
            let msg = SectionMessage::random(5, 4, seed);
            for c in encode(&msg, &d).unwrap() {
                // c_i = (5 - 2k) * scale for some k in 0..=5
                let k = (5.0 * d.scale() - c) / step;
                assert!((k - k.round()).abs() < 1e-9 && (0.0..=5.0).contains(&k.round()));
            }
        }
    }

    #[test]
    fn invalid_messages_rejected() {
        assert!(SectionMessage::new(vec![0, 4], 4).is_err());
        assert!(SectionMessage::new(vec![], 4).is_err());
        let d = toy_dictionary();
        let short = SectionMessage::new(vec![0, 1], 4).unwrap();
        assert!(encode(&short, &d).is_err());
        let wide = SectionMessage::new(vec![0, 1, 5], 8).unwrap();
        assert!(encode(&wide, &d).is_err());
    }

    #[test]
    fn mistakes() {
        let a = SectionMessage::new(vec![0, 1, 2, 3], 4).unwrap();
        let b = SectionMessage::new(vec![0, 2, 2, 0], 4).unwrap();
        let m = count_mistakes(&a, &b).unwrap();
        assert_eq!((m.count, m.rate), (2, 0.5));
        assert_eq!(count_mistakes(&a, &a).unwrap().count, 0);
        let c = SectionMessage::new(vec![1, 0, 3, 2], 4).unwrap();
        assert_eq!(count_mistakes(&a, &c).unwrap().rate, 1.0);
        let short = SectionMessage::new(vec![0], 4).unwrap();
        assert!(count_mistakes(&a, &short).is_err());
    }

    #[test]
    fn power() {
        assert_eq!(codeword_power(&[0.0; 8]), 0.0);
        let s = CodeSpec::with_code_length(2, 4, 16).unwrap();
        let d = Dictionary::generate(&s, 3.0, DictionaryKind::Bernoulli, 5).unwrap();
        // a single column has power P / L exactly
        assert!((codeword_power(d.column(0)) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn mean_bernoulli_power_is_p() {
        let s = CodeSpec::with_code_length(8, 2, 32).unwrap();
        let p = 2.0;
        let mut total = 0.0;
        let trials = 10_000;
        for seed in 0..trials {
            let d = Dictionary::generate(&s, p, DictionaryKind::Bernoulli, seed).unwrap();
            let msg = SectionMessage::random(8, 2, seed);
            total += codeword_power(&encode(&msg, &d).unwrap());
        }
        let mean = total / trials as f64;
        assert!((mean - p).abs() < 0.02 * p, "mean power {mean}");
    }
}

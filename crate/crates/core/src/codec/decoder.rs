//! Exhaustive least-squares decoding.
//!
//! `||y - X beta||^2 = ||y||^2 - 2 sum_l <y, X_{j_l}> + sum_{l,m} G_{j_l j_m}`
//! with `G = X^T X`, so after forming the column correlations and the Gram
//! matrix each codeword costs O(1) amortized instead of O(n). The search
//! walks messages in lexicographic order, carrying for every column of the
//! remaining sections the accumulated cross term with the columns already
//! chosen.

use super::dictionary::{codebook_size, Dictionary};
use super::message::{ReceivedWord, SectionMessage};
use crate::error::{domain, Result};

/// Default cap on `M^L`.
pub const DEFAULT_DECODE_CAP: u64 = 1 << 24;

/// Output of the least-squares decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub message: SectionMessage,
    /// `||y - X beta_hat||^2`.
    pub residual: f64,
}

struct Search<'a> {
    sections: usize,
    width: usize,
    /// `-2 <y, X_j> + G_jj`
    unary: Vec<f64>,
    gram: &'a [f64],
    /// `cross[level][j]` = sum over chosen columns `c` of `G[c][j]`, for
    /// columns `j` in sections `>= level`.
    cross: Vec<Vec<f64>>,
    chosen: Vec<usize>,
    best_cost: f64,
    best: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, level: usize, partial: f64) {
        let base = level * self.width;
        if level + 1 == self.sections {
            for i in 0..self.width {
                let j = base + i;
                let cost = partial + self.unary[j] + 2.0 * self.cross[level][j];
                // strict: the first (lexicographically smallest) minimizer wins ties
                if cost < self.best_cost {
                    self.best_cost = cost;
                    self.chosen[level] = i;
                    self.best.copy_from_slice(&self.chosen);
                }
            }
            return;
        }
        let n_cols = self.sections * self.width;
        for i in 0..self.width {
            let j = base + i;
            let cost = partial + self.unary[j] + 2.0 * self.cross[level][j];
            self.chosen[level] = i;
            let (head, tail) = self.cross.split_at_mut(level + 1);
            let (cur, next) = (&head[level], &mut tail[0]);
            let row = &self.gram[j * n_cols..(j + 1) * n_cols];
            for k in base + self.width..n_cols {
                next[k] = cur[k] + row[k];
            }
            self.descend(level + 1, cost);
        }
    }
}

/// Global minimizer of `||y - X beta||^2` over all `M^L` section
/// selections, ties broken toward the lexicographically smallest index
/// array. Refuses codebooks larger than `cap`.
pub fn least_squares_decode(dict: &Dictionary, y: &ReceivedWord, cap: u64) -> Result<Decoded> {
    if y.y.len() != dict.rows() {
        return Err(domain(format!(
            "received word has length {}, dictionary has {} rows",
            y.y.len(),
            dict.rows()
        )));
    }
    codebook_size(dict.sections(), dict.section_size(), cap)?;
    let n_cols = dict.cols();
    let mut gram = vec![0.0; n_cols * n_cols];
    for a in 0..n_cols {
        let ca = dict.column(a);
        for b in a..n_cols {
            let g: f64 = ca.iter().zip(dict.column(b)).map(|(p, q)| p * q).sum();
            gram[a * n_cols + b] = g;
            gram[b * n_cols + a] = g;
        }
    }
    let unary: Vec<f64> = (0..n_cols)
        .map(|j| {
            let corr: f64 = dict.column(j).iter().zip(&y.y).map(|(p, q)| p * q).sum();
            gram[j * n_cols + j] - 2.0 * corr
        })
        .collect();
    let sections = dict.sections();
    let mut search = Search {
        sections,
        width: dict.section_size(),
        unary,
        gram: &gram,
        cross: vec![vec![0.0; n_cols]; sections],
        chosen: vec![0; sections],
        best_cost: f64::INFINITY,
        best: vec![0; sections],
    };
    search.descend(0, 0.0);
    let norm_y: f64 = y.y.iter().map(|v| v * v).sum();
    Ok(Decoded {
        message: SectionMessage::new(search.best, dict.section_size())?,
        residual: (norm_y + search.best_cost).max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{awgn_channel, encode, DictionaryKind};
    use crate::error::Error;
    use crate::params::CodeSpec;

    /// Independent oracle: residual of every codeword computed directly.
    fn brute_force(dict: &Dictionary, y: &[f64]) -> Vec<usize> {
        let (l, m) = (dict.sections(), dict.section_size());
        let total = m.pow(l as u32);
        let mut best = (f64::INFINITY, vec![]);
        for code in 0..total {
            // most significant digit = section 0, so `code` order is lexicographic
            let mut idx = vec![0; l];
            let mut rest = code;
            for sec in (0..l).rev() {
                idx[sec] = rest % m;
                rest /= m;
            }
            let mut r = 0.0;
            for (i, yi) in y.iter().enumerate() {
                let c: f64 = (0..l).map(|s| dict.section_column(s, idx[s])[i]).sum();
                r += (yi - c).powi(2);
            }
            if r < best.0 {
                best = (r, idx);
            }
        }
        best.1
    }

    #[test]
    fn matches_brute_force_two_sections() {
        let spec = CodeSpec::with_code_length(2, 4, 6).unwrap();
        for seed in 0..100 {
            let d = Dictionary::generate(&spec, 3.0, DictionaryKind::Bernoulli, seed).unwrap();
            let msg = SectionMessage::random(2, 4, seed);
            let y = awgn_channel(&encode(&msg, &d).unwrap(), 1.0, seed).unwrap();
            let got = least_squares_decode(&d, &y, DEFAULT_DECODE_CAP).unwrap();
            assert_eq!(got.message.indices(), brute_force(&d, &y.y).as_slice(), "seed {seed}");
        }
    }

    #[test]
    fn matches_brute_force_gaussian_deeper() {
        let spec = CodeSpec::with_code_length(4, 3, 5).unwrap();
        for seed in 0..30 {
            let d = Dictionary::generate(&spec, 1.0, DictionaryKind::Gaussian, seed).unwrap();
            let msg = SectionMessage::random(4, 3, seed);
            let y = awgn_channel(&encode(&msg, &d).unwrap(), 0.5, seed).unwrap();
            let got = least_squares_decode(&d, &y, DEFAULT_DECODE_CAP).unwrap();
            assert_eq!(got.message.indices(), brute_force(&d, &y.y).as_slice());
            let c = encode(&got.message, &d).unwrap();
            let r: f64 = c.iter().zip(&y.y).map(|(a, b)| (a - b).powi(2)).sum();
            assert!((r - got.residual).abs() < 1e-9 * r.max(1.0));
        }
    }

    #[test]
    fn one_section_two_columns() {
        let d = Dictionary::from_columns(2, 1, 2, DictionaryKind::Gaussian, 1.0, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        let y = ReceivedWord { y: vec![0.2, 0.9] };
        assert_eq!(least_squares_decode(&d, &y, 16).unwrap().message.indices(), &[1]);
        let y = ReceivedWord { y: vec![0.6, 0.5] };
        assert_eq!(least_squares_decode(&d, &y, 16).unwrap().message.indices(), &[0]);
    }

    #[test]
    fn ties_go_to_smallest_index() {
        // identical columns: every message ties
        let d = Dictionary::from_columns(1, 2, 3, DictionaryKind::Gaussian, 1.0, vec![1.0; 6]).unwrap();
        let y = ReceivedWord { y: vec![2.0] };
        assert_eq!(least_squares_decode(&d, &y, 16).unwrap().message.indices(), &[0, 0]);
    }

    #[test]
    fn noiseless_round_trip() {
        let spec = CodeSpec::with_code_length(4, 8, 24).unwrap();
        let mut checked = 0;
        for seed in 0..100 {
            let d = Dictionary::generate(&spec, 4.0, DictionaryKind::Bernoulli, seed).unwrap();
            if d.has_duplicate_codewords(DEFAULT_DECODE_CAP).unwrap() {
                continue;
            }
            let msg = SectionMessage::random(4, 8, seed + 1000);
            let y = awgn_channel(&encode(&msg, &d).unwrap(), 0.0, seed).unwrap();
            let got = least_squares_decode(&d, &y, DEFAULT_DECODE_CAP).unwrap();
            assert_eq!(got.message, msg);
            checked += 1;
        }
        assert!(checked > 90);
    }

    #[test]
    fn cap_and_shape_errors() {
        let spec = CodeSpec::with_code_length(6, 8, 30).unwrap();
        let d = Dictionary::generate(&spec, 1.0, DictionaryKind::Bernoulli, 0).unwrap();
        let y = ReceivedWord { y: vec![0.0; 30] };
        let err = least_squares_decode(&d, &y, 1000).unwrap_err();
        assert!(matches!(err, Error::Resource(ref m) if m.contains("262144")), "{err}");
        let short = ReceivedWord { y: vec![0.0; 29] };
        assert!(least_squares_decode(&d, &short, DEFAULT_DECODE_CAP).is_err());
    }
}

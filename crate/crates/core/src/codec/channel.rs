use rand::RngExt;
use rand_distr::StandardNormal;

use super::message::ReceivedWord;
use super::rng::{stream_rng, Stream};
use crate::error::{domain, Result};

/// Adds i.i.d. `N(0, sigma2)` noise drawn from the noise stream of `seed`.
/// `sigma2 = 0` returns the codeword unchanged.
pub fn awgn_channel(c: &[f64], sigma2: f64, seed: u64) -> Result<ReceivedWord> {
    if !(sigma2 >= 0.0) || !sigma2.is_finite() {
        return Err(domain(format!("noise variance must be non-negative, got {sigma2}")));
    }
    if sigma2 == 0.0 {
        return Ok(ReceivedWord { y: c.to_vec() });
    }
    let sd = sigma2.sqrt();
    let mut rng = stream_rng(seed, Stream::Noise);
    let y = c
        .iter()
        .map(|&ci| ci + sd * rng.sample::<f64, _>(StandardNormal))
        .collect();
    Ok(ReceivedWord { y })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_passthrough() {
        let c = vec![1.0, -2.0, 0.5];
        assert_eq!(awgn_channel(&c, 0.0, 3).unwrap().y, c);
        assert!(awgn_channel(&c, -1.0, 3).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let c = vec![0.0; 16];
        assert_eq!(awgn_channel(&c, 1.0, 5).unwrap(), awgn_channel(&c, 1.0, 5).unwrap());
        assert_ne!(awgn_channel(&c, 1.0, 5).unwrap(), awgn_channel(&c, 1.0, 6).unwrap());
    }

    #[test]
    fn noise_variance_large_sample() {
        let n = 1_000_000;
        let c: Vec<f64> = (0..n).map(|i| (i % 7) as f64).collect();
        let y = awgn_channel(&c, 2.0, 17).unwrap().y;
        let e: Vec<f64> = y.iter().zip(&c).map(|(a, b)| a - b).collect();
        let mean = e.iter().sum::<f64>() / n as f64;
        let var = e.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!((var - 2.0).abs() < 0.02, "variance {var}");
    }
}

//! Complex AWGN and SNR-per-bit bookkeeping.
//!
//! Noise variance is quoted per real dimension: `½E|w|² = σ_w²`. Each BPSK
//! symbol carries half an information bit (rate-1/2 coding), which makes the
//! average SNR per bit `2/σ_w²`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::modem::BasebandSignal;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    /// Per-dimension variance σ_w².
    pub sigma_w_sq: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(sigma_w_sq: f64, seed: u64) -> Result<Self> {
        if sigma_w_sq.is_nan() || sigma_w_sq < 0.0 || !sigma_w_sq.is_finite() {
            return Err(Error::invalid(format!(
                "noise variance must be finite and >= 0, got {sigma_w_sq}"
            )));
        }
        Ok(Self { sigma_w_sq, seed })
    }

    pub fn from_snr_per_bit(snr_db: f64, seed: u64) -> Result<Self> {
        Self::new(snr_per_bit_to_sigma(snr_db), seed)
    }
}

/// σ_w² for a given average SNR per bit in dB, `σ_w² = 2 / 10^(snr/10)`.
/// `+∞` maps to zero.
pub fn snr_per_bit_to_sigma(snr_db: f64) -> f64 {
    if snr_db == f64::INFINITY {
        return 0.0;
    }
    2.0 / 10f64.powf(snr_db / 10.0)
}

/// Inverse of [`snr_per_bit_to_sigma`].
pub fn sigma_to_snr_per_bit(sigma_w_sq: f64) -> f64 {
    10.0 * (2.0 / sigma_w_sq).log10()
}

/// Adds noise of per-dimension variance `sigma_w_sq` in place, drawing from
/// `rng`.
pub fn add_awgn_in_place<R: Rng + ?Sized>(samples: &mut [Complex64], sigma_w_sq: f64, rng: &mut R) {
    if sigma_w_sq == 0.0 {
        return;
    }
    let sigma = sigma_w_sq.sqrt();
    for s in samples {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *s += Complex64::new(sigma * re, sigma * im);
    }
}

/// Returns `signal` plus seeded complex white Gaussian noise.
pub fn add_awgn(signal: &BasebandSignal, noise: &NoiseSpec) -> Result<BasebandSignal> {
    if noise.sigma_w_sq.is_nan() || noise.sigma_w_sq < 0.0 {
        return Err(Error::invalid(format!(
            "noise variance must be >= 0, got {}",
            noise.sigma_w_sq
        )));
    }
    let mut out = signal.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    add_awgn_in_place(&mut out.samples, noise.sigma_w_sq, &mut rng);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeros(n: usize) -> BasebandSignal {
        BasebandSignal {
            samples: vec![Complex64::default(); n],
            sample_rate: 1.0,
        }
    }

    #[test]
    fn zero_variance_is_identity() {
        let sig = BasebandSignal {
            samples: vec![Complex64::new(1.0, -2.0), Complex64::new(0.5, 0.25)],
            sample_rate: 5.0,
        };
        let out = add_awgn(&sig, &NoiseSpec::new(0.0, 3).unwrap()).unwrap();
        assert_eq!(out, sig);
    }

    #[test]
    fn negative_variance_rejected() {
        assert!(NoiseSpec::new(-0.1, 0).is_err());
        let bad = NoiseSpec {
            sigma_w_sq: -1.0,
            seed: 0,
        };
        assert!(add_awgn(&zeros(4), &bad).is_err());
    }

    #[test]
    fn per_component_variance() {
        let n = 1_000_000;
        let out = add_awgn(&zeros(n), &NoiseSpec::new(1.0, 11).unwrap()).unwrap();
        let (mut sr, mut si, mut srr, mut sii, mut sri) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for s in &out.samples {
            sr += s.re;
            si += s.im;
            srr += s.re * s.re;
            sii += s.im * s.im;
            sri += s.re * s.im;
        }
        let nf = n as f64;
        let var_re = srr / nf - (sr / nf).powi(2);
        let var_im = sii / nf - (si / nf).powi(2);
        assert!((var_re - 1.0).abs() < 0.005, "{var_re}");
        assert!((var_im - 1.0).abs() < 0.005, "{var_im}");
        // I/Q sample correlation has standard error 1/√n.
        let corr = sri / nf;
        assert!(corr.abs() < 3.0 / nf.sqrt(), "{corr}");
    }

    #[test]
    fn seeded_noise_is_reproducible() {
        let spec = NoiseSpec::new(0.7, 42).unwrap();
        let a = add_awgn(&zeros(1000), &spec).unwrap();
        let b = add_awgn(&zeros(1000), &spec).unwrap();
        assert_eq!(a, b);
        let c = add_awgn(&zeros(1000), &NoiseSpec::new(0.7, 43).unwrap()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn snr_conversion_points() {
        assert!((snr_per_bit_to_sigma(10.0 * 2f64.log10()) - 1.0).abs() < 1e-12);
        assert!((snr_per_bit_to_sigma(3.0103) - 1.0).abs() < 1e-5);
        assert_eq!(snr_per_bit_to_sigma(0.0), 2.0);
        assert_eq!(snr_per_bit_to_sigma(f64::INFINITY), 0.0);
    }

    #[test]
    fn snr_round_trip() {
        for snr in [-5.0, 0.0, 1.3, 2.0, 8.0, 17.5] {
            let back = sigma_to_snr_per_bit(snr_per_bit_to_sigma(snr));
            assert!((back - snr).abs() < 1e-12, "{snr} -> {back}");
        }
    }
}

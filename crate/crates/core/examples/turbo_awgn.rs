//! Turbo code alone over `x = S + z`, BER per iteration count.
//!
//! cargo run --release --example turbo_awgn

use hilbert_ofdm::channel::snr_per_bit_to_sigma;
use hilbert_ofdm::turbo::{TurboCode, TurboConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn main() -> hilbert_ofdm::Result<()> {
    let snr_db = 1.0;
    let frames = 200;
    let var = snr_per_bit_to_sigma(snr_db) / 2.0;
    println!("SNR per bit {snr_db} dB, {frames} frames of 1024 bits");
    for iterations in [1, 2, 4, 8] {
        let code = TurboCode::new(TurboConfig {
            iterations,
            ..Default::default()
        })?;
        let mut errors = 0usize;
        for f in 0..frames {
            let mut rng = ChaCha8Rng::seed_from_u64(f);
            let info: Vec<u8> = (0..1024).map(|_| rng.random_range(0..2u8)).collect();
            let llrs: Vec<f64> = code
                .encode(&info)?
                .coded_bits
                .iter()
                .map(|&b| {
                    let z: f64 = rng.sample(StandardNormal);
                    let x = if b == 0 { 1.0 } else { -1.0 } + var.sqrt() * z;
                    2.0 * x / var
                })
                .collect();
            let decided = code.decode(&llrs)?;
            errors += decided.iter().zip(&info).filter(|(a, b)| a != b).count();
        }
        println!(
            "{iterations} iterations: BER {:.3e}",
            errors as f64 / (frames * 1024) as f64
        );
    }
    Ok(())
}

//! Averaged periodogram of a five-subcarrier signal. Writes
//! `multicarrier_spectrum.csv`.
//!
//! cargo run --example multicarrier_spectrum

use std::fs::File;

use hilbert_ofdm::metrics::periodogram;
use hilbert_ofdm::modem::{Bpsk, Modem, ModemConfig, SymbolGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> hilbert_ofdm::Result<()> {
    let cfg = ModemConfig::new(5, 16, 1.0, 0.161, 0.25)?;
    let modem = Modem::new(cfg)?;
    let k = 4000;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let symbols = (0..5 * k)
        .map(|_| Bpsk::from_bit(rng.random_range(0..2u8)))
        .collect();
    let signal = modem.modulate(&SymbolGrid::new(5, k, symbols)?)?;
    let spectrum = periodogram(&signal.samples, 1024)?;
    spectrum.write_csv(File::create("multicarrier_spectrum.csv")?)?;

    let total = spectrum.total_power();
    for i in 0..5 {
        let lo = cfg.carrier_omega_over_pi(i);
        // Offset above the carrier, wrapped onto [0, 2).
        let share = spectrum.power_where(|w| (w - lo).rem_euclid(2.0) < 0.4) / total;
        println!(
            "subcarrier {i}: ω/π from {lo:.1}, {:.1}% of power",
            100.0 * share
        );
    }
    Ok(())
}

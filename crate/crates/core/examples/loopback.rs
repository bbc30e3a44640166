//! Noiseless modulate/demodulate round trip for both window lengths.
//!
//! cargo run --example loopback

use hilbert_ofdm::modem::ModemConfig;
use hilbert_ofdm::sim::run_loopback;

fn main() -> hilbert_ofdm::Result<()> {
    for w in [8, 16] {
        let r = run_loopback(ModemConfig::new(5, w, 1.0, 0.161, 0.25)?, 10_000, 1)?;
        println!(
            "w={w:>2}: {} bits, {} errors, max |x-S| = {:.3e}, SIR {:.2} dB (pulse prediction {:.2} dB)",
            r.bits, r.bit_errors, r.max_abs_error, r.measured_sir_db, r.predicted_sir_db
        );
    }
    Ok(())
}

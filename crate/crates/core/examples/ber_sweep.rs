//! Coded BER sweep through the full modem, with the uncoded reference.
//! Writes `ber.csv`.
//!
//! cargo run --release --example ber_sweep

use std::path::Path;

use hilbert_ofdm::sim::{run_ber_sweep, save_ber_csv, SimulationConfig};

fn main() -> hilbert_ofdm::Result<()> {
    let cfg = SimulationConfig {
        snr_db: vec![0.0, 0.5, 1.0, 1.5, 2.0],
        max_frames: 2000,
        ..Default::default()
    };
    let points = run_ber_sweep(&cfg)?;
    println!(
        "{:>6} {:>10} {:>8} {:>10} {:>10}  stop",
        "snr", "bits", "errors", "ber", "uncoded"
    );
    for p in &points {
        println!(
            "{:>6.1} {:>10} {:>8} {:>10.3e} {:>10.3e}  {:?}",
            p.snr_db, p.bits, p.errors, p.ber, p.theory_ber, p.stop
        );
    }
    save_ber_csv(&points, Path::new("ber.csv"))?;
    Ok(())
}

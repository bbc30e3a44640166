//! Magnitude response of `p` and of the composite `p + j·q` for both
//! quadrature pulses. Writes spectrum CSVs to the current directory.
//!
//! cargo run --example analytic_spectrum

use std::fs::File;

use hilbert_ofdm::metrics::dft_magnitude_db;
use hilbert_ofdm::pulse::{analytic_filter, sample_pulse, PulseKind, PulseSpec};

fn main() -> hilbert_ofdm::Result<()> {
    let spec = PulseSpec::new(1.0, 0.161, 0.25, 5.0, 100)?;
    let exclude = 2.0 * spec.transition_edge() / spec.sample_rate();
    let rrc = sample_pulse(PulseKind::Rrc, &spec)?;
    let cases = [
        ("rrc", rrc.taps),
        ("rrc_ht", analytic_filter(PulseKind::Hilbert, &spec)?.taps),
        (
            "rrc_mht",
            analytic_filter(PulseKind::ModifiedHilbert, &spec)?.taps,
        ),
    ];
    for (name, taps) in cases {
        let s = dft_magnitude_db(&taps, 4096)?;
        let path = format!("spectrum_{name}.csv");
        s.write_csv(File::create(&path)?)?;
        println!(
            "{name:>8}: negative-frequency share {:.2e} (all), {:.2e} (|ω/π| ≥ {exclude:.3}) -> {path}",
            s.negative_fraction(0.0),
            s.negative_fraction(exclude)
        );
    }
    Ok(())
}

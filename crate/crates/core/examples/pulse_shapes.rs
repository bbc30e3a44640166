//! Samples the three pulses and prints a few taps around the centre.
//!
//! cargo run --example pulse_shapes

use hilbert_ofdm::pulse::{sample_pulse, PulseKind, PulseSpec};

fn main() -> hilbert_ofdm::Result<()> {
    let spec = PulseSpec::new(1.0, 0.161, 0.25, 5.0, 100)?;
    println!(
        "{:>6} {:>8} {:>12} {:>12} {:>12}",
        "m", "t", "rrc", "ht", "mht"
    );
    let filters: Vec<_> = PulseKind::ALL
        .iter()
        .map(|&k| sample_pulse(k, &spec))
        .collect::<Result<_, _>>()?;
    for (j, (m, t)) in filters[0]
        .grid()
        .enumerate()
        .filter(|(_, (m, _))| m.abs() <= 6)
    {
        println!(
            "{m:>6} {t:>8.2} {:>12.6} {:>12.6} {:>12.6}",
            filters[0].taps[j].re, filters[1].taps[j].re, filters[2].taps[j].re
        );
    }
    for (kind, f) in PulseKind::ALL.iter().zip(&filters) {
        println!("{kind}: {} taps, energy {:.12}", f.len(), f.energy());
    }
    Ok(())
}

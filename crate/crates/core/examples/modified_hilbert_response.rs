//! Frequency response of the modified Hilbert transformer and the three
//! parts of `p̂ₘ(t)`.
//!
//! cargo run --example modified_hilbert_response

use hilbert_ofdm::pulse::{
    hilbert_rrc, mod_hilbert_flat, mod_hilbert_ramp, mod_hilbert_response, mod_hilbert_rrc,
    PulseSpec,
};

fn main() -> hilbert_ofdm::Result<()> {
    let spec = PulseSpec::new(1.0, 0.161, 0.25, 5.0, 100)?;
    let edge = spec.transition_edge();
    println!("transition band |F| <= {edge:.5} Hz");
    for k in -4..=4 {
        let f = 0.5 * edge * k as f64;
        let h = mod_hilbert_response(f, &spec);
        println!(
            "F = {f:+.4}  H = {:+.4} {:+.4}j  phase/π = {:+.3}",
            h.re,
            h.im,
            h.arg() / std::f64::consts::PI
        );
    }
    println!();
    println!(
        "{:>6} {:>11} {:>11} {:>11} {:>11}",
        "t", "ramp", "flat", "p̂ₘ", "p̂"
    );
    for k in -8..=8 {
        let t = 0.25 * k as f64;
        println!(
            "{t:>6.2} {:>11.6} {:>11.6} {:>11.6} {:>11.6}",
            mod_hilbert_ramp(t, &spec),
            mod_hilbert_flat(t, &spec),
            mod_hilbert_rrc(t, &spec),
            hilbert_rrc(t, &spec)
        );
    }
    Ok(())
}

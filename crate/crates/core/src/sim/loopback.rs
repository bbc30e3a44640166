//! Noiseless transmit/receive check of the multicarrier modem.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metrics::{autocorrelate, sir_db};
use crate::modem::{Bpsk, Modem, ModemConfig, SymbolGrid};
use crate::pulse::SampledFilter;

#[derive(Clone, Debug, PartialEq)]
pub struct LoopbackReport {
    pub subcarriers: usize,
    pub window_multiple: usize,
    pub symbols_per_carrier: usize,
    pub bits: u64,
    pub bit_errors: u64,
    pub ber: f64,
    /// `max |x - S|` over every subcarrier and symbol.
    pub max_abs_error: f64,
    /// `1 / mean((x - S)²)` in dB, away from the frame edges.
    pub measured_sir_db: f64,
    /// SIR of `R_pp + R_qq` at the symbol lags.
    pub predicted_sir_db: f64,
}

impl LoopbackReport {
    pub fn passed(&self) -> bool {
        self.bit_errors == 0
    }
}

/// Sends `symbols_per_carrier` random BPSK symbols on every subcarrier and
/// demodulates them without noise.
pub fn run_loopback(
    cfg: ModemConfig,
    symbols_per_carrier: usize,
    seed: u64,
) -> Result<LoopbackReport> {
    if symbols_per_carrier == 0 {
        return Err(Error::invalid("need at least one symbol per subcarrier"));
    }
    let modem = Modem::new(cfg)?;
    let n = cfg.subcarriers();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols: Vec<Bpsk> = (0..n * symbols_per_carrier)
        .map(|_| Bpsk::from_bit(rng.random_range(0..2u8)))
        .collect();
    let grid = SymbolGrid::new(n, symbols_per_carrier, symbols)?;
    let soft = modem.demodulate(&modem.modulate(&grid)?)?;

    // Symbols this close to either end miss part of their interference.
    let edge = 2 * cfg.window_multiple();
    let mut bit_errors = 0u64;
    let mut max_abs_error = 0.0f64;
    let (mut sq, mut count) = (0.0, 0usize);
    for i in 0..n {
        for k in 0..symbols_per_carrier {
            let s = grid.get(i, k);
            let x = soft.get(i, k);
            let e = x - s.value();
            if Bpsk::decide(x) != s {
                bit_errors += 1;
            }
            max_abs_error = max_abs_error.max(e.abs());
            if k >= edge && k + edge < symbols_per_carrier {
                sq += e * e;
                count += 1;
            }
        }
    }
    let measured_sir_db = if count == 0 {
        f64::NAN
    } else if sq == 0.0 {
        f64::INFINITY
    } else {
        -10.0 * (sq / count as f64).log10()
    };

    let f = modem.filter();
    let real = SampledFilter::from_real(f.real_parts(), f.sample_period);
    let imag = SampledFilter::from_real(f.imag_parts(), f.sample_period);
    let combined = autocorrelate(&real)?.add(&autocorrelate(&imag)?)?;
    let predicted_sir_db = sir_db(&combined, cfg.interpolation())?;

    let bits = (n * symbols_per_carrier) as u64;
    Ok(LoopbackReport {
        subcarriers: n,
        window_multiple: cfg.window_multiple(),
        symbols_per_carrier,
        bits,
        bit_errors,
        ber: bit_errors as f64 / bits as f64,
        max_abs_error,
        measured_sir_db,
        predicted_sir_db,
    })
}

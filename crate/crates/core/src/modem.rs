//! N-subcarrier transmitter and matched-filter receiver.
//!
//! Subcarrier `i` sits at digital frequency `ω_i = 2πi/N` and the sample rate
//! is `N/T`, so the interpolation factor equals the subcarrier count. Each
//! subcarrier carries real BPSK symbols through the complex analytic filter
//! `h = p + j·q`. The receiver mixes down, correlates with `h`, and keeps the
//! real part of the output scaled by `1/Σ|h|²`.
//!
//! A frame of `K` symbols per subcarrier produces `(K-1)·N + 2M + 1` samples:
//! the full transmit filter tail is kept so every symbol sees the whole
//! matched filter. The peak for symbol `k` sits at `k·N + 2M` in the full
//! matched filter output.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pulse::{analytic_filter, PulseKind, PulseSpec, SampledFilter};

/// Modem geometry: `N` subcarriers and a filter window `M = w·N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModemConfig {
    subcarriers: usize,
    window_multiple: usize,
    pulse: PulseSpec,
    quadrature: PulseKind,
}

impl ModemConfig {
    /// Sample rate is fixed at `N/T` so that `I = N`.
    pub fn new(
        subcarriers: usize,
        window_multiple: usize,
        symbol_period: f64,
        rolloff: f64,
        transition: f64,
    ) -> Result<Self> {
        if subcarriers == 0 {
            return Err(Error::invalid("need at least one subcarrier"));
        }
        if window_multiple == 0 {
            return Err(Error::invalid("window multiple must be >= 1"));
        }
        let pulse = PulseSpec::new(
            symbol_period,
            rolloff,
            transition,
            subcarriers as f64 / symbol_period,
            window_multiple * subcarriers,
        )?;
        Ok(Self {
            subcarriers,
            window_multiple,
            pulse,
            quadrature: PulseKind::ModifiedHilbert,
        })
    }

    /// Selects the quadrature pulse (default: modified Hilbert transform).
    pub fn with_quadrature(mut self, kind: PulseKind) -> Result<Self> {
        if kind == PulseKind::Rrc {
            return Err(Error::invalid(
                "quadrature pulse must be a Hilbert transform",
            ));
        }
        self.quadrature = kind;
        Ok(self)
    }

    pub fn subcarriers(&self) -> usize {
        self.subcarriers
    }

    pub fn window_multiple(&self) -> usize {
        self.window_multiple
    }

    pub fn pulse(&self) -> &PulseSpec {
        &self.pulse
    }

    pub fn quadrature(&self) -> PulseKind {
        self.quadrature
    }

    /// `I = T/Ts`, equal to `N`.
    pub fn interpolation(&self) -> usize {
        self.subcarriers
    }

    /// `ω_i / π` of subcarrier `i`.
    pub fn carrier_omega_over_pi(&self, i: usize) -> f64 {
        2.0 * i as f64 / self.subcarriers as f64
    }

    /// Samples produced for `symbols` symbols per subcarrier.
    pub fn signal_len(&self, symbols: usize) -> usize {
        if symbols == 0 {
            0
        } else {
            (symbols - 1) * self.interpolation() + self.pulse.num_taps()
        }
    }
}

/// Delay from a symbol's impulse to its matched-filter peak for a filter of
/// `num_taps` taps.
pub fn matched_filter_delay(num_taps: usize) -> usize {
    num_taps.saturating_sub(1)
}

/// Index of the first symbol's matched-filter peak in the full convolution
/// of the received signal with the matched filter.
pub fn symbol_sampling_offset(cfg: &ModemConfig) -> usize {
    matched_filter_delay(cfg.pulse().num_taps())
}

/// A real BPSK symbol. Bit 0 maps to +1, bit 1 to -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bpsk {
    Plus,
    Minus,
}

impl Bpsk {
    pub fn from_bit(bit: u8) -> Self {
        if bit == 0 {
            Bpsk::Plus
        } else {
            Bpsk::Minus
        }
    }

    pub fn to_bit(self) -> u8 {
        match self {
            Bpsk::Plus => 0,
            Bpsk::Minus => 1,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Bpsk::Plus => 1.0,
            Bpsk::Minus => -1.0,
        }
    }

    /// Hard decision; zero decides +1.
    pub fn decide(x: f64) -> Self {
        if x < 0.0 {
            Bpsk::Minus
        } else {
            Bpsk::Plus
        }
    }
}

/// Symbols `S_{i,k}` for subcarrier `i` and symbol time `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolGrid {
    subcarriers: usize,
    symbols_per_carrier: usize,
    symbols: Vec<Bpsk>,
}

impl SymbolGrid {
    /// `symbols` is laid out subcarrier-major: entry `i·K + k`.
    pub fn new(subcarriers: usize, symbols_per_carrier: usize, symbols: Vec<Bpsk>) -> Result<Self> {
        let expected = subcarriers * symbols_per_carrier;
        if symbols.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: symbols.len(),
            });
        }
        Ok(Self {
            subcarriers,
            symbols_per_carrier,
            symbols,
        })
    }

    /// Demultiplexes a serial symbol stream: stream index `j` goes to
    /// subcarrier `j mod N` at time `j / N`. The tail is filled with `pad`.
    pub fn from_stream(subcarriers: usize, stream: &[Bpsk], mut pad: impl FnMut() -> Bpsk) -> Self {
        let k = stream.len().div_ceil(subcarriers);
        let mut symbols = vec![Bpsk::Plus; subcarriers * k];
        for j in 0..subcarriers * k {
            let sym = stream.get(j).copied().unwrap_or_else(&mut pad);
            symbols[(j % subcarriers) * k + j / subcarriers] = sym;
        }
        Self {
            subcarriers,
            symbols_per_carrier: k,
            symbols,
        }
    }

    pub fn subcarriers(&self) -> usize {
        self.subcarriers
    }

    pub fn symbols_per_carrier(&self) -> usize {
        self.symbols_per_carrier
    }

    pub fn get(&self, carrier: usize, k: usize) -> Bpsk {
        self.symbols[carrier * self.symbols_per_carrier + k]
    }

    pub fn carrier(&self, i: usize) -> &[Bpsk] {
        let k = self.symbols_per_carrier;
        &self.symbols[i * k..(i + 1) * k]
    }
}

/// Complex baseband samples `s̃_o(mTs)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasebandSignal {
    pub samples: Vec<Complex64>,
    pub sample_rate: f64,
}

impl BasebandSignal {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

impl std::ops::Add for &BasebandSignal {
    type Output = BasebandSignal;

    fn add(self, rhs: &BasebandSignal) -> BasebandSignal {
        let n = self.samples.len().max(rhs.samples.len());
        let mut samples = vec![Complex64::default(); n];
        for (dst, s) in samples.iter_mut().zip(&self.samples) {
            *dst += s;
        }
        for (dst, s) in samples.iter_mut().zip(&rhs.samples) {
            *dst += s;
        }
        BasebandSignal {
            samples,
            sample_rate: self.sample_rate,
        }
    }
}

/// Soft matched-filter outputs `x_{i,k}`, same layout as [`SymbolGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct SoftGrid {
    pub subcarriers: usize,
    pub symbols_per_carrier: usize,
    pub values: Vec<f64>,
}

impl SoftGrid {
    pub fn get(&self, carrier: usize, k: usize) -> f64 {
        self.values[carrier * self.symbols_per_carrier + k]
    }

    pub fn carrier(&self, i: usize) -> &[f64] {
        let k = self.symbols_per_carrier;
        &self.values[i * k..(i + 1) * k]
    }

    /// Re-serializes in the order of [`SymbolGrid::from_stream`].
    pub fn to_stream(&self) -> Vec<f64> {
        let n = self.subcarriers;
        (0..n * self.symbols_per_carrier)
            .map(|j| self.get(j % n, j / n))
            .collect()
    }
}

/// Transmitter and receiver sharing one set of filter taps.
#[derive(Clone, Debug)]
pub struct Modem {
    cfg: ModemConfig,
    filter: SampledFilter,
    /// Filter taps premultiplied by `e^{jω_i j}` for each subcarrier.
    carrier_taps: Vec<Vec<Complex64>>,
    gain: f64,
}

impl Modem {
    pub fn new(cfg: ModemConfig) -> Result<Self> {
        let filter = analytic_filter(cfg.quadrature, &cfg.pulse)?;
        Self::with_filter(cfg, filter)
    }

    /// Uses caller-supplied taps instead of the closed-form pulses.
    pub fn with_filter(cfg: ModemConfig, filter: SampledFilter) -> Result<Self> {
        if filter.is_empty() {
            return Err(Error::invalid("empty transmit filter"));
        }
        let gain = filter.energy();
        if gain == 0.0 {
            return Err(Error::ZeroEnergy);
        }
        let n = cfg.subcarriers;
        let phasors: Vec<Complex64> = (0..n)
            .map(|r| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / n as f64))
            .collect();
        let carrier_taps = (0..n)
            .map(|i| {
                filter
                    .taps
                    .iter()
                    .enumerate()
                    .map(|(j, &h)| h * phasors[(i * j) % n])
                    .collect()
            })
            .collect();
        Ok(Self {
            cfg,
            filter,
            carrier_taps,
            gain,
        })
    }

    pub fn config(&self) -> &ModemConfig {
        &self.cfg
    }

    pub fn filter(&self) -> &SampledFilter {
        &self.filter
    }

    /// Matched-filter gain `Σ|h|² = R_pp(0) + R_qq(0)`, measured on the
    /// truncated taps.
    pub fn gain(&self) -> f64 {
        self.gain
    }

    fn signal_len(&self, symbols: usize) -> usize {
        if symbols == 0 {
            0
        } else {
            (symbols - 1) * self.cfg.interpolation() + self.filter.len()
        }
    }

    /// `s̃_o(m) = Σ_i Σ_k S_{i,k} h(m - kI) e^{jω_i m}`.
    pub fn modulate(&self, grid: &SymbolGrid) -> Result<BasebandSignal> {
        if grid.subcarriers != self.cfg.subcarriers {
            return Err(Error::LengthMismatch {
                expected: self.cfg.subcarriers,
                actual: grid.subcarriers,
            });
        }
        let k_count = grid.symbols_per_carrier;
        let interp = self.cfg.interpolation();
        let len = self.filter.len();
        let mut samples = vec![Complex64::default(); self.signal_len(k_count)];
        // Since ω_i·I is a multiple of 2π, symbol k only needs the per-carrier
        // taps shifted by k·I.
        let mut combined = vec![Complex64::default(); len];
        for k in 0..k_count {
            combined.iter_mut().for_each(|c| *c = Complex64::default());
            for (i, taps) in self.carrier_taps.iter().enumerate() {
                let s = grid.get(i, k).value();
                for (c, &g) in combined.iter_mut().zip(taps) {
                    *c += g * s;
                }
            }
            let dst = &mut samples[k * interp..k * interp + len];
            for (d, c) in dst.iter_mut().zip(&combined) {
                *d += c;
            }
        }
        Ok(BasebandSignal {
            samples,
            sample_rate: self.cfg.pulse.sample_rate(),
        })
    }

    fn symbols_in(&self, signal: &BasebandSignal) -> Result<usize> {
        let len = self.filter.len();
        let interp = self.cfg.interpolation();
        if signal.is_empty() {
            return Ok(0);
        }
        if signal.len() < len {
            return Err(Error::SignalTooShort {
                needed: len,
                actual: signal.len(),
            });
        }
        let extra = signal.len() - len;
        if !extra.is_multiple_of(interp) {
            return Err(Error::invalid(format!(
                "signal length {} is not (K-1)·{interp} + {len}",
                signal.len()
            )));
        }
        Ok(extra / interp + 1)
    }

    /// Complex matched-filter outputs at the symbol instants, scaled by
    /// `1/gain`, per subcarrier. The real part is the soft symbol; the
    /// imaginary part is the in-phase/quadrature crosstalk.
    pub fn matched_filter_outputs(&self, signal: &BasebandSignal) -> Result<Vec<Vec<Complex64>>> {
        let k_count = self.symbols_in(signal)?;
        let interp = self.cfg.interpolation();
        let len = self.filter.len();
        let scale = 1.0 / self.gain;
        Ok(self
            .carrier_taps
            .iter()
            .map(|taps| {
                (0..k_count)
                    .map(|k| {
                        let window = &signal.samples[k * interp..k * interp + len];
                        let acc: Complex64 =
                            window.iter().zip(taps).map(|(r, g)| r * g.conj()).sum();
                        acc * scale
                    })
                    .collect()
            })
            .collect())
    }

    /// Soft symbols `x_{i,k} = S_{i,k} + z_{i,k}`.
    pub fn demodulate(&self, signal: &BasebandSignal) -> Result<SoftGrid> {
        let outputs = self.matched_filter_outputs(signal)?;
        let symbols_per_carrier = outputs.first().map_or(0, Vec::len);
        Ok(SoftGrid {
            subcarriers: self.cfg.subcarriers,
            symbols_per_carrier,
            values: outputs.into_iter().flatten().map(|c| c.re).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> ModemConfig {
        ModemConfig::new(5, 8, 1.0, 0.161, 0.25).unwrap()
    }

    #[test]
    fn config_ties_interpolation_to_subcarriers() {
        let cfg = small_cfg();
        assert_eq!(cfg.interpolation(), 5);
        assert_eq!(cfg.pulse().interpolation(), 5);
        assert_eq!(cfg.pulse().half_window(), 40);
        assert_eq!(cfg.signal_len(3), 2 * 5 + 81);
        assert!(ModemConfig::new(0, 8, 1.0, 0.161, 0.25).is_err());
        assert!(ModemConfig::new(5, 0, 1.0, 0.161, 0.25).is_err());
        assert!(small_cfg().with_quadrature(PulseKind::Rrc).is_err());
    }

    #[test]
    fn single_symbol_reproduces_taps() {
        let cfg = ModemConfig::new(1, 8, 1.0, 0.161, 0.25).unwrap();
        let modem = Modem::new(cfg).unwrap();
        let grid = SymbolGrid::new(1, 1, vec![Bpsk::Plus]).unwrap();
        let sig = modem.modulate(&grid).unwrap();
        assert_eq!(sig.samples, modem.filter().taps);
    }

    #[test]
    fn empty_frame_is_empty_signal() {
        let modem = Modem::new(small_cfg()).unwrap();
        let grid = SymbolGrid::new(5, 0, vec![]).unwrap();
        let sig = modem.modulate(&grid).unwrap();
        assert!(sig.samples.iter().all(|s| *s == Complex64::default()));
        let soft = modem.demodulate(&sig).unwrap();
        assert!(soft.values.is_empty());
    }

    #[test]
    fn dimension_mismatch() {
        let modem = Modem::new(small_cfg()).unwrap();
        let grid = SymbolGrid::new(4, 1, vec![Bpsk::Plus; 4]).unwrap();
        assert!(modem.modulate(&grid).is_err());
        assert!(SymbolGrid::new(4, 2, vec![Bpsk::Plus; 7]).is_err());
    }

    #[test]
    fn short_signal_rejected() {
        let modem = Modem::new(small_cfg()).unwrap();
        let sig = BasebandSignal {
            samples: vec![Complex64::default(); 20],
            sample_rate: 5.0,
        };
        assert!(matches!(
            modem.demodulate(&sig),
            Err(Error::SignalTooShort { .. })
        ));
    }

    #[test]
    fn single_symbol_loopback_is_unity() {
        let cfg = ModemConfig::new(1, 16, 1.0, 0.161, 0.25).unwrap();
        let modem = Modem::new(cfg).unwrap();
        let grid = SymbolGrid::new(1, 1, vec![Bpsk::Plus]).unwrap();
        let soft = modem.demodulate(&modem.modulate(&grid).unwrap()).unwrap();
        assert!((soft.get(0, 0) - 1.0).abs() < 1e-12);
        assert!((modem.gain() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn stream_round_trip_order() {
        let stream: Vec<Bpsk> = (0..7).map(|j| Bpsk::from_bit((j % 3 == 0) as u8)).collect();
        let grid = SymbolGrid::from_stream(3, &stream, || Bpsk::Plus);
        assert_eq!(grid.symbols_per_carrier(), 3);
        assert_eq!(grid.get(1, 0), stream[1]);
        assert_eq!(grid.get(0, 2), stream[6]);
        assert_eq!(grid.get(1, 2), Bpsk::Plus);
        let soft = SoftGrid {
            subcarriers: 3,
            symbols_per_carrier: 3,
            values: grid.symbols.iter().map(|s| s.value()).collect(),
        };
        let back: Vec<Bpsk> = soft.to_stream().into_iter().map(Bpsk::decide).collect();
        assert_eq!(&back[..7], &stream[..]);
    }

    #[test]
    fn delta_filter_has_no_delay() {
        assert_eq!(matched_filter_delay(1), 0);
        assert_eq!(symbol_sampling_offset(&small_cfg()), 80);
    }

    #[test]
    fn bit_mapping() {
        assert_eq!(Bpsk::from_bit(0).value(), 1.0);
        assert_eq!(Bpsk::from_bit(1).value(), -1.0);
        assert_eq!(Bpsk::decide(-0.2).to_bit(), 1);
    }
}

//! Correlation functions, signal-to-interference ratio and spectrum estimates.

use std::io::Write;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::pulse::{PulseKind, PulseSpec, SampledFilter};

/// Floor applied to normalized spectra before conversion to dB.
const DB_FLOOR: f64 = -300.0;

/// Full linear correlation sequence at lag spacing `Ts`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationSequence {
    pub values: Vec<f64>,
    pub zero_lag_index: usize,
}

impl CorrelationSequence {
    /// Value at integer lag `k`, zero outside the sequence.
    pub fn at(&self, lag: i64) -> f64 {
        let idx = self.zero_lag_index as i64 + lag;
        if idx < 0 || idx >= self.values.len() as i64 {
            0.0
        } else {
            self.values[idx as usize]
        }
    }

    pub fn zero_lag(&self) -> f64 {
        self.values[self.zero_lag_index]
    }

    /// Largest lag magnitude stored on either side of zero.
    pub fn max_lag(&self) -> usize {
        self.zero_lag_index
            .min(self.values.len() - 1 - self.zero_lag_index)
    }

    /// `Σ_{n≠0} R(nI)²` over every whole symbol lag inside the sequence.
    pub fn symbol_lag_energy(&self, interpolation: usize) -> f64 {
        let max_n = (self.max_lag() / interpolation) as i64;
        (1..=max_n)
            .map(|n| {
                let k = n * interpolation as i64;
                self.at(k).powi(2) + self.at(-k).powi(2)
            })
            .sum()
    }

    /// Element-wise sum, for sequences sharing the same layout.
    pub fn add(&self, other: &CorrelationSequence) -> Result<CorrelationSequence> {
        if self.values.len() != other.values.len() || self.zero_lag_index != other.zero_lag_index {
            return Err(Error::LengthMismatch {
                expected: self.values.len(),
                actual: other.values.len(),
            });
        }
        Ok(CorrelationSequence {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
            zero_lag_index: self.zero_lag_index,
        })
    }
}

/// `R_fg(k) = Σ_n f[n+k]·g[n]` for `k ∈ [-(Lg-1), Lf-1]`, computed by FFT.
fn correlate_real(f: &[f64], g: &[f64]) -> Vec<f64> {
    let out_len = f.len() + g.len() - 1;
    let n = out_len.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);

    let mut fa: Vec<Complex64> = f.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fa.resize(n, Complex64::default());
    // Time-reversed g turns convolution into correlation.
    let mut ga: Vec<Complex64> = g.iter().rev().map(|&x| Complex64::new(x, 0.0)).collect();
    ga.resize(n, Complex64::default());
    fwd.process(&mut fa);
    fwd.process(&mut ga);
    for (a, b) in fa.iter_mut().zip(&ga) {
        *a *= b;
    }
    inv.process(&mut fa);
    let scale = 1.0 / n as f64;
    fa[..out_len].iter().map(|c| c.re * scale).collect()
}

fn real_taps(f: &SampledFilter) -> Result<Vec<f64>> {
    if !f.is_real() {
        return Err(Error::ComplexFilter);
    }
    Ok(f.real_parts())
}

/// Autocorrelation `R_ff(k) = f(k) ⋆ f(-k)` of a real filter.
pub fn autocorrelate(f: &SampledFilter) -> Result<CorrelationSequence> {
    let taps = real_taps(f)?;
    if taps.is_empty() {
        return Err(Error::invalid("autocorrelation of an empty filter"));
    }
    let mut values = correlate_real(&taps, &taps);
    // Symmetric by construction; fold out FFT round-off so R(k) = R(-k) exactly.
    let len = values.len();
    for k in 0..len / 2 {
        let avg = 0.5 * (values[k] + values[len - 1 - k]);
        values[k] = avg;
        values[len - 1 - k] = avg;
    }
    Ok(CorrelationSequence {
        values,
        zero_lag_index: taps.len() - 1,
    })
}

/// Cross-correlation `R_fg(k) = f(k) ⋆ g(-k) = Σ_n f[n+k]·g[n]` of two real
/// filters of equal length.
pub fn crosscorrelate(f: &SampledFilter, g: &SampledFilter) -> Result<CorrelationSequence> {
    let ft = real_taps(f)?;
    let gt = real_taps(g)?;
    if ft.len() != gt.len() {
        return Err(Error::LengthMismatch {
            expected: ft.len(),
            actual: gt.len(),
        });
    }
    if ft.is_empty() {
        return Err(Error::invalid("correlation of empty filters"));
    }
    Ok(CorrelationSequence {
        values: correlate_real(&ft, &gt),
        zero_lag_index: gt.len() - 1,
    })
}

/// SIR in dB of a correlation sequence sampled at symbol lags `nI`.
///
/// Returns `f64::INFINITY` when every symbol-lag term is exactly zero.
pub fn sir_db(r: &CorrelationSequence, interpolation: usize) -> Result<f64> {
    if interpolation == 0 {
        return Err(Error::invalid("interpolation factor must be >= 1"));
    }
    let r0 = r.zero_lag();
    if r0 == 0.0 {
        return Err(Error::DegenerateCorrelation);
    }
    let interference = r.symbol_lag_energy(interpolation);
    if interference == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (r0 * r0 / interference).log10())
}

/// Spectrum on the digital frequency axis `ω/π ∈ [-1, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub omega_over_pi: Vec<f64>,
    /// Linear power per bin, unnormalized.
    pub power: Vec<f64>,
}

impl Spectrum {
    fn from_bins(bins: Vec<f64>) -> Self {
        let n = bins.len();
        // fftshift: bin k ≥ ⌈n/2⌉ is the negative frequency k - n.
        let split = n.div_ceil(2);
        let order = (split..n).chain(0..split);
        let mut omega_over_pi = Vec::with_capacity(n);
        let mut power = Vec::with_capacity(n);
        for k in order {
            let signed = if k >= split {
                k as f64 - n as f64
            } else {
                k as f64
            };
            omega_over_pi.push(2.0 * signed / n as f64);
            power.push(bins[k]);
        }
        Self {
            omega_over_pi,
            power,
        }
    }

    pub fn len(&self) -> usize {
        self.power.len()
    }

    pub fn is_empty(&self) -> bool {
        self.power.is_empty()
    }

    pub fn peak_power(&self) -> f64 {
        self.power.iter().copied().fold(0.0, f64::max)
    }

    /// Magnitude in dB relative to the peak (peak = 0 dB).
    pub fn magnitude_db(&self) -> Vec<f64> {
        let peak = self.peak_power();
        self.power
            .iter()
            .map(|&p| {
                if peak == 0.0 || p == 0.0 {
                    DB_FLOOR
                } else {
                    (10.0 * (p / peak).log10()).max(DB_FLOOR)
                }
            })
            .collect()
    }

    pub fn total_power(&self) -> f64 {
        self.power.iter().sum()
    }

    /// Summed power over bins whose `ω/π` satisfies `select`.
    pub fn power_where(&self, mut select: impl FnMut(f64) -> bool) -> f64 {
        self.omega_over_pi
            .iter()
            .zip(&self.power)
            .filter(|(w, _)| select(**w))
            .map(|(_, p)| p)
            .sum()
    }

    /// Share of the total power at strictly negative frequencies with
    /// `|ω/π| ≥ exclude`.
    pub fn negative_fraction(&self, exclude: f64) -> f64 {
        let total = self.total_power();
        if total == 0.0 {
            return 0.0;
        }
        self.power_where(|w| w < 0.0 && -w >= exclude) / total
    }

    /// `ω/π` of the strongest bin.
    pub fn peak_frequency(&self) -> f64 {
        let (idx, _) = self
            .power
            .iter()
            .enumerate()
            .fold(
                (0, f64::MIN),
                |best, (i, &p)| if p > best.1 { (i, p) } else { best },
            );
        self.omega_over_pi[idx]
    }

    /// Writes `omega_over_pi,magnitude_db` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["omega_over_pi", "magnitude_db"])?;
        for (omega, db) in self.omega_over_pi.iter().zip(self.magnitude_db()) {
            w.write_record([omega.to_string(), db.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn power_spectrum(samples: &[Complex64], n_fft: usize, planner: &mut FftPlanner<f64>) -> Vec<f64> {
    let mut buf = samples.to_vec();
    buf.resize(n_fft, Complex64::default());
    planner.plan_fft_forward(n_fft).process(&mut buf);
    buf.iter().map(|c| c.norm_sqr()).collect()
}

/// Zero-padded DFT of the taps. Use [`Spectrum::magnitude_db`] for the
/// peak-normalized magnitude response.
pub fn dft_magnitude_db(taps: &[Complex64], n_fft: usize) -> Result<Spectrum> {
    if n_fft == 0 || n_fft < taps.len() {
        return Err(Error::invalid(format!(
            "DFT size {n_fft} shorter than {} taps",
            taps.len()
        )));
    }
    let mut planner = FftPlanner::new();
    Ok(Spectrum::from_bins(power_spectrum(
        taps,
        n_fft,
        &mut planner,
    )))
}

/// Averaged periodogram over non-overlapping, unwindowed segments.
pub fn periodogram(signal: &[Complex64], segment: usize) -> Result<Spectrum> {
    if segment == 0 || signal.len() < segment {
        return Err(Error::invalid(format!(
            "segment length {segment} exceeds signal length {}",
            signal.len()
        )));
    }
    let mut planner = FftPlanner::new();
    let mut acc = vec![0.0; segment];
    let count = signal.len() / segment;
    for chunk in signal.chunks_exact(segment) {
        for (a, p) in acc
            .iter_mut()
            .zip(power_spectrum(chunk, segment, &mut planner))
        {
            *a += p;
        }
    }
    let norm = 1.0 / (count as f64 * segment as f64);
    Ok(Spectrum::from_bins(
        acc.into_iter().map(|p| p * norm).collect(),
    ))
}

/// Symbols per unit time-frequency area, `1/(𝓑T)`. With analytic pulses the
/// subcarrier spacing is `𝓑 = (1+ρ)/(2T)`; with a real RRC it is `(1+ρ)/T`.
pub fn symbol_density(spec: &PulseSpec, analytic: bool) -> f64 {
    let t = spec.symbol_period();
    let rho = spec.rolloff();
    let spacing = if analytic {
        (1.0 + rho) / (2.0 * t)
    } else {
        2.0 * (1.0 + rho) / (2.0 * t)
    };
    1.0 / (spacing * t)
}

/// SIR of the unit-energy autocorrelation of a sampled pulse.
pub fn pulse_sir_db(kind: PulseKind, spec: &PulseSpec) -> Result<f64> {
    let f = crate::pulse::sample_pulse(kind, spec)?;
    sir_db(&autocorrelate(&f)?, spec.interpolation())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(taps: &[f64]) -> SampledFilter {
        SampledFilter::from_real(taps.to_vec(), 1.0)
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn delta_autocorrelation() {
        let r = autocorrelate(&real(&[1.0])).unwrap();
        assert!(close(&r.values, &[1.0]));
        assert_eq!(r.zero_lag_index, 0);
    }

    #[test]
    fn pair_autocorrelation() {
        let r = autocorrelate(&real(&[1.0, 1.0])).unwrap();
        assert!(close(&r.values, &[1.0, 2.0, 1.0]));
        assert_eq!(r.zero_lag_index, 1);
    }

    #[test]
    fn crosscorrelation_lag_convention() {
        // R_fg(k) = Σ f[n+k] g[n]; f leads g by one sample.
        let r = crosscorrelate(&real(&[0.0, 1.0, 0.0]), &real(&[1.0, 0.0, 0.0])).unwrap();
        assert!((r.at(1) - 1.0).abs() < 1e-12);
        assert!(r.at(-1).abs() < 1e-12);
        let r = crosscorrelate(&real(&[1.0]), &real(&[1.0])).unwrap();
        assert!(close(&r.values, &[1.0]));
    }

    #[test]
    fn crosscorrelation_length_mismatch() {
        assert!(matches!(
            crosscorrelate(&real(&[1.0, 2.0]), &real(&[1.0])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn complex_filters_are_rejected() {
        let f = SampledFilter {
            taps: vec![Complex64::new(1.0, 1.0)],
            sample_period: 1.0,
            offset: 0.0,
            energy_normalized: false,
        };
        assert!(matches!(autocorrelate(&f), Err(Error::ComplexFilter)));
    }

    #[test]
    fn sir_sentinel_and_arithmetic() {
        let r = CorrelationSequence {
            values: vec![0.0, 0.0, 1.0, 0.0, 0.0],
            zero_lag_index: 2,
        };
        assert_eq!(sir_db(&r, 2).unwrap(), f64::INFINITY);
        let r = CorrelationSequence {
            values: vec![0.1, 0.3, 1.0, 0.3, 0.0],
            zero_lag_index: 2,
        };
        assert!((sir_db(&r, 2).unwrap() - 20.0).abs() < 1e-12);
        let r = CorrelationSequence {
            values: vec![0.1, 0.0, 0.1],
            zero_lag_index: 1,
        };
        assert!(matches!(sir_db(&r, 1), Err(Error::DegenerateCorrelation)));
    }

    #[test]
    fn flat_spectrum_of_delta() {
        let taps = [1.0, 0.0, 0.0, 0.0].map(|x| Complex64::new(x, 0.0));
        let s = dft_magnitude_db(&taps, 4).unwrap();
        assert!(s.magnitude_db().iter().all(|db| db.abs() < 1e-12));
        assert!(close(&s.omega_over_pi, &[-1.0, -0.5, 0.0, 0.5]));
        assert!(dft_magnitude_db(&taps, 3).is_err());
    }

    #[test]
    fn odd_length_frequency_axis() {
        let taps = [Complex64::new(1.0, 0.0)];
        let s = dft_magnitude_db(&taps, 5).unwrap();
        assert!(close(&s.omega_over_pi, &[-0.8, -0.4, 0.0, 0.4, 0.8]));
    }

    #[test]
    fn tone_periodogram_peaks_at_tone() {
        let n = 256;
        let w0 = 2.0 * std::f64::consts::PI * 20.0 / 64.0;
        let sig: Vec<Complex64> = (0..n)
            .map(|m| Complex64::from_polar(1.0, w0 * m as f64))
            .collect();
        let s = periodogram(&sig, 64).unwrap();
        assert!((s.peak_frequency() - 40.0 / 64.0).abs() < 1e-12);
        let peak = s.peak_power();
        assert!(s.power.iter().filter(|&&p| p > 1e-9 * peak).count() == 1);
        assert!(periodogram(&sig, 512).is_err());
    }

    #[test]
    fn density_values() {
        let s = PulseSpec::new(1.0, 0.161, 0.25, 5.0, 10).unwrap();
        assert!((symbol_density(&s, true) - 2.0 / 1.161).abs() < 1e-12);
        assert!((symbol_density(&s, true) - 1.7227).abs() < 1e-4);
        assert!((symbol_density(&s, false) - 0.8613).abs() < 1e-4);
        let s = PulseSpec::new(1.0, 1.0, 0.25, 5.0, 10).unwrap();
        assert!((symbol_density(&s, true) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_csv_header() {
        let taps = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        let mut buf = Vec::new();
        dft_magnitude_db(&taps, 4)
            .unwrap()
            .write_csv(&mut buf)
            .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("omega_over_pi,magnitude_db\n"));
        assert!(text.contains("0,0\n"));
    }
}

//! Root-raised-cosine pulse, its Hilbert transform and its modified Hilbert
//! transform, evaluated in closed form and sampled into discrete filters.
//!
//! Frequency-domain conventions: `B = 1/(2T)`, the flat part of the RRC
//! spectrum ends at `F1 = B(1-ρ)` and the band ends at `B(1+ρ)`. The flat
//! amplitude is `1/√(2B)`, which gives the pulse unit energy.
//!
//! The modified Hilbert transformer replaces `-j·sgn(F)` on `|F| ≤ a·F1` with
//! a unit-magnitude phase ramp running from `+j` to `-j`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Width of the neighbourhood around a removable singularity inside which the
/// closed forms are replaced by a local expansion.
const SINGULAR_DELTA: f64 = 1e-8;

/// Normalized sinc, `sin(πx)/(πx)` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let px = PI * x;
        px.sin() / px
    }
}

/// Continuous-time pulse parameters plus the sampling grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseSpec {
    symbol_period: f64,
    rolloff: f64,
    transition: f64,
    sample_rate: f64,
    half_window: usize,
}

impl PulseSpec {
    /// `symbol_period` T (s), `rolloff` ρ, `transition` a (fraction of F1
    /// covered by the modified Hilbert phase ramp), `sample_rate` Fs (Hz) and
    /// `half_window` M (taps span m ∈ [-M, M]).
    pub fn new(
        symbol_period: f64,
        rolloff: f64,
        transition: f64,
        sample_rate: f64,
        half_window: usize,
    ) -> Result<Self> {
        if !(symbol_period.is_finite() && symbol_period > 0.0) {
            return Err(Error::invalid(format!(
                "symbol period must be > 0, got {symbol_period}"
            )));
        }
        if !(rolloff > 0.0 && rolloff <= 1.0) {
            return Err(Error::invalid(format!(
                "roll-off must lie in (0, 1], got {rolloff}"
            )));
        }
        if !(transition > 0.0 && transition <= 1.0) {
            return Err(Error::invalid(format!(
                "transition fraction must lie in (0, 1], got {transition}"
            )));
        }
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(Error::invalid(format!(
                "sample rate must be > 0, got {sample_rate}"
            )));
        }
        let ratio = sample_rate * symbol_period;
        if ratio.round() < 1.0 || (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::invalid(format!(
                "Fs·T must be a positive integer, got {ratio}"
            )));
        }
        if half_window < 1 {
            return Err(Error::invalid("one-sided window length must be >= 1"));
        }
        Ok(Self {
            symbol_period,
            rolloff,
            transition,
            sample_rate,
            half_window,
        })
    }

    /// Same pulse, different one-sided window length.
    pub fn with_half_window(&self, half_window: usize) -> Result<Self> {
        Self::new(
            self.symbol_period,
            self.rolloff,
            self.transition,
            self.sample_rate,
            half_window,
        )
    }

    pub fn symbol_period(&self) -> f64 {
        self.symbol_period
    }

    pub fn rolloff(&self) -> f64 {
        self.rolloff
    }

    pub fn transition(&self) -> f64 {
        self.transition
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn sample_period(&self) -> f64 {
        1.0 / self.sample_rate
    }

    pub fn half_window(&self) -> usize {
        self.half_window
    }

    /// Number of taps, `2M + 1`.
    pub fn num_taps(&self) -> usize {
        2 * self.half_window + 1
    }

    /// Interpolation factor `I = T/Ts`.
    pub fn interpolation(&self) -> usize {
        (self.sample_rate * self.symbol_period).round() as usize
    }

    /// `B = 1/(2T)`.
    pub fn half_bandwidth(&self) -> f64 {
        0.5 / self.symbol_period
    }

    /// `F1 = B(1-ρ)`, end of the flat part of the spectrum.
    pub fn flat_edge(&self) -> f64 {
        self.half_bandwidth() * (1.0 - self.rolloff)
    }

    /// `B(1+ρ)`, where the spectrum reaches zero.
    pub fn band_edge(&self) -> f64 {
        self.half_bandwidth() * (1.0 + self.rolloff)
    }

    /// `a·F1`, half-width of the modified Hilbert transition band.
    pub fn transition_edge(&self) -> f64 {
        self.transition * self.flat_edge()
    }

    fn flat_amplitude(&self) -> f64 {
        (2.0 * self.half_bandwidth()).sqrt().recip()
    }
}

/// RRC spectrum `P(F)`.
pub fn rrc_spectrum(freq: f64, spec: &PulseSpec) -> f64 {
    let f = freq.abs();
    let f1 = spec.flat_edge();
    let f2 = spec.band_edge();
    if f <= f1 {
        spec.flat_amplitude()
    } else if f <= f2 {
        let b = spec.half_bandwidth();
        spec.flat_amplitude() * (PI * (f - f1) / (4.0 * b - 4.0 * f1)).cos()
    } else {
        0.0
    }
}

/// Value of `N(x)/D(x)` at `x0 + h`, where `N(x0) = D(x0) = 0`, from the
/// first two derivatives of numerator and denominator at `x0`.
fn removable(h: f64, n1: f64, n2: f64, d1: f64, d2: f64) -> f64 {
    let limit = n1 / d1;
    let slope = (n2 * d1 - n1 * d2) / (2.0 * d1 * d1);
    limit + slope * h
}

/// RRC pulse `p(t)`, the inverse Fourier transform of [`rrc_spectrum`].
///
/// Removable singularities sit at `t = 0` and `t = ±T/(4ρ)`.
pub fn rrc_pulse(t: f64, spec: &PulseSpec) -> f64 {
    let rho = spec.rolloff;
    let tau = t / spec.symbol_period;
    let scale = spec.symbol_period.sqrt().recip();
    let x = 4.0 * rho * tau;

    let anchor = if tau.abs() < SINGULAR_DELTA {
        Some(0.0)
    } else if (1.0 - x * x).abs() < SINGULAR_DELTA {
        Some(tau.signum() / (4.0 * rho))
    } else {
        None
    };

    match anchor {
        None => {
            let num =
                (PI * (1.0 - rho) * tau).sin() + 4.0 * rho * tau * (PI * (1.0 + rho) * tau).cos();
            scale * num / (PI * tau * (1.0 - x * x))
        }
        Some(t0) => {
            let a = PI * (1.0 - rho);
            let c = PI * (1.0 + rho);
            let n1 = a * (a * t0).cos() + 4.0 * rho * (c * t0).cos()
                - 4.0 * rho * c * t0 * (c * t0).sin();
            let n2 = -a * a * (a * t0).sin()
                - 8.0 * rho * c * (c * t0).sin()
                - 4.0 * rho * c * c * t0 * (c * t0).cos();
            let d1 = PI - 48.0 * PI * rho * rho * t0 * t0;
            let d2 = -96.0 * PI * rho * rho * t0;
            scale * removable(tau - t0, n1, n2, d1, d2)
        }
    }
}

/// Flat-band part of the Hilbert transform, `[1 - cos(2πF1 t)] / (πt√(2B))`,
/// evaluated as `2πF1² t sinc²(F1 t)/√(2B)` which has no singularity.
fn hilbert_flat_band(t: f64, spec: &PulseSpec) -> f64 {
    let f1 = spec.flat_edge();
    let s = sinc(f1 * t);
    2.0 * PI * f1 * f1 * t * s * s * spec.flat_amplitude()
}

/// Contribution of the cosine roll-off bands to both Hilbert transforms.
/// Singular where `1 - 64B²ρ²t² = 0`.
fn hilbert_rolloff_band(t: f64, spec: &PulseSpec) -> f64 {
    let b = spec.half_bandwidth();
    let rho = spec.rolloff;
    let k1 = 2.0 * PI * b * (1.0 + rho);
    let k2 = 2.0 * PI * b * (1.0 - rho);
    let a = 8.0 * b * rho;
    let a2 = a * a;
    let scale = spec.flat_amplitude() / PI;
    let den = 1.0 - a2 * t * t;

    if den.abs() >= SINGULAR_DELTA {
        let num = a * (k1 * t).sin() - a2 * t * (k2 * t).cos();
        return scale * num / den;
    }
    let t0 = t.signum() / a;
    let n1 = a * k1 * (k1 * t0).cos() - a2 * (k2 * t0).cos() + a2 * k2 * t0 * (k2 * t0).sin();
    let n2 = -a * k1 * k1 * (k1 * t0).sin()
        + 2.0 * a2 * k2 * (k2 * t0).sin()
        + a2 * k2 * k2 * t0 * (k2 * t0).cos();
    let d1 = -2.0 * a2 * t0;
    let d2 = -2.0 * a2;
    scale * removable(t - t0, n1, n2, d1, d2)
}

/// Hilbert transform of the RRC pulse, `p̂(t)`.
pub fn hilbert_rrc(t: f64, spec: &PulseSpec) -> f64 {
    hilbert_flat_band(t, spec) + hilbert_rolloff_band(t, spec)
}

/// Frequency response of the modified Hilbert transformer.
pub fn mod_hilbert_response(freq: f64, spec: &PulseSpec) -> Complex64 {
    let edge = spec.transition_edge();
    if freq.abs() <= edge {
        if edge == 0.0 {
            return Complex64::new(-1.0, 0.0);
        }
        let phase = PI * (freq + edge) / (2.0 * edge) + FRAC_PI_2;
        Complex64::from_polar(1.0, phase)
    } else if freq > 0.0 {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::new(0.0, 1.0)
    }
}

/// Part of the modified transform coming from the phase ramp on `|F| ≤ aF1`.
pub fn mod_hilbert_ramp(t: f64, spec: &PulseSpec) -> f64 {
    let edge = spec.transition_edge();
    if edge == 0.0 {
        return 0.0;
    }
    let shift = 2.0 * t + 1.0 / (2.0 * edge);
    -2.0 * edge * spec.flat_amplitude() * sinc(edge * shift)
}

/// Part of the modified transform from the flat band outside the ramp,
/// `aF1 ≤ |F| ≤ F1`.
pub fn mod_hilbert_flat(t: f64, spec: &PulseSpec) -> f64 {
    let f1 = spec.flat_edge();
    let a = spec.transition;
    2.0 * f1
        * (1.0 + a)
        * spec.flat_amplitude()
        * sinc(f1 * t * (1.0 + a))
        * (PI * f1 * t * (1.0 - a)).sin()
}

/// Modified Hilbert transform of the RRC pulse, `p̂ₘ(t)`.
pub fn mod_hilbert_rrc(t: f64, spec: &PulseSpec) -> f64 {
    mod_hilbert_ramp(t, spec) + mod_hilbert_flat(t, spec) + hilbert_rolloff_band(t, spec)
}

/// Which closed form to sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PulseKind {
    Rrc,
    Hilbert,
    ModifiedHilbert,
}

impl PulseKind {
    pub const ALL: [PulseKind; 3] = [
        PulseKind::Rrc,
        PulseKind::Hilbert,
        PulseKind::ModifiedHilbert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PulseKind::Rrc => "rrc",
            PulseKind::Hilbert => "ht",
            PulseKind::ModifiedHilbert => "mht",
        }
    }

    pub fn eval(self, t: f64, spec: &PulseSpec) -> f64 {
        match self {
            PulseKind::Rrc => rrc_pulse(t, spec),
            PulseKind::Hilbert => hilbert_rrc(t, spec),
            PulseKind::ModifiedHilbert => mod_hilbert_rrc(t, spec),
        }
    }
}

impl fmt::Display for PulseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PulseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rrc" => Ok(PulseKind::Rrc),
            "ht" => Ok(PulseKind::Hilbert),
            "mht" => Ok(PulseKind::ModifiedHilbert),
            other => Err(Error::invalid(format!("unknown pulse kind `{other}`"))),
        }
    }
}

/// Taps of a sampled pulse on the grid `t = (m - offset)·Ts`, `m ∈ [-M, M]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFilter {
    pub taps: Vec<Complex64>,
    pub sample_period: f64,
    /// Grid shift as a fraction of `Ts`.
    pub offset: f64,
    pub energy_normalized: bool,
}

impl SampledFilter {
    /// Wraps raw real taps (centred on the middle tap, no grid shift).
    pub fn from_real(taps: Vec<f64>, sample_period: f64) -> Self {
        Self {
            taps: taps.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
            sample_period,
            offset: 0.0,
            energy_normalized: false,
        }
    }

    /// `real + j·imag` for two real filters on the same grid.
    pub fn compose(real: &SampledFilter, imag: &SampledFilter) -> Result<Self> {
        if real.taps.len() != imag.taps.len() {
            return Err(Error::LengthMismatch {
                expected: real.taps.len(),
                actual: imag.taps.len(),
            });
        }
        if !real.is_real() || !imag.is_real() {
            return Err(Error::ComplexFilter);
        }
        Ok(Self {
            taps: real
                .taps
                .iter()
                .zip(&imag.taps)
                .map(|(r, i)| Complex64::new(r.re, i.re))
                .collect(),
            sample_period: real.sample_period,
            offset: real.offset,
            energy_normalized: real.energy_normalized && imag.energy_normalized,
        })
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    /// M, assuming the odd length `2M + 1`.
    pub fn half_window(&self) -> usize {
        self.taps.len() / 2
    }

    pub fn is_real(&self) -> bool {
        self.taps.iter().all(|t| t.im == 0.0)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.taps.iter().map(|t| t.re).collect()
    }

    pub fn imag_parts(&self) -> Vec<f64> {
        self.taps.iter().map(|t| t.im).collect()
    }

    /// Σ|taps|².
    pub fn energy(&self) -> f64 {
        self.taps.iter().map(|t| t.norm_sqr()).sum()
    }

    /// Tap index `m` and sample time for each tap.
    pub fn grid(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let m_half = self.half_window() as i64;
        (0..self.taps.len() as i64).map(move |j| {
            let m = j - m_half;
            (m, (m as f64 - self.offset) * self.sample_period)
        })
    }

    /// Writes `m,t,real,imag` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["m", "t", "real", "imag"])?;
        for ((m, t), tap) in self.grid().zip(&self.taps) {
            w.write_record([
                m.to_string(),
                t.to_string(),
                tap.re.to_string(),
                tap.im.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Evaluates `kind` on `t = (m - offset)·Ts` for `m ∈ [-M, M]` and scales the
/// taps to unit energy.
pub fn sample_pulse_at(kind: PulseKind, spec: &PulseSpec, offset: f64) -> Result<SampledFilter> {
    let ts = spec.sample_period();
    let m_half = spec.half_window() as i64;
    let raw: Vec<f64> = (-m_half..=m_half)
        .map(|m| kind.eval((m as f64 - offset) * ts, spec))
        .collect();
    let energy: f64 = raw.iter().map(|x| x * x).sum();
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::ZeroEnergy);
    }
    let norm = energy.sqrt().recip();
    Ok(SampledFilter {
        taps: raw
            .into_iter()
            .map(|x| Complex64::new(x * norm, 0.0))
            .collect(),
        sample_period: ts,
        offset,
        energy_normalized: true,
    })
}

/// Unit-energy taps on the half-sample-shifted transmit grid `t = mTs - 0.5Ts`.
pub fn sample_pulse(kind: PulseKind, spec: &PulseSpec) -> Result<SampledFilter> {
    sample_pulse_at(kind, spec, 0.5)
}

/// Composite transmit filter `p + j·q` where `q` is the chosen transform of
/// `p`; both parts are unit energy.
pub fn analytic_filter(quadrature: PulseKind, spec: &PulseSpec) -> Result<SampledFilter> {
    analytic_filter_at(quadrature, spec, 0.5)
}

pub fn analytic_filter_at(
    quadrature: PulseKind,
    spec: &PulseSpec,
    offset: f64,
) -> Result<SampledFilter> {
    let real = sample_pulse_at(PulseKind::Rrc, spec, offset)?;
    let imag = sample_pulse_at(quadrature, spec, offset)?;
    SampledFilter::compose(&real, &imag)
}

//! Discrete-time simulation toolkit for a single-sideband multicarrier modem.
//!
//! Each subcarrier carries real BPSK symbols shaped by the complex pulse
//! `p(t) + j·q(t)`, where `p` has a root-raised-cosine (RRC) spectrum and `q`
//! is its Hilbert transform (or a modified Hilbert transform that removes the
//! sign discontinuity at DC). The composite pulse is analytic, so every
//! subcarrier occupies only one side of its centre frequency and the symbol
//! density in time-frequency space is `2/(1+ρ)`.
//!
//! Modules:
//!
//! - [`pulse`]: closed-form RRC, Hilbert and modified Hilbert pulses, sampled
//!   into unit-energy filters.
//! - [`metrics`]: correlations, signal-to-interference ratio, spectra.
//! - [`modem`]: N-subcarrier transmitter and matched-filter receiver.
//! - [`channel`]: complex AWGN and SNR-per-bit bookkeeping.
//! - [`turbo`]: rate-1/2 parallel concatenated code with max-log-MAP decoding.
//! - [`sim`]: configuration, seeded Monte-Carlo BER sweeps, SIR tables and
//!   CSV reports.
//!
//! ```
//! use hilbert_ofdm::pulse::{sample_pulse, PulseKind, PulseSpec};
//! use hilbert_ofdm::metrics::{autocorrelate, sir_db};
//!
//! let spec = PulseSpec::new(1.0, 0.161, 0.25, 5.0, 100).unwrap();
//! let rrc = sample_pulse(PulseKind::Rrc, &spec).unwrap();
//! let sir = sir_db(&autocorrelate(&rrc).unwrap(), spec.interpolation()).unwrap();
//! assert!(sir > 50.0);
//! ```

pub mod channel;
pub mod error;
pub mod metrics;
pub mod modem;
pub mod pulse;
pub mod sim;
pub mod turbo;

pub use error::{Error, Result};

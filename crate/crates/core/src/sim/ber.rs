//! Seeded Monte-Carlo BER sweep over the full coded chain.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::erf::erfc;

use crate::channel::{add_awgn_in_place, snr_per_bit_to_sigma};
use crate::error::{Error, Result};
use crate::modem::{Bpsk, Modem, SymbolGrid};
use crate::sim::SimulationConfig;
use crate::turbo::TurboCode;

/// LLR per unit soft value when the channel is noiseless.
const NOISELESS_LLR_SCALE: f64 = 1e6;

/// Which bound ended the simulation of a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    MinErrors,
    MaxFrames,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BerPoint {
    pub snr_db: f64,
    pub bits: u64,
    pub errors: u64,
    pub ber: f64,
    pub theory_ber: f64,
    pub frames: u64,
    pub stop: StopReason,
}

/// Gaussian tail `Q(x) = ½·erfc(x/√2)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Uncoded BPSK error probability `Q(√(2/σ_w²))` at the given SNR per bit.
pub fn uncoded_theory_ber(snr_db: f64) -> f64 {
    let sigma_sq = snr_per_bit_to_sigma(snr_db);
    if sigma_sq == 0.0 {
        0.0
    } else {
        q_function((2.0 / sigma_sq).sqrt())
    }
}

/// Generator for one frame, independent of how frames are scheduled.
pub fn frame_rng(master_seed: u64, point: usize, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(((point as u64) << 40) | frame);
    rng
}

/// Per-frame chain shared by every SNR point.
struct Chain {
    modem: Modem,
    code: Option<TurboCode>,
    /// Bits scored per frame: `L_d1` coded, `2·L_d1` uncoded (same symbol
    /// count either way).
    frame_bits: usize,
}

impl Chain {
    fn new(cfg: &SimulationConfig) -> Result<Self> {
        let modem = Modem::new(cfg.modem_config()?)?;
        let code = if cfg.uncoded {
            None
        } else {
            Some(TurboCode::new(cfg.turbo.clone())?)
        };
        Ok(Self {
            modem,
            code,
            frame_bits: if cfg.uncoded {
                cfg.turbo.coded_len()
            } else {
                cfg.turbo.info_len
            },
        })
    }

    /// Simulates one frame and returns its bit-error count.
    fn run_frame(&self, sigma_sq: f64, rng: &mut ChaCha8Rng) -> Result<u64> {
        let (info, line_bits) = match &self.code {
            Some(code) => {
                let info: Vec<u8> = (0..self.frame_bits)
                    .map(|_| rng.random_range(0..2u8))
                    .collect();
                let coded = code.encode(&info)?.coded_bits;
                (info, coded)
            }
            None => {
                let bits: Vec<u8> = (0..self.frame_bits)
                    .map(|_| rng.random_range(0..2u8))
                    .collect();
                (bits.clone(), bits)
            }
        };
        let symbols: Vec<Bpsk> = line_bits.iter().map(|&b| Bpsk::from_bit(b)).collect();
        let n = self.modem.config().subcarriers();
        let grid =
            SymbolGrid::from_stream(n, &symbols, || Bpsk::from_bit(rng.random_range(0..2u8)));
        let mut signal = self.modem.modulate(&grid)?;
        add_awgn_in_place(&mut signal.samples, sigma_sq, rng);
        let soft = self.modem.demodulate(&signal)?.to_stream();
        let soft = &soft[..line_bits.len()];

        let decided: Vec<u8> = match &self.code {
            Some(code) => {
                // x = S + z with Var z = σ_w²/2.
                let scale = if sigma_sq > 0.0 {
                    2.0 / (sigma_sq / 2.0)
                } else {
                    NOISELESS_LLR_SCALE
                };
                let llrs: Vec<f64> = soft.iter().map(|x| x * scale).collect();
                code.decode(&llrs)?
            }
            None => soft.iter().map(|&x| Bpsk::decide(x).to_bit()).collect(),
        };
        Ok(decided.iter().zip(&info).filter(|(a, b)| a != b).count() as u64)
    }
}

/// Runs every SNR point until `min_errors` bit errors or `max_frames` frames.
pub fn run_ber_sweep(cfg: &SimulationConfig) -> Result<Vec<BerPoint>> {
    cfg.validate()?;
    let chain = Chain::new(cfg).map_err(|e| Error::Config(e.to_string()))?;
    let mut points = Vec::with_capacity(cfg.snr_db.len());
    for (p, &snr_db) in cfg.snr_db.iter().enumerate() {
        let sigma_sq = snr_per_bit_to_sigma(snr_db);
        let mut errors = 0u64;
        let mut frames = 0u64;
        let mut stop = StopReason::MaxFrames;
        while frames < cfg.max_frames as u64 {
            let mut rng = frame_rng(cfg.seed, p, frames);
            errors += chain.run_frame(sigma_sq, &mut rng)?;
            frames += 1;
            if errors >= cfg.min_errors as u64 && cfg.min_errors > 0 {
                stop = StopReason::MinErrors;
                break;
            }
        }
        let bits = frames * chain.frame_bits as u64;
        points.push(BerPoint {
            snr_db,
            bits,
            errors,
            ber: errors as f64 / bits as f64,
            theory_ber: uncoded_theory_ber(snr_db),
            frames,
            stop,
        });
    }
    Ok(points)
}

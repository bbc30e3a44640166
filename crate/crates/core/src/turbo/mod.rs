//! Rate-1/2 turbo code: two identical RSC encoders in parallel, separated by
//! a pseudo-random interleaver, decoded iteratively with max-log-MAP.
//!
//! Coded bit map for `L` information bits and constituent memory `ν`
//! (`2L` bits total):
//!
//! ```text
//! coded[2k]     = u_k                          k ∈ [0, L)
//! coded[2k + 1] = parity of encoder 1 at k     k even, k < L - ν
//!               = parity of encoder 2 at k     k odd,  k < L - ν
//!               = tail parity j of encoder 1   k = L - ν + j
//! ```
//!
//! Encoder 1 is terminated with `ν` forced tail inputs; only their parity
//! bits are sent, in the last `ν` parity slots. Encoder 2 is left open.
//! Encoder 2 sees `u` permuted by the interleaver, and its parity at time `k`
//! belongs to input `u[perm[k]]`.

mod interleaver;
mod rsc;

pub use interleaver::{make_interleaver, Interleaver};
pub use rsc::Rsc;

use crate::error::{Error, Result};
use rsc::{SisoInput, SisoWorkspace};

/// Parses an octal generator string such as `"7"` or `"0o15"`.
pub fn parse_octal(s: &str) -> Result<u32> {
    let digits = s.trim().trim_start_matches("0o");
    u32::from_str_radix(digits, 8)
        .map_err(|_| Error::invalid(format!("`{s}` is not an octal polynomial")))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TurboConfig {
    /// Information bits per frame, `L_d1`.
    pub info_len: usize,
    /// Feedback polynomial, octal convention.
    pub feedback: u32,
    /// Feedforward (parity) polynomial, octal convention.
    pub feedforward: u32,
    pub interleaver_seed: u64,
    pub iterations: usize,
    /// Scale applied to extrinsic LLRs passed between decoders.
    pub extrinsic_scale: f64,
}

impl Default for TurboConfig {
    fn default() -> Self {
        Self {
            info_len: 1024,
            feedback: 0o7,
            feedforward: 0o5,
            interleaver_seed: 1,
            iterations: 8,
            extrinsic_scale: 0.75,
        }
    }
}

impl TurboConfig {
    pub fn coded_len(&self) -> usize {
        2 * self.info_len
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodedFrame {
    pub info_bits: Vec<u8>,
    pub coded_bits: Vec<u8>,
}

impl CodedFrame {
    /// Systematic bits read back from the coded stream.
    pub fn systematic(&self) -> Vec<u8> {
        self.coded_bits.iter().step_by(2).copied().collect()
    }
}

/// Encoder/decoder pair for one [`TurboConfig`].
#[derive(Clone, Debug)]
pub struct TurboCode {
    cfg: TurboConfig,
    rsc: Rsc,
    interleaver: Interleaver,
}

impl TurboCode {
    pub fn new(cfg: TurboConfig) -> Result<Self> {
        let rsc = Rsc::new(cfg.feedback, cfg.feedforward)?;
        if cfg.info_len <= rsc.memory() || cfg.info_len < 2 {
            return Err(Error::invalid(format!(
                "frame of {} bits is too short for a memory-{} code",
                cfg.info_len,
                rsc.memory()
            )));
        }
        if cfg.iterations == 0 {
            return Err(Error::invalid("decoder needs at least one iteration"));
        }
        if !(cfg.extrinsic_scale > 0.0 && cfg.extrinsic_scale <= 1.0) {
            return Err(Error::invalid(format!(
                "extrinsic scale must lie in (0, 1], got {}",
                cfg.extrinsic_scale
            )));
        }
        let interleaver = make_interleaver(cfg.info_len, cfg.interleaver_seed)?;
        Ok(Self {
            cfg,
            rsc,
            interleaver,
        })
    }

    pub fn config(&self) -> &TurboConfig {
        &self.cfg
    }

    pub fn interleaver(&self) -> &Interleaver {
        &self.interleaver
    }

    pub fn constituent(&self) -> &Rsc {
        &self.rsc
    }

    fn tail_start(&self) -> usize {
        self.cfg.info_len - self.rsc.memory()
    }

    pub fn encode(&self, bits: &[u8]) -> Result<CodedFrame> {
        let len = self.cfg.info_len;
        if bits.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                actual: bits.len(),
            });
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::invalid(format!("bit value {b} is not 0 or 1")));
        }
        let (p1, end_state) = self.rsc.encode(bits);
        let (_, tail) = self.rsc.terminate(end_state);
        let mut permuted = Vec::with_capacity(len);
        self.interleaver.interleave(bits, &mut permuted);
        let (p2, _) = self.rsc.encode(&permuted);

        let tail_start = self.tail_start();
        let mut coded = Vec::with_capacity(2 * len);
        for k in 0..len {
            coded.push(bits[k]);
            coded.push(if k >= tail_start {
                tail[k - tail_start]
            } else if k % 2 == 0 {
                p1[k]
            } else {
                p2[k]
            });
        }
        Ok(CodedFrame {
            info_bits: bits.to_vec(),
            coded_bits: coded,
        })
    }

    /// Hard decisions on the information bits from per-coded-bit LLRs
    /// (`ln P(0)/P(1)`, positive favours bit 0).
    pub fn decode(&self, llrs: &[f64]) -> Result<Vec<u8>> {
        let posterior = self.decode_llr(llrs)?;
        Ok(posterior.iter().map(|&l| u8::from(l < 0.0)).collect())
    }

    /// A-posteriori information-bit LLRs after the configured iterations.
    pub fn decode_llr(&self, llrs: &[f64]) -> Result<Vec<f64>> {
        let len = self.cfg.info_len;
        if llrs.len() != 2 * len {
            return Err(Error::LengthMismatch {
                expected: 2 * len,
                actual: llrs.len(),
            });
        }
        if let Some(i) = llrs.iter().position(|l| !l.is_finite()) {
            return Err(Error::NonFiniteLlr(i));
        }

        let tail_start = self.tail_start();
        let systematic: Vec<f64> = llrs.iter().step_by(2).copied().collect();
        let mut parity1 = vec![0.0; len];
        let mut parity2 = vec![0.0; len];
        for k in 0..tail_start {
            let l = llrs[2 * k + 1];
            if k % 2 == 0 {
                parity1[k] = l;
            } else {
                parity2[k] = l;
            }
        }
        let tail: Vec<f64> = (tail_start..len).map(|k| llrs[2 * k + 1]).collect();

        let il = &self.interleaver;
        let scale = self.cfg.extrinsic_scale;
        let mut systematic2 = Vec::with_capacity(len);
        il.interleave(&systematic, &mut systematic2);

        let mut ws = SisoWorkspace::default();
        let mut apriori1 = vec![0.0; len];
        let mut apriori2 = Vec::with_capacity(len);
        let mut post1 = Vec::with_capacity(len);
        let mut post2 = Vec::with_capacity(len);
        let mut extrinsic = vec![0.0; len];

        for _ in 0..self.cfg.iterations {
            self.rsc.decode_siso(
                &SisoInput {
                    systematic: &systematic,
                    apriori: &apriori1,
                    parity: &parity1,
                    tail_parity: &tail,
                },
                &mut ws,
                &mut post1,
            );
            for k in 0..len {
                extrinsic[k] = scale * (post1[k] - systematic[k] - apriori1[k]);
            }
            il.interleave(&extrinsic, &mut apriori2);

            self.rsc.decode_siso(
                &SisoInput {
                    systematic: &systematic2,
                    apriori: &apriori2,
                    parity: &parity2,
                    tail_parity: &[],
                },
                &mut ws,
                &mut post2,
            );
            for k in 0..len {
                extrinsic[k] = scale * (post2[k] - systematic2[k] - apriori2[k]);
            }
            il.deinterleave(&extrinsic, &mut apriori1);
        }

        let mut out = Vec::with_capacity(len);
        il.deinterleave(&post2, &mut out);
        Ok(out)
    }
}

/// Encodes one frame; see [`TurboCode::encode`].
pub fn turbo_encode(bits: &[u8], code: &TurboCode) -> Result<CodedFrame> {
    code.encode(bits)
}

/// Decodes one frame of coded-bit LLRs; see [`TurboCode::decode`].
pub fn turbo_decode(llrs: &[f64], code: &TurboCode) -> Result<Vec<u8>> {
    code.decode(llrs)
}

//! Rate-1/2 recursive systematic convolutional (RSC) constituent code and its
//! max-log-MAP (BCJR) soft-in/soft-out decoder.

use crate::error::{Error, Result};

const NEG_INF: f64 = f64::NEG_INFINITY;

/// One trellis branch leaving a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Branch {
    pub next: usize,
    pub parity: u8,
}

/// RSC code defined by a feedback and a feedforward polynomial.
///
/// Polynomials are read MSB-first: for constraint length `ν+1` the MSB
/// multiplies the register input `w_k`, the remaining bits multiply
/// `w_{k-1} … w_{k-ν}`. With `x_k` the input, `w_k = x_k ⊕ Σ fb_i·w_{k-i}` and
/// the parity is `y_k = Σ ff_i·w_{k-i}` for `i ∈ [0, ν]`. The state is
/// `(w_{k-1}, …, w_{k-ν})` with `w_{k-1}` as the MSB.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rsc {
    feedback: u32,
    feedforward: u32,
    memory: usize,
    /// `branches[state][input]`.
    branches: Vec<[Branch; 2]>,
}

fn parity_of(x: u32) -> u8 {
    (x.count_ones() & 1) as u8
}

impl Rsc {
    pub fn new(feedback: u32, feedforward: u32) -> Result<Self> {
        if feedback < 2 || feedback.is_power_of_two() {
            return Err(Error::invalid(format!(
                "feedback polynomial {feedback:o} must have a tap besides the input"
            )));
        }
        let memory = (u32::BITS - feedback.leading_zeros() - 1) as usize;
        if memory > 12 {
            return Err(Error::invalid(
                "constraint length above 13 is not supported",
            ));
        }
        if feedforward == 0 || feedforward >= (1 << (memory + 1)) || feedforward == feedback {
            return Err(Error::invalid(format!(
                "feedforward polynomial {feedforward:o} must be nonzero, differ from the \
                 feedback polynomial and fit in {} bits",
                memory + 1
            )));
        }
        let num_states = 1usize << memory;
        let fb_taps = feedback & ((1 << memory) - 1);
        let branches = (0..num_states)
            .map(|state| {
                let step = |input: u8| {
                    let w = input ^ parity_of(state as u32 & fb_taps);
                    let register = ((w as u32) << memory) | state as u32;
                    Branch {
                        next: (register >> 1) as usize,
                        parity: parity_of(register & feedforward),
                    }
                };
                [step(0), step(1)]
            })
            .collect();
        Ok(Self {
            feedback,
            feedforward,
            memory,
            branches,
        })
    }

    pub fn feedback(&self) -> u32 {
        self.feedback
    }

    pub fn feedforward(&self) -> u32 {
        self.feedforward
    }

    /// ν, the number of delay elements.
    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn num_states(&self) -> usize {
        self.branches.len()
    }

    pub(crate) fn branch(&self, state: usize, input: u8) -> Branch {
        self.branches[state][input as usize]
    }

    /// Input that drives a zero into the register, moving towards state 0.
    pub(crate) fn tail_input(&self, state: usize) -> u8 {
        let fb_taps = self.feedback & ((1 << self.memory) - 1);
        parity_of(state as u32 & fb_taps)
    }

    /// Parity bits for `bits` from the zero state, plus the final state.
    pub fn encode(&self, bits: &[u8]) -> (Vec<u8>, usize) {
        let mut state = 0;
        let parity = bits
            .iter()
            .map(|&b| {
                let br = self.branch(state, b);
                state = br.next;
                br.parity
            })
            .collect();
        (parity, state)
    }

    /// `ν` tail steps returning the encoder from `state` to zero: the forced
    /// inputs and their parity bits.
    pub fn terminate(&self, mut state: usize) -> (Vec<u8>, Vec<u8>) {
        let mut inputs = Vec::with_capacity(self.memory);
        let mut parity = Vec::with_capacity(self.memory);
        for _ in 0..self.memory {
            let x = self.tail_input(state);
            let br = self.branch(state, x);
            inputs.push(x);
            parity.push(br.parity);
            state = br.next;
        }
        debug_assert_eq!(state, 0);
        (inputs, parity)
    }
}

/// Soft inputs for one constituent decoder pass. LLRs follow
/// `L = ln P(bit=0)/P(bit=1)`; punctured positions carry zero.
pub(crate) struct SisoInput<'a> {
    pub systematic: &'a [f64],
    pub apriori: &'a [f64],
    pub parity: &'a [f64],
    /// Parity LLRs of the termination steps; empty for an open trellis.
    pub tail_parity: &'a [f64],
}

/// Reusable buffers for the BCJR recursions.
#[derive(Debug, Default)]
pub(crate) struct SisoWorkspace {
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

fn sign(bit: u8) -> f64 {
    if bit == 0 {
        1.0
    } else {
        -1.0
    }
}

fn normalize(metrics: &mut [f64]) {
    let max = metrics.iter().copied().fold(NEG_INF, f64::max);
    if max.is_finite() {
        metrics.iter_mut().for_each(|m| *m -= max);
    }
}

impl Rsc {
    /// Max-log-MAP a-posteriori LLRs for the information bits.
    ///
    /// The trellis starts in state 0. If `tail_parity` is non-empty it must
    /// hold `ν` values and the trellis is closed in state 0 after the forced
    /// tail steps; otherwise the final state is unknown.
    pub(crate) fn decode_siso(
        &self,
        input: &SisoInput<'_>,
        ws: &mut SisoWorkspace,
        posterior: &mut Vec<f64>,
    ) {
        let n = input.systematic.len();
        let s_count = self.num_states();
        let terminated = !input.tail_parity.is_empty();
        debug_assert!(!terminated || input.tail_parity.len() == self.memory);

        // Forward recursion over the information steps.
        ws.alpha.clear();
        ws.alpha.resize((n + 1) * s_count, NEG_INF);
        ws.alpha[0] = 0.0;
        for k in 0..n {
            let lu = 0.5 * (input.systematic[k] + input.apriori[k]);
            let lp = 0.5 * input.parity[k];
            let (cur, next) = ws.alpha[k * s_count..(k + 2) * s_count].split_at_mut(s_count);
            for (s, &a) in cur.iter().enumerate() {
                if a == NEG_INF {
                    continue;
                }
                for x in 0..2u8 {
                    let br = self.branch(s, x);
                    let m = a + sign(x) * lu + sign(br.parity) * lp;
                    if m > next[br.next] {
                        next[br.next] = m;
                    }
                }
            }
            normalize(next);
        }

        // Backward metrics at the end of the information bits.
        let mut end = vec![0.0; s_count];
        if terminated {
            // Walk the forced tail backwards from state 0.
            let mut tail = vec![NEG_INF; s_count];
            tail[0] = 0.0;
            for &lp in input.tail_parity.iter().rev() {
                let mut prev = vec![NEG_INF; s_count];
                for (s, p) in prev.iter_mut().enumerate() {
                    let br = self.branch(s, self.tail_input(s));
                    if tail[br.next] > NEG_INF {
                        *p = tail[br.next] + 0.5 * sign(br.parity) * lp;
                    }
                }
                tail = prev;
            }
            normalize(&mut tail);
            end = tail;
        }

        ws.beta.clear();
        ws.beta.resize((n + 1) * s_count, NEG_INF);
        ws.beta[n * s_count..].copy_from_slice(&end);
        posterior.clear();
        posterior.resize(n, 0.0);
        for k in (0..n).rev() {
            let lu = 0.5 * (input.systematic[k] + input.apriori[k]);
            let lp = 0.5 * input.parity[k];
            let (cur, next) = ws.beta[k * s_count..(k + 2) * s_count].split_at_mut(s_count);
            let alpha = &ws.alpha[k * s_count..(k + 1) * s_count];
            let mut best = [NEG_INF; 2];
            for s in 0..s_count {
                for x in 0..2u8 {
                    let br = self.branch(s, x);
                    let b = next[br.next];
                    if b == NEG_INF {
                        continue;
                    }
                    let gamma = sign(x) * lu + sign(br.parity) * lp;
                    let m = gamma + b;
                    if m > cur[s] {
                        cur[s] = m;
                    }
                    let full = alpha[s] + m;
                    if full > best[x as usize] {
                        best[x as usize] = full;
                    }
                }
            }
            normalize(cur);
            posterior[k] = best[0] - best[1];
        }
    }
}

//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use quadrature::double_exponential;

/// Pulse parameters restated so the oracles do not depend on the library.
#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub symbol_period: f64,
    pub rolloff: f64,
    pub transition: f64,
}

pub const DEFAULT: Params = Params {
    symbol_period: 1.0,
    rolloff: 0.161,
    transition: 0.25,
};

impl Params {
    pub fn b(&self) -> f64 {
        0.5 / self.symbol_period
    }
    pub fn f1(&self) -> f64 {
        self.b() * (1.0 - self.rolloff)
    }
    pub fn edge(&self) -> f64 {
        self.b() * (1.0 + self.rolloff)
    }
    pub fn ramp(&self) -> f64 {
        self.transition * self.f1()
    }

    /// Square-root raised cosine spectrum.
    pub fn spectrum(&self, f: f64) -> f64 {
        let f = f.abs();
        let amp = 1.0 / (2.0 * self.b()).sqrt();
        if f <= self.f1() {
            amp
        } else if f <= self.edge() {
            amp * (PI * (f - self.f1()) / (4.0 * self.b() * self.rolloff)).cos()
        } else {
            0.0
        }
    }

    /// Breakpoints of the piecewise integrands on `[0, edge]`.
    fn knots(&self) -> Vec<f64> {
        let mut k = vec![0.0, self.ramp(), self.f1(), self.edge()];
        k.sort_by(f64::total_cmp);
        k.dedup();
        k
    }

    /// `∫ P(F) e^{j2πFt} dF`.
    pub fn rrc(&self, t: f64) -> f64 {
        2.0 * integrate(&self.knots(), |f| {
            self.spectrum(f) * (2.0 * PI * f * t).cos()
        })
    }

    /// `∫ -j·sgn(F) P(F) e^{j2πFt} dF`.
    pub fn hilbert(&self, t: f64) -> f64 {
        2.0 * integrate(&self.knots(), |f| {
            self.spectrum(f) * (2.0 * PI * f * t).sin()
        })
    }

    /// `∫ H(F) P(F) e^{j2πFt} dF` with the phase-ramp transformer
    /// `H = e^{j(π/2 + π(F + aF1)/(2aF1))}` on `|F| ≤ aF1`, `-j·sgn(F)`
    /// elsewhere. `H` is conjugate symmetric, so only `F > 0` is integrated.
    pub fn modified_hilbert(&self, t: f64) -> f64 {
        let e = self.ramp();
        2.0 * integrate(&self.knots(), |f| {
            let theta = 2.0 * PI * f * t;
            let phase = if f <= e {
                PI / 2.0 + PI * (f + e) / (2.0 * e)
            } else {
                -PI / 2.0
            };
            self.spectrum(f) * (phase + theta).cos()
        })
    }
}

/// Piecewise double-exponential quadrature between consecutive knots.
pub fn integrate(knots: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    knots
        .windows(2)
        .map(|w| double_exponential::integrate(&f, w[0], w[1], 1e-14).integral)
        .sum()
}

/// `Σ_n f[n+k]·g[n]` for every lag, as a plain double loop. Index `lag + len - 1`.
pub fn brute_correlation(f: &[f64], g: &[f64]) -> Vec<f64> {
    let n = f.len() as i64;
    (-(n - 1)..n)
        .map(|k| {
            let mut acc = 0.0;
            for i in 0..n {
                let j = i + k;
                if (0..n).contains(&j) {
                    acc += f[j as usize] * g[i as usize];
                }
            }
            acc
        })
        .collect()
}

/// SIR in dB of a correlation sequence at multiples of `interp`, brute force.
pub fn brute_sir_db(r: &[f64], interp: usize) -> f64 {
    let mid = r.len() / 2;
    let signal = r[mid] * r[mid];
    let mut interference = 0.0;
    let mut lag = interp;
    while lag <= mid {
        interference += r[mid + lag].powi(2) + r[mid - lag].powi(2);
        lag += interp;
    }
    10.0 * (signal / interference).log10()
}

/// `|actual - expected| ≤ max(rel·|expected|, abs)`.
pub fn close(actual: f64, expected: f64, rel: f64, abs: f64) -> bool {
    (actual - expected).abs() <= (rel * expected.abs()).max(abs)
}

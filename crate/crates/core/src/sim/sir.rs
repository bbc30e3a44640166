use crate::error::Result;
use crate::metrics::{autocorrelate, sir_db};
use crate::pulse::{sample_pulse, PulseKind, PulseSpec, SampledFilter};

#[derive(Clone, Debug, PartialEq)]
pub struct SirReport {
    /// `rrc`, `ht`, `mht`, or `delta` for the self-test row.
    pub filter: String,
    pub half_window: usize,
    pub sir_db: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SirTableConfig {
    pub symbol_period: f64,
    pub rolloff: f64,
    pub transition: f64,
    pub sample_rate: f64,
    pub half_windows: Vec<usize>,
    /// Append a unit-impulse row, whose SIR is infinite.
    pub include_delta: bool,
}

impl Default for SirTableConfig {
    fn default() -> Self {
        Self {
            symbol_period: 1.0,
            rolloff: 0.161,
            transition: 0.25,
            sample_rate: 5.0,
            half_windows: vec![25, 50, 100],
            include_delta: true,
        }
    }
}

/// SIR of `R_gg(nT)` for every pulse kind and window length, in the order
/// the windows are listed.
pub fn run_sir_table(cfg: &SirTableConfig) -> Result<Vec<SirReport>> {
    let mut rows = Vec::new();
    for &m in &cfg.half_windows {
        let spec = PulseSpec::new(
            cfg.symbol_period,
            cfg.rolloff,
            cfg.transition,
            cfg.sample_rate,
            m,
        )?;
        for kind in PulseKind::ALL {
            let f = sample_pulse(kind, &spec)?;
            rows.push(SirReport {
                filter: kind.name().to_string(),
                half_window: m,
                sir_db: sir_db(&autocorrelate(&f)?, spec.interpolation())?,
            });
        }
    }
    if cfg.include_delta {
        let delta = SampledFilter::from_real(vec![1.0], 1.0 / cfg.sample_rate);
        let interp = (cfg.sample_rate * cfg.symbol_period).round().max(1.0) as usize;
        rows.push(SirReport {
            filter: "delta".to_string(),
            half_window: 0,
            sir_db: sir_db(&autocorrelate(&delta)?, interp)?,
        });
    }
    Ok(rows)
}

//! Flat `key = value` configuration for BER sweeps.
//!
//! ```text
//! # pulse and modem
//! symbol_period    = 1.0        # T in seconds
//! rolloff          = 0.161      # ρ
//! transition       = 0.25       # a, modified Hilbert ramp fraction
//! subcarriers      = 5          # N (= interpolation factor)
//! window_multiple  = 16         # w, M = w·N; 8 or 16
//! # turbo code
//! info_bits        = 1024       # L_d1
//! feedback         = 7          # octal
//! feedforward      = 5          # octal
//! iterations       = 8
//! extrinsic_scale  = 0.75
//! interleaver_seed = 1
//! # sweep
//! snr_db           = 0, 0.5, 1, 1.5, 2
//! max_frames       = 10000
//! min_errors       = 100
//! seed             = 1
//! uncoded          = false
//! ber_out          = ber.csv    # optional
//! ```
//!
//! Unknown or repeated keys are rejected.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::modem::ModemConfig;
use crate::turbo::{parse_octal, TurboCode, TurboConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationConfig {
    pub symbol_period: f64,
    pub rolloff: f64,
    pub transition: f64,
    pub subcarriers: usize,
    pub window_multiple: usize,
    pub turbo: TurboConfig,
    pub snr_db: Vec<f64>,
    pub max_frames: usize,
    pub min_errors: usize,
    pub seed: u64,
    /// Skip the turbo code and score raw BPSK decisions.
    pub uncoded: bool,
    pub ber_out: Option<PathBuf>,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            symbol_period: 1.0,
            rolloff: 0.161,
            transition: 0.25,
            subcarriers: 5,
            window_multiple: 16,
            turbo: TurboConfig::default(),
            snr_db: vec![0.0, 0.5, 1.0, 1.5, 2.0],
            max_frames: 10_000,
            min_errors: 100,
            seed: 1,
            uncoded: false,
            ber_out: None,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value `{value}` for `{key}`")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(key, s))
        .collect()
}

impl SimulationConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(Error::Config(format!(
                    "line {}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
            match key {
                "symbol_period" => cfg.symbol_period = parse_value(key, value)?,
                "rolloff" => cfg.rolloff = parse_value(key, value)?,
                "transition" => cfg.transition = parse_value(key, value)?,
                "subcarriers" => cfg.subcarriers = parse_value(key, value)?,
                "window_multiple" => cfg.window_multiple = parse_value(key, value)?,
                "info_bits" => cfg.turbo.info_len = parse_value(key, value)?,
                "feedback" => cfg.turbo.feedback = parse_octal(value)?,
                "feedforward" => cfg.turbo.feedforward = parse_octal(value)?,
                "iterations" => cfg.turbo.iterations = parse_value(key, value)?,
                "extrinsic_scale" => cfg.turbo.extrinsic_scale = parse_value(key, value)?,
                "interleaver_seed" => cfg.turbo.interleaver_seed = parse_value(key, value)?,
                "snr_db" => cfg.snr_db = parse_list(key, value)?,
                "max_frames" => cfg.max_frames = parse_value(key, value)?,
                "min_errors" => cfg.min_errors = parse_value(key, value)?,
                "seed" => cfg.seed = parse_value(key, value)?,
                "uncoded" => cfg.uncoded = parse_value(key, value)?,
                "ber_out" => cfg.ber_out = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Serializes to the same key-value format.
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let snr: Vec<String> = self.snr_db.iter().map(f64::to_string).collect();
        let _ = writeln!(s, "symbol_period = {}", self.symbol_period);
        let _ = writeln!(s, "rolloff = {}", self.rolloff);
        let _ = writeln!(s, "transition = {}", self.transition);
        let _ = writeln!(s, "subcarriers = {}", self.subcarriers);
        let _ = writeln!(s, "window_multiple = {}", self.window_multiple);
        let _ = writeln!(s, "info_bits = {}", self.turbo.info_len);
        let _ = writeln!(s, "feedback = {:o}", self.turbo.feedback);
        let _ = writeln!(s, "feedforward = {:o}", self.turbo.feedforward);
        let _ = writeln!(s, "iterations = {}", self.turbo.iterations);
        let _ = writeln!(s, "extrinsic_scale = {}", self.turbo.extrinsic_scale);
        let _ = writeln!(s, "interleaver_seed = {}", self.turbo.interleaver_seed);
        let _ = writeln!(s, "snr_db = {}", snr.join(", "));
        let _ = writeln!(s, "max_frames = {}", self.max_frames);
        let _ = writeln!(s, "min_errors = {}", self.min_errors);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "uncoded = {}", self.uncoded);
        if let Some(p) = &self.ber_out {
            let _ = writeln!(s, "ber_out = {}", p.display());
        }
        s
    }

    pub fn modem_config(&self) -> Result<ModemConfig> {
        ModemConfig::new(
            self.subcarriers,
            self.window_multiple,
            self.symbol_period,
            self.rolloff,
            self.transition,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let wrap = |e: Error| match e {
            Error::Config(_) => e,
            other => Error::Config(other.to_string()),
        };
        if !matches!(self.window_multiple, 8 | 16) {
            return Err(Error::Config(format!(
                "window_multiple must be 8 or 16, got {}",
                self.window_multiple
            )));
        }
        self.modem_config().map_err(wrap)?;
        if !self.uncoded {
            TurboCode::new(self.turbo.clone()).map_err(wrap)?;
        } else if self.turbo.info_len == 0 {
            return Err(Error::Config("info_bits must be > 0".into()));
        }
        if self.snr_db.is_empty() {
            return Err(Error::Config("snr_db list is empty".into()));
        }
        if let Some(s) = self
            .snr_db
            .iter()
            .find(|s| s.is_nan() || **s == f64::NEG_INFINITY)
        {
            return Err(Error::Config(format!("invalid SNR point {s}")));
        }
        if self.max_frames == 0 {
            return Err(Error::Config("max_frames must be > 0".into()));
        }
        Ok(())
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hilbert_ofdm::metrics::dft_magnitude_db;
use hilbert_ofdm::modem::ModemConfig;
use hilbert_ofdm::pulse::{analytic_filter, sample_pulse, PulseKind, PulseSpec};
use hilbert_ofdm::sim::{
    report, run_ber_sweep, run_loopback, run_sir_table, save_ber_csv, save_sir_csv,
    SimulationConfig, SirTableConfig,
};
use hilbert_ofdm::Error;

#[derive(Parser)]
#[command(version, about = "Hilbert-transform multicarrier modem simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write sampled pulse taps (and optionally the magnitude response).
    Pulse {
        #[arg(long, default_value = "rrc")]
        kind: PulseKind,
        #[arg(long, default_value = "taps.csv")]
        out: PathBuf,
        /// Half window M in samples.
        #[arg(long = "M", default_value_t = 100)]
        half_window: usize,
        #[arg(long, default_value_t = 0.161)]
        rolloff: f64,
        #[arg(long, default_value_t = 0.25)]
        transition: f64,
        /// Samples per symbol period.
        #[arg(long, default_value_t = 5.0)]
        fs: f64,
        /// Also write the spectrum of p + j·(this pulse).
        #[arg(long)]
        spectrum: Option<PathBuf>,
        #[arg(long, default_value_t = 4096)]
        n_fft: usize,
    },
    /// Tabulate SIR against the half window length.
    Sir {
        #[arg(long = "M", value_delimiter = ',', default_value = "25,50,100")]
        half_windows: Vec<usize>,
        #[arg(long, default_value = "sir.csv")]
        out: PathBuf,
        #[arg(long, default_value_t = 0.161)]
        rolloff: f64,
        #[arg(long, default_value_t = 0.25)]
        transition: f64,
        #[arg(long, default_value_t = 5.0)]
        fs: f64,
    },
    /// Noiseless modulate/demodulate check; exits 2 on any bit error.
    Loopback {
        #[arg(long, default_value_t = 16)]
        w: usize,
        #[arg(long, default_value_t = 5)]
        subcarriers: usize,
        #[arg(long, default_value_t = 2000)]
        symbols: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Monte-Carlo BER sweep.
    Ber {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `ber_out` in the config file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        uncoded: bool,
        /// Also write a gnuplot data file.
        #[arg(long)]
        dat: Option<PathBuf>,
    },
}

enum Failure {
    Config(String),
    Acceptance(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn pulse_spec(rolloff: f64, transition: f64, fs: f64, m: usize) -> Result<PulseSpec, Failure> {
    Ok(PulseSpec::new(1.0, rolloff, transition, fs, m)?)
}

#[allow(clippy::too_many_arguments)]
fn cmd_pulse(
    kind: PulseKind,
    out: &Path,
    m: usize,
    rolloff: f64,
    transition: f64,
    fs: f64,
    spectrum: Option<&Path>,
    n_fft: usize,
) -> Result<(), Failure> {
    let spec = pulse_spec(rolloff, transition, fs, m)?;
    let filter = sample_pulse(kind, &spec)?;
    report::write_atomic(out, |w| filter.write_csv(w))?;
    println!("wrote {} taps of {kind} to {}", filter.len(), out.display());
    if let Some(path) = spectrum {
        let taps = if kind == PulseKind::Rrc {
            filter.taps.clone()
        } else {
            analytic_filter(kind, &spec)?.taps
        };
        let s = dft_magnitude_db(&taps, n_fft)?;
        report::write_atomic(path, |w| s.write_csv(w))?;
        println!("wrote {n_fft}-point spectrum to {}", path.display());
    }
    Ok(())
}

fn cmd_sir(
    half_windows: Vec<usize>,
    out: &Path,
    rolloff: f64,
    transition: f64,
    fs: f64,
) -> Result<(), Failure> {
    let rows = run_sir_table(&SirTableConfig {
        symbol_period: 1.0,
        rolloff,
        transition,
        sample_rate: fs,
        half_windows,
        include_delta: true,
    })?;
    for r in &rows {
        println!(
            "{:>5} M={:<4} SIR={:.2} dB",
            r.filter, r.half_window, r.sir_db
        );
    }
    save_sir_csv(&rows, out)?;
    Ok(())
}

fn cmd_loopback(w: usize, subcarriers: usize, symbols: usize, seed: u64) -> Result<(), Failure> {
    let cfg = ModemConfig::new(subcarriers, w, 1.0, 0.161, 0.25)?;
    let r = run_loopback(cfg, symbols, seed)?;
    println!(
        "N={} w={} bits={} errors={} ber={:e} max|x-S|={:.4e} sir={:.2} dB (predicted {:.2} dB)",
        r.subcarriers,
        r.window_multiple,
        r.bits,
        r.bit_errors,
        r.ber,
        r.max_abs_error,
        r.measured_sir_db,
        r.predicted_sir_db
    );
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Acceptance(format!(
            "{} bit errors in loopback",
            r.bit_errors
        )))
    }
}

fn cmd_ber(
    config: &Path,
    out: Option<PathBuf>,
    uncoded: bool,
    dat: Option<PathBuf>,
) -> Result<(), Failure> {
    let mut cfg = SimulationConfig::from_file(config)?;
    cfg.uncoded |= uncoded;
    let out = out
        .or_else(|| cfg.ber_out.clone())
        .unwrap_or_else(|| PathBuf::from("ber.csv"));
    let points = run_ber_sweep(&cfg)?;
    for p in &points {
        println!(
            "snr={:>5.2} dB frames={:<6} bits={:<9} errors={:<6} ber={:.3e} theory={:.3e} stop={:?}",
            p.snr_db, p.frames, p.bits, p.errors, p.ber, p.theory_ber, p.stop
        );
    }
    save_ber_csv(&points, &out)?;
    if let Some(dat) = dat {
        report::write_ber_dat(&points, &dat)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is reserved for acceptance
    // failures here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Pulse {
            kind,
            out,
            half_window,
            rolloff,
            transition,
            fs,
            spectrum,
            n_fft,
        } => cmd_pulse(
            kind,
            &out,
            half_window,
            rolloff,
            transition,
            fs,
            spectrum.as_deref(),
            n_fft,
        ),
        Command::Sir {
            half_windows,
            out,
            rolloff,
            transition,
            fs,
        } => cmd_sir(half_windows, &out, rolloff, transition, fs),
        Command::Loopback {
            w,
            subcarriers,
            symbols,
            seed,
        } => cmd_loopback(w, subcarriers, symbols, seed),
        Command::Ber {
            config,
            out,
            uncoded,
            dat,
        } => cmd_ber(&config, out, uncoded, dat),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Acceptance(msg)) => {
            eprintln!("fail: {msg}");
            ExitCode::from(2)
        }
    }
}

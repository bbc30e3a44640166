//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod common;

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use hilbert_ofdm::metrics::{autocorrelate, dft_magnitude_db, sir_db};
use hilbert_ofdm::modem::ModemConfig;
use hilbert_ofdm::pulse::{
    analytic_filter, hilbert_rrc, mod_hilbert_rrc, sample_pulse, PulseKind, PulseSpec,
};
use hilbert_ofdm::sim::{run_ber_sweep, run_loopback, SimulationConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_correlation, brute_sir_db, close, DEFAULT};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn spec(m: usize) -> PulseSpec {
    PulseSpec::new(1.0, 0.161, 0.25, 5.0, m).unwrap()
}

fn closed_form_fidelity() -> Verdict {
    let s = spec(100);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..100 {
        let t = rng.random_range(-5.0..5.0);
        for (got, want) in [
            (hilbert_rrc(t, &s), DEFAULT.hilbert(t)),
            (mod_hilbert_rrc(t, &s), DEFAULT.modified_hilbert(t)),
        ] {
            worst = worst.max((got - want).abs() / want.abs().max(1e-300));
            failures += usize::from(!close(got, want, 1e-6, 1e-9));
        }
    }
    verdict(
        failures == 0,
        format!("200 evaluations, {failures} outside 1e-6, worst relative error {worst:.2e}"),
    )
}

fn singularity_safety() -> Verdict {
    let s = spec(100);
    let t0 = 1.0 / (4.0 * 0.161);
    let mut grid: Vec<f64> = (-20_000..=20_000).map(|k| k as f64 * 1e-3).collect();
    let mut specials = Vec::new();
    for base in [0.0, t0, -t0] {
        for h in [0.0, 1e-12, -1e-12] {
            specials.push(base + h);
        }
    }
    grid.extend(&specials);
    let non_finite = grid
        .iter()
        .flat_map(|&t| PulseKind::ALL.map(|k| k.eval(t, &s)))
        .filter(|v| !v.is_finite())
        .count();
    let mut worst = 0.0f64;
    let mut mismatches = 0;
    for &t in &specials {
        for (got, want) in [
            (hilbert_rrc(t, &s), DEFAULT.hilbert(t)),
            (mod_hilbert_rrc(t, &s), DEFAULT.modified_hilbert(t)),
        ] {
            worst = worst.max((got - want).abs());
            mismatches += usize::from(!close(got, want, 1e-6, 1e-9));
        }
    }
    verdict(
        non_finite == 0 && mismatches == 0,
        format!(
            "{} points, {non_finite} non-finite; limits at 0, ±1/(8Bρ): {mismatches} mismatches, worst abs error {worst:.1e}",
            grid.len() * 3
        ),
    )
}

fn sir_reproduction() -> Verdict {
    let mut ok = true;
    let mut rows = Vec::new();
    let mut prev_rrc = f64::MIN;
    let mut worst_gap = 0.0f64;
    for m in [25, 50, 100] {
        let s = spec(m);
        let mut sir = |kind| {
            let f = sample_pulse(kind, &s).unwrap();
            let lib = sir_db(&autocorrelate(&f).unwrap(), 5).unwrap();
            let taps = f.real_parts();
            let oracle = brute_sir_db(&brute_correlation(&taps, &taps), 5);
            worst_gap = worst_gap.max((lib - oracle).abs());
            lib
        };
        let (rrc, ht, mht) = (
            sir(PulseKind::Rrc),
            sir(PulseKind::Hilbert),
            sir(PulseKind::ModifiedHilbert),
        );
        ok &= rrc >= prev_rrc && (rrc - mht).abs() <= 10.0 && ht <= rrc - 10.0;
        prev_rrc = rrc;
        rows.push(format!("M={m}: rrc {rrc:.2}, ht {ht:.2}, mht {mht:.2}"));
    }
    ok &= worst_gap < 0.01;
    verdict(
        ok,
        format!("{}; oracle gap {worst_gap:.1e} dB", rows.join("; ")),
    )
}

fn noiseless_loopback() -> Verdict {
    let cfg = ModemConfig::new(5, 16, 1.0, 0.161, 0.25).unwrap();
    let r = run_loopback(cfg, 10_000, 1).unwrap();
    let gap = (r.measured_sir_db - r.predicted_sir_db).abs();
    verdict(
        r.bit_errors == 0 && gap <= 1.0,
        format!(
            "{} bits, {} errors, max |x-S| {:.3e}, SIR from deviations {:.2} dB vs pulse SIR {:.2} dB",
            r.bits, r.bit_errors, r.max_abs_error, r.measured_sir_db, r.predicted_sir_db
        ),
    )
}

fn uncoded_theory() -> Verdict {
    let cfg = SimulationConfig {
        snr_db: vec![2.0, 4.0, 6.0, 8.0],
        uncoded: true,
        max_frames: 200,
        min_errors: 0,
        seed: 7,
        ..Default::default()
    };
    let points = run_ber_sweep(&cfg).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for p in &points {
        let sigma = (p.theory_ber * (1.0 - p.theory_ber) / p.bits as f64).sqrt();
        let z = (p.ber - p.theory_ber) / sigma;
        ok &= p.errors >= 100 && z.abs() <= 3.0;
        parts.push(format!(
            "{} dB: {:.4e} vs {:.4e} ({z:+.2}σ, {} errors)",
            p.snr_db, p.ber, p.theory_ber, p.errors
        ));
    }
    verdict(ok, parts.join("; "))
}

fn coded_waterfall() -> Verdict {
    let cfg = SimulationConfig {
        snr_db: vec![0.0, 0.5, 1.0, 1.5, 2.0],
        // Errors arrive in bursts of about two, so 500 errors keep the
        // estimate near 1e-4 to roughly ±10%.
        max_frames: 20_000,
        min_errors: 500,
        seed: 3,
        ..Default::default()
    };
    let points = run_ber_sweep(&cfg).unwrap();
    let reached = points.iter().any(|p| p.ber <= 1e-4);
    let monotone = points.windows(2).all(|w| w[1].ber < w[0].ber);
    let curve: Vec<String> = points
        .iter()
        .map(|p| format!("{} dB {:.2e} ({}/{})", p.snr_db, p.ber, p.errors, p.bits))
        .collect();
    verdict(
        reached && monotone,
        format!(
            "reaches 1e-4: {reached}, monotone: {monotone}; {}",
            curve.join(", ")
        ),
    )
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("sim.cfg"),
        "info_bits = 256\nsnr_db = 0, 1, 2\nmax_frames = 40\nmin_errors = 50\nseed = 11\n",
    )
    .unwrap();
    let mut outputs = Vec::new();
    for out in ["first.csv", "second.csv"] {
        let status = Command::new(env!("CARGO_BIN_EXE_hilbert-ofdm"))
            .args(["ber", "--config", "sim.cfg", "--out", out])
            .current_dir(dir.path())
            .output()
            .unwrap()
            .status;
        if !status.success() {
            return verdict(false, format!("ber exited with {status}"));
        }
        outputs.push(fs::read(dir.path().join(out)).unwrap());
    }
    verdict(
        outputs[0] == outputs[1],
        format!(
            "two runs, {} bytes each, identical: {}",
            outputs[0].len(),
            outputs[0] == outputs[1]
        ),
    )
}

fn analytic_signal() -> Verdict {
    let s = spec(100);
    let taps = analytic_filter(PulseKind::ModifiedHilbert, &s)
        .unwrap()
        .taps;
    let spectrum = dft_magnitude_db(&taps, 4096).unwrap();
    let frac = spectrum.negative_fraction(2.0 * s.transition_edge() / s.sample_rate());
    verdict(
        frac < 1e-3,
        format!("negative-frequency energy fraction {frac:.2e}"),
    )
}

type Criterion = (&'static str, Duration, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "closed-form fidelity",
            Duration::from_secs(10),
            closed_form_fidelity,
        ),
        (
            "singularity safety",
            Duration::from_secs(60),
            singularity_safety,
        ),
        (
            "SIR reproduction",
            Duration::from_secs(30),
            sir_reproduction,
        ),
        (
            "noiseless loopback",
            Duration::from_secs(60),
            noiseless_loopback,
        ),
        (
            "uncoded BER vs theory",
            Duration::from_secs(300),
            uncoded_theory,
        ),
        (
            "coded waterfall",
            Duration::from_secs(1800),
            coded_waterfall,
        ),
        ("determinism", Duration::from_secs(300), determinism),
        (
            "analytic-signal property",
            Duration::from_secs(60),
            analytic_signal,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let pass = v.pass && elapsed <= budget;
        failed += usize::from(!pass);
        println!(
            "[{}] {}. {name} ({:.2} s, budget {} s): {}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            v.detail
        );
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Experiment drivers: configuration, BER sweeps, SIR tables, loopback and
//! report files.

pub mod ber;
pub mod config;
pub mod loopback;
pub mod report;
pub mod sir;

pub use ber::{q_function, run_ber_sweep, uncoded_theory_ber, BerPoint, StopReason};
pub use config::SimulationConfig;
pub use loopback::{run_loopback, LoopbackReport};
pub use report::{read_ber_csv, save_ber_csv, save_sir_csv, write_ber_csv, write_sir_csv, BerRow};
pub use sir::{run_sir_table, SirReport, SirTableConfig};

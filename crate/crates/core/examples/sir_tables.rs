//! SIR of the sampled autocorrelations against window length.
//!
//! cargo run --example sir_tables

use hilbert_ofdm::sim::{run_sir_table, SirTableConfig};

fn main() -> hilbert_ofdm::Result<()> {
    let rows = run_sir_table(&SirTableConfig {
        half_windows: vec![25, 50, 100, 200],
        include_delta: false,
        ..Default::default()
    })?;
    println!("{:>5} {:>10} {:>10} {:>10}", "M", "rrc", "ht", "mht");
    for chunk in rows.chunks(3) {
        println!(
            "{:>5} {:>10.2} {:>10.2} {:>10.2}",
            chunk[0].half_window, chunk[0].sir_db, chunk[1].sir_db, chunk[2].sir_db
        );
    }
    Ok(())
}

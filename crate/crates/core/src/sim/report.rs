//! CSV and gnuplot output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use tempfile::NamedTempFile;

use crate::error::Result;
use crate::sim::ber::BerPoint;
use crate::sim::sir::SirReport;

/// One line of `snr_db,bits,errors,ber,theory_ber`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BerRow {
    pub snr_db: f64,
    pub bits: u64,
    pub errors: u64,
    pub ber: f64,
    pub theory_ber: f64,
}

impl From<&BerPoint> for BerRow {
    fn from(p: &BerPoint) -> Self {
        Self {
            snr_db: p.snr_db,
            bits: p.bits,
            errors: p.errors,
            ber: p.ber,
            theory_ber: p.theory_ber,
        }
    }
}

/// Writes to a temporary file beside `path` and renames it into place.
pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        fill(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn write_ber_csv<W: Write>(points: &[BerPoint], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(["snr_db", "bits", "errors", "ber", "theory_ber"])?;
    for p in points {
        w.serialize(BerRow::from(p))?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_ber_csv(points: &[BerPoint], path: &Path) -> Result<()> {
    write_atomic(path, |w| write_ber_csv(points, w))
}

pub fn read_ber_csv(path: &Path) -> Result<Vec<BerRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r
        .deserialize()
        .collect::<std::result::Result<Vec<BerRow>, _>>()?;
    Ok(rows)
}

/// Writes `filter,M,sir_db`; infinite SIR is written as `inf`.
pub fn write_sir_csv<W: Write>(rows: &[SirReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["filter", "M", "sir_db"])?;
    for r in rows {
        let sir = if r.sir_db == f64::INFINITY {
            "inf".to_string()
        } else {
            r.sir_db.to_string()
        };
        w.write_record([r.filter.clone(), r.half_window.to_string(), sir])?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_sir_csv(rows: &[SirReport], path: &Path) -> Result<()> {
    write_atomic(path, |w| write_sir_csv(rows, w))
}

/// Whitespace-separated `snr_db ber theory_ber` for gnuplot.
pub fn write_ber_dat(points: &[BerPoint], path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "# snr_db ber theory_ber")?;
    for p in points {
        writeln!(w, "{} {:e} {:e}", p.snr_db, p.ber, p.theory_ber)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::ber::StopReason;

    fn point(snr: f64, errors: u64) -> BerPoint {
        BerPoint {
            snr_db: snr,
            bits: 1000,
            errors,
            ber: errors as f64 / 1000.0,
            theory_ber: 0.01,
            frames: 1,
            stop: StopReason::MaxFrames,
        }
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let mut buf = Vec::new();
        write_ber_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "snr_db,bits,errors,ber,theory_ber\n"
        );
    }

    #[test]
    fn ber_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ber.csv");
        let pts = vec![point(0.0, 12), point(0.5, 3)];
        save_ber_csv(&pts, &path).unwrap();
        let rows = read_ber_csv(&path).unwrap();
        assert_eq!(rows, pts.iter().map(BerRow::from).collect::<Vec<_>>());
    }

    #[test]
    fn sir_writes_inf() {
        let rows = vec![
            SirReport {
                filter: "rrc".into(),
                half_window: 25,
                sir_db: 31.5,
            },
            SirReport {
                filter: "delta".into(),
                half_window: 0,
                sir_db: f64::INFINITY,
            },
        ];
        let mut buf = Vec::new();
        write_sir_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "filter,M,sir_db\nrrc,25,31.5\ndelta,0,inf\n"
        );
    }
}

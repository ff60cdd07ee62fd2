//! On-disk formats: the per-step time series CSV and field snapshots.
//!
//! `energy.csv` carries one row per step at full double precision (17
//! significant digits). Snapshots are ASCII: a `CHHS-FIELD <nx> <ny> <h> <t>`
//! header line, then the nx*ny interior values row-major, one grid row per
//! line, printed in shortest round-trip form so read(write(phi)) reproduces
//! the interior bit for bit.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::diagnostics::DiagnosticsRecord;
use crate::grid::{CellField, GridSpec};

pub const TIMESERIES_HEADER: &str =
    "step,t,E_h,F_h,mass,grad_mu_sq,u_sq,dissipation_defect,h3_sum,div_u_inf,vcycles";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Format {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("{path}: invalid grid in header: {source}")]
    Grid {
        path: PathBuf,
        #[source]
        source: crate::grid::GridError,
    },
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> IoError + '_ {
    move |source| IoError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Streaming writer for `energy.csv`.
pub struct TimeseriesWriter {
    w: BufWriter<File>,
    path: PathBuf,
}

impl TimeseriesWriter {
    pub fn create(path: &Path) -> Result<Self, IoError> {
        let f = File::create(path).map_err(io_err(path))?;
        let mut w = BufWriter::new(f);
        writeln!(w, "{TIMESERIES_HEADER}").map_err(io_err(path))?;
        Ok(Self {
            w,
            path: path.to_path_buf(),
        })
    }

    pub fn write_record(&mut self, r: &DiagnosticsRecord) -> Result<(), IoError> {
        writeln!(
            self.w,
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.step,
            r.t,
            r.e_h,
            r.f_h,
            r.mass,
            r.grad_mu_sq,
            r.u_sq,
            r.dissipation_defect,
            r.h3_sum,
            r.div_u_inf,
            r.vcycles
        )
        .map_err(io_err(&self.path))
    }

    pub fn finish(mut self) -> Result<(), IoError> {
        self.w.flush().map_err(io_err(&self.path))
    }
}

/// Write `phi`'s interior with a `CHHS-FIELD` header.
pub fn write_snapshot(path: &Path, phi: &CellField, t: f64) -> Result<(), IoError> {
    let spec = phi.spec();
    let f = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(f);
    writeln!(w, "CHHS-FIELD {} {} {} {}", spec.nx, spec.ny, spec.h, t).map_err(io_err(path))?;
    for j in 1..=spec.ny {
        let mut line = String::with_capacity(spec.nx * 24);
        for i in 1..=spec.nx {
            if i > 1 {
                line.push(' ');
            }
            line.push_str(&format!("{}", phi.at(i, j)));
        }
        writeln!(w, "{line}").map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// Read a snapshot back; returns the ghost-filled field and its time stamp.
pub fn read_snapshot(path: &Path) -> Result<(CellField, f64), IoError> {
    let f = File::open(path).map_err(io_err(path))?;
    let reader = BufReader::new(f);
    let mut lines = reader.lines().enumerate();

    let fmt = |line: usize, reason: String| IoError::Format {
        path: path.to_path_buf(),
        line,
        reason,
    };

    let (_, header) = lines.next().ok_or_else(|| fmt(1, "empty file".into()))?;
    let header = header.map_err(io_err(path))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("CHHS-FIELD") {
        return Err(fmt(1, "missing CHHS-FIELD magic".into()));
    }
    let mut next_num = |name: &str| -> Result<f64, IoError> {
        parts
            .next()
            .ok_or_else(|| fmt(1, format!("missing {name}")))?
            .parse::<f64>()
            .map_err(|e| fmt(1, format!("bad {name}: {e}")))
    };
    let nx = next_num("nx")? as usize;
    let ny = next_num("ny")? as usize;
    let h = next_num("h")?;
    let t = next_num("t")?;

    let spec = GridSpec::from_spacing(nx, ny, h).map_err(|source| IoError::Grid {
        path: path.to_path_buf(),
        source,
    })?;
    let mut phi = CellField::zeros(spec);
    for j in 1..=ny {
        let (idx, row) = lines
            .next()
            .ok_or_else(|| fmt(j + 1, format!("expected {ny} data rows, got {}", j - 1)))?;
        let row = row.map_err(io_err(path))?;
        let mut vals = row.split_whitespace();
        for i in 1..=nx {
            let v = vals
                .next()
                .ok_or_else(|| fmt(idx + 1, format!("row has fewer than {nx} values")))?
                .parse::<f64>()
                .map_err(|e| fmt(idx + 1, format!("bad value: {e}")))?;
            phi.set(i, j, v);
        }
        if vals.next().is_some() {
            return Err(fmt(idx + 1, format!("row has more than {nx} values")));
        }
    }
    phi.fill_ghosts_neumann();
    Ok((phi, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::project_function;

    #[test]
    fn snapshot_roundtrip_is_bitwise() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("phi_7.dat");
        let spec = GridSpec::square(3.2, 16).unwrap();
        let phi = project_function(|x, y| (x * 7.1).sin() * (y * 3.3).cos() / 3.0, spec);
        write_snapshot(&path, &phi, 0.35).unwrap();
        let (back, t) = read_snapshot(&path).unwrap();
        assert_eq!(t, 0.35);
        assert_eq!(back.spec().nx, 16);
        for j in 1..=16 {
            for i in 1..=16 {
                assert_eq!(back.at(i, j), phi.at(i, j), "at ({i},{j})");
            }
        }
    }

    #[test]
    fn snapshot_header_h_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("phi_0.dat");
        let spec = GridSpec::square(3.2, 32).unwrap();
        let phi = CellField::constant(spec, 0.0);
        write_snapshot(&path, &phi, 0.0).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let header = text.lines().next().unwrap();
        let h_str = header.split_whitespace().nth(3).unwrap();
        assert_eq!(h_str.parse::<f64>().unwrap(), 3.2 / 32.0);
    }

    #[test]
    fn timeseries_header_exact() {
        assert_eq!(
            TIMESERIES_HEADER,
            "step,t,E_h,F_h,mass,grad_mu_sq,u_sq,dissipation_defect,h3_sum,div_u_inf,vcycles"
        );
    }

    #[test]
    fn read_rejects_short_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.dat");
        std::fs::write(&path, "CHHS-FIELD 2 2 0.5 0.0\n1.0 2.0\n3.0\n").unwrap();
        let err = read_snapshot(&path).unwrap_err();
        assert!(err.to_string().contains("fewer than"));
    }
}

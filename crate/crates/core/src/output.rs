//! CSV persistence of field snapshots and per-step series.
//!
//! Floats are written with `Display`, which gives the shortest decimal that
//! parses back to the same value.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::coupling::Simulation;
use crate::error::{Error, Result};

pub const SNAPSHOT_HEADER: &str = "time,cell,x,rho,ux,T,h,beta,np";
pub const SERIES_HEADER: &str = "step,time,dt,total_particles";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellRecord {
    pub cell: usize,
    pub x: f64,
    pub rho: f64,
    pub ux: f64,
    pub theta: f64,
    pub h: f64,
    pub beta: f64,
    pub np: usize,
}

/// All cells at one output time.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRecord {
    pub time: f64,
    pub cells: Vec<CellRecord>,
}

impl SnapshotRecord {
    /// Current state of a simulation. Cells without a valid state (an empty
    /// cell of a plain particle run) are reported as zeros.
    pub fn capture(sim: &Simulation) -> Self {
        let grid = sim.grid();
        let cells = (0..grid.n_cells)
            .map(|j| {
                let (rho, ux, theta) = match sim.field.states[j].primitives() {
                    Ok(p) => (p.rho, p.u[0], p.theta),
                    Err(_) => (0.0, 0.0, 0.0),
                };
                CellRecord {
                    cell: j,
                    x: grid.center(j),
                    rho,
                    ux,
                    theta,
                    h: sim.transition.h[j],
                    beta: sim.beta[j],
                    np: sim.particles.cell(j).len(),
                }
            })
            .collect();
        Self { time: sim.time, cells }
    }

    pub fn rho(&self) -> Vec<f64> {
        self.cells.iter().map(|c| c.rho).collect()
    }

    pub fn h(&self) -> Vec<f64> {
        self.cells.iter().map(|c| c.h).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRow {
    pub step: u64,
    pub time: f64,
    pub dt: f64,
    pub total_particles: usize,
}

pub fn write_snapshots(records: &[SnapshotRecord], path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    out.push_str(SNAPSHOT_HEADER);
    out.push('\n');
    for r in records {
        for c in &r.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.time, c.cell, c.x, c.rho, c.ux, c.theta, c.h, c.beta, c.np
            );
        }
    }
    write_text(path, &out)
}

pub fn write_snapshot(record: &SnapshotRecord, path: impl AsRef<Path>) -> Result<()> {
    write_snapshots(std::slice::from_ref(record), path)
}

pub fn write_series(series: &[SeriesRow], path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    out.push_str(SERIES_HEADER);
    out.push('\n');
    for s in series {
        let _ = writeln!(out, "{},{},{},{}", s.step, s.time, s.dt, s.total_particles);
    }
    write_text(path, &out)
}

fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn data_rows(path: impl AsRef<Path>, header: &str) -> Result<Vec<Vec<String>>> {
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut lines = reader.lines();
    match lines.next().transpose()? {
        Some(h) if h == header => {}
        other => return Err(Error::Config(format!("unexpected CSV header {other:?}"))),
    }
    let mut rows = Vec::new();
    for line in lines {
        let line = line?;
        if !line.is_empty() {
            rows.push(line.split(',').map(str::to_string).collect());
        }
    }
    Ok(rows)
}

fn field<T: std::str::FromStr>(row: &[String], k: usize) -> Result<T> {
    row.get(k)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Config(format!("bad CSV field {k} in {row:?}")))
}

/// Reads a snapshot file back, grouping rows by time.
pub fn read_snapshots(path: impl AsRef<Path>) -> Result<Vec<SnapshotRecord>> {
    let mut records: Vec<SnapshotRecord> = Vec::new();
    for row in data_rows(path, SNAPSHOT_HEADER)? {
        let time: f64 = field(&row, 0)?;
        let cell = CellRecord {
            cell: field(&row, 1)?,
            x: field(&row, 2)?,
            rho: field(&row, 3)?,
            ux: field(&row, 4)?,
            theta: field(&row, 5)?,
            h: field(&row, 6)?,
            beta: field(&row, 7)?,
            np: field(&row, 8)?,
        };
        match records.last_mut() {
            Some(r) if r.time.to_bits() == time.to_bits() => r.cells.push(cell),
            _ => records.push(SnapshotRecord {
                time,
                cells: vec![cell],
            }),
        }
    }
    Ok(records)
}

pub fn read_series(path: impl AsRef<Path>) -> Result<Vec<SeriesRow>> {
    data_rows(path, SERIES_HEADER)?
        .iter()
        .map(|row| {
            Ok(SeriesRow {
                step: field(row, 0)?,
                time: field(row, 1)?,
                dt: field(row, 2)?,
                total_particles: field(row, 3)?,
            })
        })
        .collect()
}

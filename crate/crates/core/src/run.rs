//! Deterministic run loop: builds a simulation from a scenario, steps it to
//! `t_end` and records snapshots and the particle-count series.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::coupling::{Mode, Simulation};
use crate::error::{Error, Result};
use crate::output::{write_series, write_snapshots, SeriesRow, SnapshotRecord};
use crate::scenario::ScenarioConfig;

pub const SNAPSHOT_FILE: &str = "snapshots.csv";
pub const SERIES_FILE: &str = "series.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const CONFIG_FILE: &str = "config.toml";

#[derive(Debug, Clone, Default)]
pub struct Recording {
    pub snapshots: Vec<SnapshotRecord>,
    pub series: Vec<SeriesRow>,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub recording: Recording,
    pub simulation: Simulation,
}

impl RunOutput {
    pub fn final_snapshot(&self) -> SnapshotRecord {
        SnapshotRecord::capture(&self.simulation)
    }

    /// Particle count averaged over steps, weighted by step length.
    pub fn time_averaged_particles(&self) -> f64 {
        let (num, den) = self
            .recording
            .series
            .iter()
            .fold((0.0, 0.0), |(n, d), s| (n + s.dt * s.total_particles as f64, d + s.dt));
        if den > 0.0 {
            num / den
        } else {
            0.0
        }
    }
}

pub fn build_simulation(config: &ScenarioConfig, mode: Mode) -> Result<Simulation> {
    config.validate()?;
    Simulation::new(
        config.initial_field()?,
        config.epsilon_field()?,
        config.particle_mass()?,
        config.boundary_conditions(),
        config.breakdown(),
        config.buffer_width,
        mode,
        config.seed,
    )
}

fn execute(config: &ScenarioConfig, mode: Mode, rec: &mut Recording) -> Result<Simulation> {
    let mut sim = build_simulation(config, mode)?;
    rec.series.push(SeriesRow {
        step: 0,
        time: 0.0,
        dt: 0.0,
        total_particles: sim.particles.len(),
    });
    let mut stops: Vec<(f64, bool)> = config.output_times.iter().map(|&t| (t, true)).collect();
    if config.output_times.last() != Some(&config.t_end) {
        stops.push((config.t_end, false));
    }
    for (stop, output) in stops {
        while sim.time < stop {
            let report = sim.step(Some(stop))?;
            rec.series.push(SeriesRow {
                step: report.step,
                time: report.time,
                dt: report.dt,
                total_particles: report.total_particles,
            });
        }
        if output {
            rec.snapshots.push(SnapshotRecord::capture(&sim));
        }
    }
    Ok(sim)
}

/// Runs `config` to `t_end` in memory.
pub fn simulate(config: &ScenarioConfig, mode: Mode) -> Result<RunOutput> {
    let mut recording = Recording::default();
    let simulation = execute(config, mode, &mut recording)?;
    Ok(RunOutput { recording, simulation })
}

#[derive(Serialize)]
struct Manifest<'a> {
    name: &'a str,
    mode: Mode,
    version: &'static str,
    threads: usize,
    wall_time_s: f64,
    steps: usize,
    final_time: f64,
    status: String,
    config: &'a ScenarioConfig,
}

/// Runs `config` and writes snapshots, the series, the configuration and a
/// JSON manifest to `out_dir`. On a solver error the partial outputs are
/// still written before the error is returned.
pub fn run(config: &ScenarioConfig, mode: Mode, out_dir: impl AsRef<Path>) -> Result<RunOutput> {
    let out_dir = out_dir.as_ref();
    std::fs::create_dir_all(out_dir)?;
    let started = Instant::now();
    let mut recording = Recording::default();
    let result = execute(config, mode, &mut recording);
    let wall = started.elapsed().as_secs_f64();

    write_snapshots(&recording.snapshots, out_dir.join(SNAPSHOT_FILE))?;
    write_series(&recording.series, out_dir.join(SERIES_FILE))?;
    std::fs::write(out_dir.join(CONFIG_FILE), config.to_toml()?)?;
    let manifest = Manifest {
        name: &config.name,
        mode,
        version: env!("CARGO_PKG_VERSION"),
        threads: rayon::current_num_threads(),
        wall_time_s: wall,
        steps: recording.series.len().saturating_sub(1),
        final_time: recording.series.last().map_or(0.0, |s| s.time),
        status: match &result {
            Ok(_) => "ok".to_string(),
            Err(e) => format!("error: {e}"),
        },
        config,
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Config(e.to_string()))?;
    std::fs::write(out_dir.join(MANIFEST_FILE), json + "\n")?;

    result.map(|simulation| RunOutput { recording, simulation })
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dsmc_fluid::scenario::{builtin_variant, Epsilon, ParticleBudget, BUILTIN_SCENARIOS};
use dsmc_fluid::{builtin_scenario, run, Mode, ScenarioConfig};

/// Number of worker threads; unset means one per core.
const THREADS_ENV: &str = "DSMC_FLUID_THREADS";

#[derive(Parser)]
#[command(name = "dsmc-fluid", version, about = "Hybrid DSMC / Euler gas simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Coupled,
    FullDsmc,
    EulerOnly,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write CSV snapshots, the particle series and a manifest.
    Run {
        /// Built-in scenario name or path to a TOML configuration.
        #[arg(long)]
        scenario: String,
        #[arg(long, value_enum, default_value = "coupled")]
        mode: ModeArg,
        /// Relaxation parameter: one value, or `left,right` split at mid-domain.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        beta_thr: Option<f64>,
        /// Buffer width in cells.
        #[arg(long)]
        buffer: Option<usize>,
        /// Particle budget, in the unit the scenario uses (per unit density or total).
        #[arg(long)]
        particles: Option<f64>,
        /// In full-dsmc mode, match the particles to the moment solver each step.
        #[arg(long)]
        guided: bool,
    },
    /// Print the TOML configuration of a built-in scenario.
    Show { name: String },
    /// List the built-in scenarios.
    List,
}

fn parse_eps(text: &str, config: &ScenarioConfig) -> Result<Epsilon, String> {
    let values: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| format!("bad --eps value {s:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match values[..] {
        [value] => Ok(Epsilon::Constant { value }),
        [left, right] => Ok(Epsilon::Split {
            left,
            right,
            at: 0.5 * (config.grid.x_min + config.grid.x_max),
        }),
        _ => Err(format!("--eps takes one or two values, got {text:?}")),
    }
}

fn load_scenario(name: &str) -> Result<ScenarioConfig, String> {
    if BUILTIN_SCENARIOS.contains(&name) {
        builtin_scenario(name).map_err(|e| e.to_string())
    } else if Path::new(name).exists() {
        ScenarioConfig::load(name).map_err(|e| format!("{name}: {e}"))
    } else {
        Err(format!(
            "unknown scenario {name:?}: not a file and not one of {}",
            BUILTIN_SCENARIOS.join(", ")
        ))
    }
}

#[allow(clippy::too_many_arguments)]
fn run_command(
    scenario: &str,
    mode: ModeArg,
    eps: Option<&str>,
    seed: Option<u64>,
    out: &Path,
    beta_thr: Option<f64>,
    buffer: Option<usize>,
    particles: Option<f64>,
    guided: bool,
) -> Result<(), String> {
    let mut config = load_scenario(scenario)?;
    if let Some(text) = eps {
        let parsed = parse_eps(text, &config)?;
        config = match parsed {
            Epsilon::Constant { value } if BUILTIN_SCENARIOS.contains(&scenario) => {
                builtin_variant(scenario, value).map_err(|e| e.to_string())?
            }
            other => ScenarioConfig {
                epsilon: other,
                ..config
            },
        };
    }
    if let Some(seed) = seed {
        config.seed = seed;
    }
    if let Some(thr) = beta_thr {
        config.beta_thr = thr;
    }
    if let Some(width) = buffer {
        config.buffer_width = width;
    }
    if let Some(count) = particles {
        config.particles = match config.particles {
            ParticleBudget::PerUnitDensity { .. } => ParticleBudget::PerUnitDensity { count },
            ParticleBudget::Total { .. } => ParticleBudget::Total { count },
        };
    }
    let mode = match mode {
        ModeArg::Coupled => Mode::Coupled,
        ModeArg::FullDsmc => Mode::FullDsmc { guided },
        ModeArg::EulerOnly => Mode::EulerOnly,
    };
    let output = run::run(&config, mode, out).map_err(|e| e.to_string())?;
    let sim = &output.simulation;
    println!(
        "{}: t = {} after {} steps, {} particles, outputs in {}",
        config.name,
        sim.time,
        sim.step_index,
        sim.particles.len(),
        out.display()
    );
    Ok(())
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .map_err(|_| format!("{THREADS_ENV}={value:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Run {
            scenario,
            mode,
            eps,
            seed,
            out,
            beta_thr,
            buffer,
            particles,
            guided,
        } => run_command(
            &scenario,
            mode,
            eps.as_deref(),
            seed,
            &out,
            beta_thr,
            buffer,
            particles,
            guided,
        ),
        Command::Show { name } => builtin_scenario(&name)
            .and_then(|c| c.to_toml())
            .map(|text| print!("{text}"))
            .map_err(|e| e.to_string()),
        Command::List => {
            for name in BUILTIN_SCENARIOS {
                println!("{name}");
            }
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

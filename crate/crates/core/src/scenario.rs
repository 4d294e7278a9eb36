//! Scenario descriptions: TOML configuration and the built-in test problems.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::boundary::{Boundaries, BoundaryKind};
use crate::coupling::BreakdownParams;
use crate::error::{Error, Result};
use crate::state::{ConservedField, ConservedState, GridSpec};

/// Version of the configuration layout understood by this crate.
pub const SCHEMA_VERSION: u32 = 1;

pub const BUILTIN_SCENARIOS: [&str; 3] = ["two-freq", "unsteady-shock", "sod"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryConfig {
    pub left: BoundaryKind,
    pub right: BoundaryKind,
}

/// Relaxation parameter, constant or split in two halves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Epsilon {
    Constant { value: f64 },
    /// `left` for cell centres below `at`, `right` otherwise.
    Split { left: f64, right: f64, at: f64 },
}

impl Epsilon {
    pub fn at(&self, x: f64) -> f64 {
        match *self {
            Epsilon::Constant { value } => value,
            Epsilon::Split { left, right, at } => {
                if x < at {
                    left
                } else {
                    right
                }
            }
        }
    }

    fn values(&self) -> Vec<f64> {
        match *self {
            Epsilon::Constant { value } => vec![value],
            Epsilon::Split { left, right, .. } => vec![left, right],
        }
    }
}

/// Density, streamwise velocity and temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimitiveState {
    pub rho: f64,
    pub u: f64,
    pub theta: f64,
}

impl PrimitiveState {
    pub fn conserved(&self) -> ConservedState {
        ConservedState::from_primitives(self.rho, [self.u, 0.0, 0.0], self.theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialData {
    Uniform {
        state: PrimitiveState,
    },
    /// `left` for cell centres `x <= interface`, `right` beyond.
    Piecewise {
        interface: f64,
        left: PrimitiveState,
        right: PrimitiveState,
    },
    /// `rho = base + amplitude * sqrt((x - center)^2 / width)` at constant
    /// velocity and temperature.
    Cusp {
        base: f64,
        amplitude: f64,
        center: f64,
        width: f64,
        u: f64,
        theta: f64,
    },
}

impl InitialData {
    pub fn at(&self, x: f64) -> PrimitiveState {
        match *self {
            InitialData::Uniform { state } => state,
            InitialData::Piecewise { interface, left, right } => {
                if x <= interface {
                    left
                } else {
                    right
                }
            }
            InitialData::Cusp {
                base,
                amplitude,
                center,
                width,
                u,
                theta,
            } => PrimitiveState {
                rho: base + amplitude * ((x - center).powi(2) / width).sqrt(),
                u,
                theta,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ParticleBudget {
    /// Particles in a cell of density one.
    PerUnitDensity { count: f64 },
    /// Particles representing the whole initial mass.
    Total { count: f64 },
}

impl ParticleBudget {
    fn count(&self) -> f64 {
        match *self {
            ParticleBudget::PerUnitDensity { count } | ParticleBudget::Total { count } => count,
        }
    }

    fn scaled(&self, factor: f64) -> Self {
        match *self {
            ParticleBudget::PerUnitDensity { count } => ParticleBudget::PerUnitDensity { count: count * factor },
            ParticleBudget::Total { count } => ParticleBudget::Total { count: count * factor },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema: u32,
    pub name: String,
    pub t_end: f64,
    pub output_times: Vec<f64>,
    pub seed: u64,
    /// Ramp width of the transition function, in cells.
    pub buffer_width: usize,
    pub beta_thr: f64,
    pub grad_floor: f64,
    pub grid: GridConfig,
    pub boundaries: BoundaryConfig,
    pub epsilon: Epsilon,
    pub initial: InitialData,
    pub particles: ParticleBudget,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.schema != SCHEMA_VERSION {
            return fail(format!("unsupported schema {} (expected {SCHEMA_VERSION})", self.schema));
        }
        self.grid_spec()?;
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return fail(format!("t_end = {} must be positive", self.t_end));
        }
        for &t in &self.output_times {
            if !(0.0..=self.t_end).contains(&t) {
                return fail(format!("output time {t} outside [0, {}]", self.t_end));
            }
        }
        if self.output_times.windows(2).any(|w| w[0] >= w[1]) {
            return fail("output times must be strictly increasing".into());
        }
        let budget = self.particles.count();
        if !(budget > 0.0) || !budget.is_finite() {
            return fail(format!("particle budget {budget} must be positive"));
        }
        if self.epsilon.values().iter().any(|e| !(*e > 0.0)) {
            return fail("epsilon must be positive".into());
        }
        if self.beta_thr.is_nan() || self.beta_thr < 0.0 {
            return fail(format!("beta_thr = {} must be non-negative", self.beta_thr));
        }
        if !(self.grad_floor >= 0.0) {
            return fail(format!("grad_floor = {} must be non-negative", self.grad_floor));
        }
        Ok(())
    }

    pub fn grid_spec(&self) -> Result<GridSpec> {
        GridSpec::new(self.grid.x_min, self.grid.x_max, self.grid.n_cells)
    }

    pub fn boundary_conditions(&self) -> Boundaries {
        Boundaries::new(self.boundaries.left, self.boundaries.right)
    }

    pub fn breakdown(&self) -> BreakdownParams {
        BreakdownParams {
            beta_thr: self.beta_thr,
            grad_floor: self.grad_floor,
        }
    }

    /// Cell averages of the initial data, sampled at cell centres.
    pub fn initial_field(&self) -> Result<ConservedField> {
        let grid = self.grid_spec()?;
        let states = (0..grid.n_cells)
            .map(|j| self.initial.at(grid.center(j)).conserved())
            .collect();
        let field = ConservedField::new(grid, states)?;
        field.primitives()?;
        Ok(field)
    }

    pub fn epsilon_field(&self) -> Result<Vec<f64>> {
        let grid = self.grid_spec()?;
        Ok((0..grid.n_cells).map(|j| self.epsilon.at(grid.center(j))).collect())
    }

    /// Mass of one particle implied by the budget.
    pub fn particle_mass(&self) -> Result<f64> {
        let grid = self.grid_spec()?;
        Ok(match self.particles {
            ParticleBudget::PerUnitDensity { count } => grid.dx() / count,
            ParticleBudget::Total { count } => self.initial_field()?.total().rho / count,
        })
    }

    /// The same scenario with the particle budget multiplied by `factor`.
    pub fn with_budget_factor(&self, factor: f64) -> Self {
        Self {
            particles: self.particles.scaled(factor),
            ..self.clone()
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }
}

/// One of the built-in scenarios with its default relaxation parameter.
pub fn builtin_scenario(name: &str) -> Result<ScenarioConfig> {
    match name {
        "two-freq" => Ok(two_freq()),
        "unsteady-shock" => unsteady_shock(1e-3),
        "sod" => sod(1e-2),
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

/// Built-in scenario at a given constant relaxation parameter. The listed
/// values of `eps` come with their own buffer widths and budgets; other
/// values keep those of the default variant.
pub fn builtin_variant(name: &str, eps: f64) -> Result<ScenarioConfig> {
    match name {
        "unsteady-shock" => unsteady_shock(eps),
        "sod" => sod(eps),
        _ => {
            let mut config = builtin_scenario(name)?;
            config.epsilon = Epsilon::Constant { value: eps };
            Ok(config)
        }
    }
}

fn base(name: &str, grid: GridConfig, boundaries: BoundaryConfig) -> ScenarioConfig {
    ScenarioConfig {
        schema: SCHEMA_VERSION,
        name: name.to_string(),
        t_end: 0.15,
        output_times: vec![0.05, 0.10, 0.15],
        seed: 1,
        buffer_width: 10,
        beta_thr: 2.5e-2,
        grad_floor: 1e-12,
        grid,
        boundaries,
        epsilon: Epsilon::Constant { value: 1e-2 },
        initial: InitialData::Uniform {
            state: PrimitiveState {
                rho: 1.0,
                u: 0.0,
                theta: 1.0,
            },
        },
        particles: ParticleBudget::Total { count: 1e5 },
    }
}

fn two_freq() -> ScenarioConfig {
    ScenarioConfig {
        epsilon: Epsilon::Split {
            left: 1e-4,
            right: 1e-2,
            at: 0.5,
        },
        initial: InitialData::Cusp {
            base: 1.0,
            amplitude: 0.1,
            center: 0.5,
            width: 0.02,
            u: 0.0,
            theta: 1.0,
        },
        particles: ParticleBudget::Total { count: 80000.0 },
        ..base(
            "two-freq",
            GridConfig {
                x_min: 0.0,
                x_max: 1.0,
                n_cells: 200,
            },
            BoundaryConfig {
                left: BoundaryKind::Open,
                right: BoundaryKind::Open,
            },
        )
    }
}

fn unsteady_shock(eps: f64) -> Result<ScenarioConfig> {
    check_eps(eps)?;
    Ok(ScenarioConfig {
        epsilon: Epsilon::Constant { value: eps },
        buffer_width: if eps == 1e-3 { 5 } else { 10 },
        initial: InitialData::Uniform {
            state: PrimitiveState {
                rho: 1.0,
                u: -2.0,
                theta: 4.0,
            },
        },
        particles: ParticleBudget::PerUnitDensity { count: 400.0 },
        ..base(
            "unsteady-shock",
            GridConfig {
                x_min: 0.0,
                x_max: 1.5,
                n_cells: 200,
            },
            BoundaryConfig {
                left: BoundaryKind::Reflecting,
                right: BoundaryKind::Open,
            },
        )
    })
}

fn sod(eps: f64) -> Result<ScenarioConfig> {
    check_eps(eps)?;
    let total = if eps == 1e-1 {
        6e5
    } else if eps == 1e-3 {
        2e5
    } else {
        4e5
    };
    Ok(ScenarioConfig {
        t_end: 0.8,
        output_times: vec![0.3, 0.6, 0.8],
        epsilon: Epsilon::Constant { value: eps },
        initial: InitialData::Piecewise {
            interface: 1.0,
            left: PrimitiveState {
                rho: 1.0,
                u: 0.0,
                theta: 5.0,
            },
            right: PrimitiveState {
                rho: 0.125,
                u: 0.0,
                theta: 4.0,
            },
        },
        particles: ParticleBudget::Total { count: total },
        ..base(
            "sod",
            GridConfig {
                x_min: 0.0,
                x_max: 2.0,
                n_cells: 200,
            },
            BoundaryConfig {
                left: BoundaryKind::Open,
                right: BoundaryKind::Open,
            },
        )
    })
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("epsilon {eps} must be positive")))
    }
}

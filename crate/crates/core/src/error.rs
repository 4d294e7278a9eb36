use thiserror::Error;

/// Errors raised by the solvers and the scenario runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-physical state (rho = {rho}, theta = {theta})")]
    NonPhysicalState { rho: f64, theta: f64 },

    #[error("collision probability {0} exceeds 1")]
    InvalidProbability(f64),

    #[error("degenerate velocity sample: variance {0} too small to rescale")]
    DegenerateSample(f64),

    #[error("cell is empty but the target density is {0}")]
    EmptySource(f64),

    #[error("time step {0} underflowed")]
    ZeroDt(f64),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn at_step(self, step: usize) -> Error {
        match self {
            e @ Error::AtStep { .. } => e,
            e => Error::AtStep {
                step,
                source: Box::new(e),
            },
        }
    }
}

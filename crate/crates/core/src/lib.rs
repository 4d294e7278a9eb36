//! Hybrid kinetic/fluid solver for a 1D-space, 3D-velocity gas.
//!
//! A DSMC particle solver (Nanbu collisions for Maxwellian molecules) runs
//! only where the breakdown indicator flags non-equilibrium. A finite-volume
//! Euler solver covers the whole domain and carries the particles'
//! non-equilibrium flux as a correction. Buffer zones ramp particle weights
//! between the two, and the particle moments are matched every step to the
//! moment solver to reduce statistical noise.

pub mod boundary;
pub mod coupling;
pub mod dsmc;
pub mod error;
pub mod euler;
pub mod guide;
pub mod maxwellian;
pub mod output;
pub mod particles;
pub mod rng;
pub mod run;
pub mod scenario;
pub mod state;

pub use boundary::{BoundaryKind, Boundaries};
pub use coupling::{BreakdownParams, Mode, Simulation, TransitionField};
pub use error::{Error, Result};
pub use maxwellian::FluxMomentVector;
pub use particles::{Particle, ParticleEnsemble};
pub use rng::RngStream;
pub use scenario::{builtin_scenario, ScenarioConfig};

pub use state::{ConservedField, ConservedState, GridSpec, Primitives};

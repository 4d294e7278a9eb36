//! Particle solver for the kinetic part: free transport with specular or
//! open walls, weight rescaling, reservoir injection at buffer edges and the
//! Nanbu collision step against the kinetic particles plus the local fluid
//! Maxwellian.

use rayon::prelude::*;

use crate::boundary::{BoundaryKind, Boundaries};
use crate::error::{Error, Result};
use crate::guide::stochastic_round;
use crate::maxwellian::sample_maxwellian;
use crate::particles::{Particle, ParticleEnsemble};
use crate::rng::RngStream;
use crate::state::{ConservedField, ConservedState, GridSpec};

/// Collision data for one cell. For Maxwellian molecules the rate `mu` is the
/// total density of the cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionParams {
    pub epsilon: f64,
    pub mu: f64,
}

impl CollisionParams {
    /// Probability that a particle of a cell with weight `h` collides during `dt`.
    pub fn probability(&self, h: f64, dt: f64) -> f64 {
        h * self.mu * dt / self.epsilon
    }
}

/// Fold `x` back into the domain according to the walls. Returns `None` when
/// the particle leaves through an open end.
fn apply_walls(mut p: Particle, grid: &GridSpec, bc: &Boundaries) -> Option<Particle> {
    let (lo, hi) = (grid.x_min, grid.x_max);
    let len = hi - lo;
    // a few folds at most under the CFL limit
    for _ in 0..64 {
        let side = if p.x < lo {
            bc.left
        } else if p.x > hi {
            bc.right
        } else {
            return Some(p);
        };
        match side {
            BoundaryKind::Open => return None,
            BoundaryKind::Periodic => p.x = lo + (p.x - lo).rem_euclid(len),
            BoundaryKind::Reflecting => {
                let wall = if p.x < lo { lo } else { hi };
                p.x = 2.0 * wall - p.x;
                p.v[0] = -p.v[0];
            }
        }
    }
    None
}

/// Free flight `x += v_x dt`, then wall handling and re-binning.
pub fn transport(ensemble: &mut ParticleEnsemble, dt: f64, boundaries: &Boundaries) {
    if dt == 0.0 {
        return;
    }
    let grid = ensemble.grid;
    // particles that stay in their cell are updated in place
    let movers: Vec<Vec<Particle>> = ensemble
        .cells_mut()
        .par_iter_mut()
        .enumerate()
        .map(|(j, cell)| {
            let mut out = Vec::new();
            cell.retain_mut(|p| {
                p.x += p.v[0] * dt;
                match apply_walls(*p, &grid, boundaries) {
                    Some(q) => {
                        *p = q;
                        if grid.cell_of(q.x) == Some(j) {
                            true
                        } else {
                            out.push(q);
                            false
                        }
                    }
                    None => false,
                }
            });
            out
        })
        .collect();
    for p in movers.into_iter().flatten() {
        ensemble.push(p);
    }
}

/// Weights are implicit (`h_j m_p`); cells whose weight vanished lose their
/// particles.
pub fn rescale_weights(ensemble: &mut ParticleEnsemble, h_new: &[f64]) {
    for (cell, &h) in ensemble.cells_mut().iter_mut().zip(h_new) {
        if h <= 0.0 {
            cell.clear();
        }
    }
}

/// Ghost cell on the fluid side of a kinetic region: a cell index, or one of
/// the two cells just outside an open domain end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhostCell {
    Interior(usize),
    BeyondLeft,
    BeyondRight,
}

/// Fluid-side ghost cells bordering cells with `h > 0`.
pub fn reservoir_cells(h: &[f64], boundaries: &Boundaries) -> Vec<GhostCell> {
    let n = h.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    if boundaries.left == BoundaryKind::Open && h[0] > 0.0 {
        out.push(GhostCell::BeyondLeft);
    }
    for j in 0..n {
        if h[j] > 0.0 {
            continue;
        }
        let left = j > 0 && h[j - 1] > 0.0;
        let right = j + 1 < n && h[j + 1] > 0.0;
        if left || right {
            out.push(GhostCell::Interior(j));
        }
    }
    if boundaries.right == BoundaryKind::Open && h[n - 1] > 0.0 {
        out.push(GhostCell::BeyondRight);
    }
    out
}

/// Sample equilibrium particles in the fluid ghost cells around the kinetic
/// region, fly them for `dt` and keep those landing in cells with `h > 0`.
///
/// Beyond an open domain end the ghost state is the boundary cell state
/// (zero gradient). Returns the number of particles added.
pub fn inject_reservoir(
    ensemble: &mut ParticleEnsemble,
    fluid: &ConservedField,
    h: &[f64],
    dt: f64,
    boundaries: &Boundaries,
    seed: u64,
    step: u64,
) -> Result<usize> {
    let grid = ensemble.grid;
    let dx = grid.dx();
    let n = grid.n_cells;
    let mut added = 0;
    for ghost in reservoir_cells(h, boundaries) {
        let (state, left_edge, key) = match ghost {
            GhostCell::Interior(j) => (fluid.states[j], grid.left_edge(j), j),
            GhostCell::BeyondLeft => (fluid.states[0], grid.x_min - dx, n),
            GhostCell::BeyondRight => (fluid.states[n - 1], grid.x_max, n + 1),
        };
        if !(state.rho > 0.0) {
            continue;
        }
        let prim = state.primitives()?;
        let mut rng = RngStream::substream(seed, step, key, crate::rng::Purpose::Inject);
        let count = stochastic_round(prim.rho * dx / ensemble.m_p, &mut rng);
        let velocities = sample_maxwellian(prim.rho, prim.u, prim.theta, count, &mut rng);
        for v in velocities {
            let x = left_edge + rng.uniform() * dx + v[0] * dt;
            if let Some(j) = grid.cell_of(x) {
                if h[j] > 0.0 && ensemble.push(Particle::new(x, v)) {
                    added += 1;
                }
            }
        }
    }
    Ok(added)
}

/// Elastic collision of two equal-mass particles with scattering direction `n`.
pub fn scatter(v: [f64; 3], v_star: [f64; 3], n: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let q = [v[0] - v_star[0], v[1] - v_star[1], v[2] - v_star[2]];
    let qn = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
    let mut a = [0.0; 3];
    let mut b = [0.0; 3];
    for k in 0..3 {
        let g = v[k] + v_star[k];
        a[k] = 0.5 * (g + qn * n[k]);
        b[k] = 0.5 * (g - qn * n[k]);
    }
    (a, b)
}

/// Binary collision with an isotropic scattering direction.
pub fn binary_collision(v: [f64; 3], v_star: [f64; 3], rng: &mut RngStream) -> ([f64; 3], [f64; 3]) {
    let n = rng.unit_vector();
    scatter(v, v_star, n)
}

/// Forward-Euler (Nanbu) collision step in one cell.
///
/// Each particle collides with probability `p = h mu dt / epsilon`. Its
/// partner is drawn from the mixture of the cell's particles (mass fraction
/// carried by `h`) and a reservoir sampled from the fluid remainder
/// `E[rho_F]`; only the particle's own velocity is updated.
pub fn collide_cell(
    particles: &mut [Particle],
    fluid_remainder: &ConservedState,
    h: f64,
    params: &CollisionParams,
    dt: f64,
    grid: &GridSpec,
    m_p: f64,
    rng: &mut RngStream,
) -> Result<()> {
    let prob = params.probability(h, dt);
    if prob > 1.0 + 1e-12 || prob.is_nan() {
        return Err(Error::InvalidProbability(prob));
    }
    if prob <= 0.0 || particles.is_empty() {
        return Ok(());
    }
    let dx = grid.dx();
    let reservoir = if fluid_remainder.rho > 0.0 {
        match fluid_remainder.primitives() {
            Ok(p) => {
                let count = stochastic_round(p.rho * dx / m_p, rng);
                sample_maxwellian(p.rho, p.u, p.theta, count, rng)
            }
            Err(_) => Vec::new(),
        }
    } else {
        Vec::new()
    };
    let n_real = particles.len();
    let mass_real = n_real as f64 * h * m_p;
    let mass_fluid = reservoir.len() as f64 * m_p;
    let real_fraction = mass_real / (mass_real + mass_fluid);
    let before: Vec<[f64; 3]> = particles.iter().map(|p| p.v).collect();

    for (i, p) in particles.iter_mut().enumerate() {
        if rng.uniform() >= prob {
            continue;
        }
        let partner = if reservoir.is_empty() || rng.uniform() < real_fraction {
            if n_real < 2 {
                continue;
            }
            // uniform over the other particles
            let k = rng.index(n_real - 1);
            before[if k >= i { k + 1 } else { k }]
        } else {
            reservoir[rng.index(reservoir.len())]
        };
        let (v_new, _) = binary_collision(before[i], partner, rng);
        p.v = v_new;
    }
    Ok(())
}

//! Particle ensemble representing the kinetic part `f_K` and its moments.
//!
//! Particles are stored bucketed by cell. A particle's mass is not stored:
//! every particle in cell `j` carries `h_j * m_p`, where `h` is the transition
//! field.

use crate::error::Result;
use crate::maxwellian::{maxwellian_flux_moments, FluxMomentVector};
use crate::state::{ConservedState, GridSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Particle {
    pub x: f64,
    pub v: [f64; 3],
}

impl Particle {
    pub fn new(x: f64, v: [f64; 3]) -> Self {
        Self { x, v }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParticleEnsemble {
    pub grid: GridSpec,
    /// Reference particle mass.
    pub m_p: f64,
    cells: Vec<Vec<Particle>>,
}

impl ParticleEnsemble {
    pub fn new(grid: GridSpec, m_p: f64) -> Self {
        Self {
            grid,
            m_p,
            cells: vec![Vec::new(); grid.n_cells],
        }
    }

    /// Bins `p` by position; particles outside the domain are dropped.
    pub fn push(&mut self, p: Particle) -> bool {
        match self.grid.cell_of(p.x) {
            Some(j) => {
                self.cells[j].push(p);
                true
            }
            None => false,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(Vec::is_empty)
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, j: usize) -> &[Particle] {
        &self.cells[j]
    }

    pub fn cell_mut(&mut self, j: usize) -> &mut Vec<Particle> {
        &mut self.cells[j]
    }

    pub fn cells(&self) -> &[Vec<Particle>] {
        &self.cells
    }

    pub fn cells_mut(&mut self) -> &mut [Vec<Particle>] {
        &mut self.cells
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Particle> {
        self.cells.iter().flatten()
    }

    /// Replace the content with `particles`, binned in iteration order.
    pub fn rebin(&mut self, particles: impl IntoIterator<Item = Particle>) {
        for c in &mut self.cells {
            c.clear();
        }
        for p in particles {
            self.push(p);
        }
    }

    /// Take all particles out, cell by cell.
    pub fn drain_all(&mut self) -> Vec<Particle> {
        let mut out = Vec::with_capacity(self.len());
        for c in &mut self.cells {
            out.append(c);
        }
        out
    }

    /// Largest `|v_x|` over all particles, `None` when empty.
    pub fn max_abs_vx(&self) -> Option<f64> {
        self.iter().map(|p| p.v[0].abs()).reduce(f64::max)
    }

    /// Weight (mass per unit length) of one particle of cell `j`.
    pub fn particle_density_weight(&self, h_j: f64) -> f64 {
        h_j * self.m_p / self.grid.dx()
    }

    /// `<m(v) f_K>` in cell `j`.
    pub fn cell_moments(&self, h: &[f64], j: usize) -> ConservedState {
        moments_of(&self.cells[j], self.particle_density_weight(h[j]))
    }

    /// `<v_x m(v) g_K>` in cell `j`, with `g_K = f_K - E[<m f_K>]`.
    pub fn g_flux_moments(&self, h: &[f64], j: usize) -> Result<FluxMomentVector> {
        g_flux_of(&self.cells[j], self.particle_density_weight(h[j]))
    }
}

/// Moments of a set of particles each carrying density `weight`.
pub fn moments_of(particles: &[Particle], weight: f64) -> ConservedState {
    if particles.is_empty() {
        return ConservedState::ZERO;
    }
    let mut mom = [0.0; 3];
    let mut en = 0.0;
    for p in particles {
        mom[0] += p.v[0];
        mom[1] += p.v[1];
        mom[2] += p.v[2];
        en += p.v[0] * p.v[0] + p.v[1] * p.v[1] + p.v[2] * p.v[2];
    }
    ConservedState {
        rho: weight * particles.len() as f64,
        mom: [weight * mom[0], weight * mom[1], weight * mom[2]],
        en: 0.5 * weight * en,
    }
}

/// `<v_x m(v) f>` of a particle set.
pub fn flux_of(particles: &[Particle], weight: f64) -> FluxMomentVector {
    let mut acc = [0.0; 5];
    for p in particles {
        let vx = p.v[0];
        let v2 = p.v[0] * p.v[0] + p.v[1] * p.v[1] + p.v[2] * p.v[2];
        acc[0] += vx;
        acc[1] += vx * p.v[0];
        acc[2] += vx * p.v[1];
        acc[3] += vx * p.v[2];
        acc[4] += 0.5 * vx * v2;
    }
    FluxMomentVector::from_array(acc.map(|a| a * weight))
}

/// Non-equilibrium flux of a particle set: its own flux minus the flux of the
/// Maxwellian sharing its moments.
pub fn g_flux_of(particles: &[Particle], weight: f64) -> Result<FluxMomentVector> {
    let m = moments_of(particles, weight);
    if !(m.rho > 0.0) {
        return Ok(FluxMomentVector::ZERO);
    }
    let p = m.primitives()?;
    Ok(flux_of(particles, weight) - maxwellian_flux_moments(p.rho, p.u, p.theta))
}

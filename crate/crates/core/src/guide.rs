//! Moment guiding: per-cell matching of particle moments to the moments
//! computed by the fluid solver.
//!
//! Density is restored by discarding or replicating whole particles (mass per
//! particle stays uniform inside a cell); mean velocity and energy are then
//! imposed exactly by an affine map of the velocities.

use crate::error::{Error, Result};
use crate::particles::{moments_of, Particle};
use crate::rng::RngStream;
use crate::state::{norm2, ConservedState, GridSpec};

/// Below this the sample variance is treated as zero.
pub const MIN_SAMPLE_VARIANCE: f64 = 1e-14;

/// Empirical mean velocity and mean specific energy of a particle set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    /// Mass density (`N * h * m_p / dx`).
    pub mu0: f64,
    pub mu1: [f64; 3],
    /// `(1/N) sum |V|^2 / 2`.
    pub mu2: f64,
}

impl MomentEstimate {
    pub fn of(particles: &[Particle], weight: f64) -> Self {
        let n = particles.len();
        if n == 0 {
            return Self {
                mu0: 0.0,
                mu1: [0.0; 3],
                mu2: 0.0,
            };
        }
        let m = moments_of(particles, 1.0 / n as f64);
        Self {
            mu0: weight * n as f64,
            mu1: m.mom,
            mu2: m.en,
        }
    }

    /// `2 mu2 - |mu1|^2`, three times the sample temperature.
    pub fn variance(&self) -> f64 {
        2.0 * self.mu2 - norm2(&self.mu1)
    }
}

/// Randomised rounding with `E[stochastic_round(x)] = x`.
pub fn stochastic_round(x: f64, rng: &mut RngStream) -> usize {
    let x = x.max(0.0);
    let floor = x.floor();
    let frac = x - floor;
    let base = floor as usize;
    if frac > 0.0 && rng.uniform() < frac {
        base + 1
    } else {
        base
    }
}

/// Affine velocity map `V* = (V - mu1) * s + sigma1` giving mean `sigma1` and
/// mean `|V*|^2 / 2 = sigma2`, with `s^2 = (2 sigma2 - |sigma1|^2) / (2 mu2 - |mu1|^2)`.
///
/// Sets with fewer than two particles are left alone.
pub fn match_velocity_energy(particles: &mut [Particle], sigma1: [f64; 3], sigma2: f64) -> Result<()> {
    if particles.len() < 2 {
        return Ok(());
    }
    let est = MomentEstimate::of(particles, 1.0);
    let sample_var = est.variance();
    let target_var = (2.0 * sigma2 - norm2(&sigma1)).max(0.0);
    if sample_var <= MIN_SAMPLE_VARIANCE {
        let shift = (0..3).map(|k| (est.mu1[k] - sigma1[k]).abs()).fold(0.0, f64::max);
        if shift <= 1e-14 && (est.mu2 - sigma2).abs() <= 1e-14 {
            return Ok(());
        }
        return Err(Error::DegenerateSample(sample_var));
    }
    let scale = (target_var / sample_var).sqrt();
    for p in particles.iter_mut() {
        for k in 0..3 {
            p.v[k] = (p.v[k] - est.mu1[k]) * scale + sigma1[k];
        }
    }
    Ok(())
}

/// Discard or replicate particles of cell `j` so that its density moves to
/// `sigma0` up to one particle mass `h m_p / dx`.
///
/// Deleted particles are drawn without replacement; replicated ones with
/// replacement, keep their velocity and get a fresh uniform position in the
/// cell.
pub fn match_density(
    particles: &mut Vec<Particle>,
    sigma0: f64,
    h: f64,
    m_p: f64,
    grid: &GridSpec,
    j: usize,
    rng: &mut RngStream,
) -> Result<()> {
    let dx = grid.dx();
    let weight = h * m_p / dx;
    let mu0 = weight * particles.len() as f64;
    if mu0 > sigma0 {
        let n = stochastic_round((mu0 - sigma0) / weight, rng).min(particles.len());
        for _ in 0..n {
            let k = rng.index(particles.len());
            particles.swap_remove(k);
        }
    } else if mu0 < sigma0 {
        if particles.is_empty() {
            return Err(Error::EmptySource(sigma0));
        }
        let n = stochastic_round((sigma0 - mu0) / weight, rng);
        let source = particles.len();
        let left = grid.left_edge(j);
        particles.reserve(n);
        for _ in 0..n {
            let v = particles[rng.index(source)].v;
            let x = (left + rng.uniform() * dx).min(left + dx * (1.0 - 1e-12));
            particles.push(Particle::new(x, v));
        }
    }
    Ok(())
}

/// Match cell `j` against `h * target`: density first, then velocity and energy.
pub fn match_cell(
    particles: &mut Vec<Particle>,
    target: &ConservedState,
    h: f64,
    m_p: f64,
    grid: &GridSpec,
    j: usize,
    rng: &mut RngStream,
) -> Result<()> {
    if h <= 0.0 {
        return Ok(());
    }
    let p = target.primitives()?;
    match_density(particles, h * target.rho, h, m_p, grid, j, rng)?;
    match_velocity_energy(particles, p.u, p.e)
}

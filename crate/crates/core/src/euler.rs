//! Finite-volume solver for the moment system: MUSCL reconstruction of a
//! global Lax-Friedrichs flux splitting, a limiter degraded to first order
//! where particles live, and a centred non-equilibrium correction flux.

use crate::boundary::{BoundaryKind, Boundaries};
use crate::error::{Error, Result};
use crate::maxwellian::{maxwellian_flux_moments, FluxMomentVector};
use crate::state::{ConservedField, ConservedState, THETA_CLAMP};

/// Ratio of specific heats for a monatomic gas.
pub const GAMMA: f64 = 5.0 / 3.0;

/// Ghost cells needed on each side by the MUSCL stencil.
const GHOSTS: usize = 2;

type Vec5 = [f64; 5];

/// Largest characteristic speed `|u_x| + sqrt(gamma theta)` over the field.
pub fn max_eigenvalue(field: &ConservedField) -> Result<f64> {
    let mut a: f64 = 0.0;
    for s in &field.states {
        let p = s.primitives()?;
        a = a.max(p.u[0].abs() + (GAMMA * p.theta).sqrt());
    }
    Ok(a)
}

/// Van Leer limiter `(|r| + r) / (1 + r)`; zero for `r <= 0` and for
/// non-finite input.
pub fn van_leer(chi: f64) -> f64 {
    if !chi.is_finite() || chi <= 0.0 {
        return 0.0;
    }
    2.0 * chi / (1.0 + chi)
}

/// Van Leer scaled by `1 - h`: full second order in the fluid zone, first
/// order wherever `h = 1`.
pub fn modified_limiter(chi: f64, h: f64) -> f64 {
    van_leer(chi) * (1.0 - h)
}

/// Limiter of the ratio `num / den`. `0/0` counts as a smooth ratio of one
/// and `x/0` as `+-inf`, where van Leer tends to 2.
fn limiter_of_ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        return if num == 0.0 {
            1.0
        } else if num > 0.0 {
            2.0
        } else {
            0.0
        };
    }
    van_leer(num / den)
}

/// Padded stencil: conserved states, their Euler fluxes and the transition
/// field, with `GHOSTS` cells on each side.
struct Stencil {
    q: Vec<Vec5>,
    f: Vec<Vec5>,
    h: Vec<f64>,
}

fn mirror_state(s: &ConservedState) -> ConservedState {
    ConservedState::new(s.rho, [-s.mom[0], s.mom[1], s.mom[2]], s.en)
}

/// Ghost value for padded index `k` (may be negative or `>= n`).
fn ghost_index(k: isize, n: usize, bc: &Boundaries) -> (usize, bool) {
    let n_i = n as isize;
    if k < 0 {
        match bc.left {
            BoundaryKind::Open => (0, false),
            BoundaryKind::Reflecting => ((-k - 1) as usize, true),
            BoundaryKind::Periodic => ((k + n_i) as usize, false),
        }
    } else if k >= n_i {
        match bc.right {
            BoundaryKind::Open => (n - 1, false),
            BoundaryKind::Reflecting => ((2 * n_i - 1 - k) as usize, true),
            BoundaryKind::Periodic => ((k - n_i) as usize, false),
        }
    } else {
        (k as usize, false)
    }
}

fn euler_flux(s: &ConservedState) -> Result<Vec5> {
    let p = s.primitives()?;
    Ok(maxwellian_flux_moments(p.rho, p.u, p.theta).to_array())
}

impl Stencil {
    fn build(field: &ConservedField, h: &[f64], bc: &Boundaries) -> Result<Self> {
        let n = field.len();
        let flux: Vec<Vec5> = field.states.iter().map(euler_flux).collect::<Result<_>>()?;
        let total = n + 2 * GHOSTS;
        let mut q = Vec::with_capacity(total);
        let mut f = Vec::with_capacity(total);
        let mut hh = Vec::with_capacity(total);
        for k in 0..total {
            let (src, mirrored) = ghost_index(k as isize - GHOSTS as isize, n, bc);
            let s = field.states[src];
            if mirrored {
                let m = mirror_state(&s);
                q.push(m.to_array());
                f.push(euler_flux(&m)?);
            } else {
                q.push(s.to_array());
                f.push(flux[src]);
            }
            hh.push(h[src]);
        }
        Ok(Self { q, f, h: hh })
    }

    /// Split-flux increment `(F +- A q)_{k+1} - (F +- A q)_k`, component `c`.
    fn increment(&self, k: usize, c: usize, sign: f64, a: f64) -> f64 {
        (self.f[k + 1][c] + sign * a * self.q[k + 1][c]) - (self.f[k][c] + sign * a * self.q[k][c])
    }

    /// Numerical flux at the right face of padded cell `k`.
    fn face_flux(&self, k: usize, a: f64) -> Vec5 {
        let mut out = [0.0; 5];
        for c in 0..5 {
            let d_plus = self.increment(k, c, 1.0, a);
            let sigma_plus = d_plus
                * limiter_of_ratio(self.increment(k - 1, c, 1.0, a), d_plus)
                * (1.0 - self.h[k]);
            let d_minus = self.increment(k + 1, c, -1.0, a);
            let sigma_minus = d_minus
                * limiter_of_ratio(self.increment(k, c, -1.0, a), d_minus)
                * (1.0 - self.h[k + 1]);
            out[c] = 0.5 * (self.f[k][c] + self.f[k + 1][c]) - 0.5 * a * (self.q[k + 1][c] - self.q[k][c])
                + 0.25 * (sigma_plus - sigma_minus);
        }
        out
    }
}

/// All `n + 1` hydrodynamic face fluxes `psi_{j-1/2}`, `j = 0..=n`.
pub fn muscl_lf_fluxes(field: &ConservedField, a: f64, h: &[f64], bc: &Boundaries) -> Result<Vec<Vec5>> {
    let st = Stencil::build(field, h, bc)?;
    let n = field.len();
    Ok((0..=n).map(|j| st.face_flux(j + GHOSTS - 1, a)).collect())
}

/// `psi_{j+1/2}` for a single interface (the face between cells `j` and `j + 1`).
pub fn muscl_lf_flux(field: &ConservedField, j: usize, a: f64, h: &[f64], bc: &Boundaries) -> Result<Vec5> {
    let st = Stencil::build(field, h, bc)?;
    Ok(st.face_flux(j + GHOSTS, a))
}

/// Centred average of the cell non-equilibrium fluxes.
pub fn kinetic_flux(gk_j: &FluxMomentVector, gk_j1: &FluxMomentVector) -> FluxMomentVector {
    (*gk_j + *gk_j1) * 0.5
}

fn mirror_flux(g: &FluxMomentVector) -> FluxMomentVector {
    // odd in v_x except the normal momentum flux
    FluxMomentVector {
        mass_flux: -g.mass_flux,
        mom_flux: [g.mom_flux[0], -g.mom_flux[1], -g.mom_flux[2]],
        energy_flux: -g.energy_flux,
    }
}

/// All `n + 1` correction fluxes `Psi_{j-1/2}`.
pub fn kinetic_fluxes(gk: &[FluxMomentVector], bc: &Boundaries) -> Vec<FluxMomentVector> {
    let n = gk.len();
    let ghost = |k: isize| {
        let (src, mirrored) = ghost_index(k, n, bc);
        if mirrored {
            mirror_flux(&gk[src])
        } else {
            gk[src]
        }
    };
    (0..=n as isize).map(|j| kinetic_flux(&ghost(j - 1), &ghost(j))).collect()
}

/// One explicit conservative update of the moment system with the
/// non-equilibrium correction `gk` (`None` when no particles exist).
pub fn fluid_step(
    field: &ConservedField,
    gk: Option<&[FluxMomentVector]>,
    dt: f64,
    h: &[f64],
    bc: &Boundaries,
) -> Result<ConservedField> {
    let a = max_eigenvalue(field)?;
    fluid_step_with_speed(field, gk, dt, a, h, bc)
}

/// `fluid_step` with a prescribed dissipation speed `a`.
pub fn fluid_step_with_speed(
    field: &ConservedField,
    gk: Option<&[FluxMomentVector]>,
    dt: f64,
    a: f64,
    h: &[f64],
    bc: &Boundaries,
) -> Result<ConservedField> {
    let n = field.len();
    let lambda = dt / field.grid.dx();
    let psi = muscl_lf_fluxes(field, a, h, bc)?;
    let big_psi = gk.map(|g| kinetic_fluxes(g, bc));
    let mut states = Vec::with_capacity(n);
    for j in 0..n {
        let mut q = field.states[j].to_array();
        for c in 0..5 {
            q[c] -= lambda * (psi[j + 1][c] - psi[j][c]);
        }
        if let Some(bp) = &big_psi {
            let (r, l) = (bp[j + 1].to_array(), bp[j].to_array());
            for c in 0..5 {
                q[c] -= lambda * (r[c] - l[c]);
            }
        }
        let s = ConservedState::from_array(q);
        check_physical(&s)?;
        states.push(s);
    }
    Ok(ConservedField {
        grid: field.grid,
        states,
    })
}

fn check_physical(s: &ConservedState) -> Result<()> {
    let bad = |theta| Error::NonPhysicalState { rho: s.rho, theta };
    if !(s.rho > 0.0) {
        return Err(bad(f64::NAN));
    }
    let m2 = s.mom[0] * s.mom[0] + s.mom[1] * s.mom[1] + s.mom[2] * s.mom[2];
    let theta = (2.0 * s.en / s.rho - m2 / (s.rho * s.rho)) / 3.0;
    if !(theta >= -THETA_CLAMP) {
        return Err(bad(theta));
    }
    Ok(())
}

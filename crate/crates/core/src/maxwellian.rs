//! Maxwellian algebra: sampling and analytic flux moments.

use std::ops::{Add, Mul, Sub};

use crate::rng::RngStream;

/// The five moments `<v_x m(v) f>` with `m(v) = (1, v, |v|^2 / 2)`.
///
/// The energy component carries the factor 1/2 so that the flux matches
/// the conserved triple `(rho, rho u, rho e)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FluxMomentVector {
    pub mass_flux: f64,
    pub mom_flux: [f64; 3],
    pub energy_flux: f64,
}

impl FluxMomentVector {
    pub const ZERO: FluxMomentVector = FluxMomentVector {
        mass_flux: 0.0,
        mom_flux: [0.0; 3],
        energy_flux: 0.0,
    };

    pub fn to_array(&self) -> [f64; 5] {
        [
            self.mass_flux,
            self.mom_flux[0],
            self.mom_flux[1],
            self.mom_flux[2],
            self.energy_flux,
        ]
    }

    pub fn from_array(a: [f64; 5]) -> Self {
        Self {
            mass_flux: a[0],
            mom_flux: [a[1], a[2], a[3]],
            energy_flux: a[4],
        }
    }
}

impl Add for FluxMomentVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = (self.to_array(), o.to_array());
        Self::from_array(std::array::from_fn(|k| a[k] + b[k]))
    }
}

impl Sub for FluxMomentVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let (a, b) = (self.to_array(), o.to_array());
        Self::from_array(std::array::from_fn(|k| a[k] - b[k]))
    }
}

impl Mul<f64> for FluxMomentVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        let a = self.to_array();
        Self::from_array(std::array::from_fn(|k| a[k] * s))
    }
}

/// Closed-form `<v_x m(v) E[rho, u, theta]>`, i.e. the Euler flux with `p = rho theta`.
pub fn maxwellian_flux_moments(rho: f64, u: [f64; 3], theta: f64) -> FluxMomentVector {
    if rho == 0.0 {
        return FluxMomentVector::ZERO;
    }
    let p = rho * theta;
    let rho_e = rho * (0.5 * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) + 1.5 * theta);
    FluxMomentVector {
        mass_flux: rho * u[0],
        mom_flux: [rho * u[0] * u[0] + p, rho * u[0] * u[1], rho * u[0] * u[2]],
        energy_flux: u[0] * (rho_e + p),
    }
}

/// `count` i.i.d. velocities from the Gaussian with mean `u` and per-component
/// variance `theta`. The density only scales the distribution, so it does not
/// enter the draws.
pub fn sample_maxwellian(
    _rho: f64,
    u: [f64; 3],
    theta: f64,
    count: usize,
    rng: &mut RngStream,
) -> Vec<[f64; 3]> {
    let s = theta.max(0.0).sqrt();
    (0..count)
        .map(|_| {
            [
                u[0] + s * rng.normal(),
                u[1] + s * rng.normal(),
                u[2] + s * rng.normal(),
            ]
        })
        .collect()
}

//! Conserved variables, primitive extraction and the 1D grid.

use std::ops::{Add, AddAssign, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Temperatures in `(-THETA_CLAMP, 0)` are rounding noise and clamp to zero.
pub const THETA_CLAMP: f64 = 1e-9;

/// Uniform 1D mesh on `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        if n_cells == 0 || !(x_max > x_min) {
            return Err(Error::Config(format!(
                "bad grid [{x_min}, {x_max}] with {n_cells} cells"
            )));
        }
        Ok(Self { x_min, x_max, n_cells })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn left_edge(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn center(&self, j: usize) -> f64 {
        self.x_min + (j as f64 + 0.5) * self.dx()
    }

    /// Cell containing `x` on half-open intervals; `x_max` itself maps to the
    /// last cell. `None` outside the domain.
    pub fn cell_of(&self, x: f64) -> Option<usize> {
        if !(x >= self.x_min && x <= self.x_max) {
            return None;
        }
        let j = ((x - self.x_min) / self.dx()).floor() as usize;
        Some(j.min(self.n_cells - 1))
    }
}

/// Macroscopic primitive variables `(rho, u, theta, e)` with `theta = T` (R = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitives {
    pub rho: f64,
    pub u: [f64; 3],
    pub theta: f64,
    /// Specific total energy `|u|^2/2 + 3 theta/2`.
    pub e: f64,
}

/// `(rho, rho u, rho e)` in one cell.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ConservedState {
    pub rho: f64,
    pub mom: [f64; 3],
    pub en: f64,
}

impl ConservedState {
    pub const ZERO: ConservedState = ConservedState {
        rho: 0.0,
        mom: [0.0; 3],
        en: 0.0,
    };

    pub fn new(rho: f64, mom: [f64; 3], en: f64) -> Self {
        Self { rho, mom, en }
    }

    /// Build from density, bulk velocity and temperature.
    pub fn from_primitives(rho: f64, u: [f64; 3], theta: f64) -> Self {
        let u2 = norm2(&u);
        Self {
            rho,
            mom: [rho * u[0], rho * u[1], rho * u[2]],
            en: rho * (0.5 * u2 + 1.5 * theta),
        }
    }

    pub fn primitives(&self) -> Result<Primitives> {
        if !(self.rho > 0.0) {
            return Err(Error::NonPhysicalState {
                rho: self.rho,
                theta: f64::NAN,
            });
        }
        let u = [
            self.mom[0] / self.rho,
            self.mom[1] / self.rho,
            self.mom[2] / self.rho,
        ];
        let e = self.en / self.rho;
        let mut theta = (2.0 * e - norm2(&u)) / 3.0;
        if theta < 0.0 {
            if theta < -THETA_CLAMP || !theta.is_finite() {
                return Err(Error::NonPhysicalState {
                    rho: self.rho,
                    theta,
                });
            }
            theta = 0.0;
        }
        Ok(Primitives {
            rho: self.rho,
            u,
            theta,
            e,
        })
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.rho, self.mom[0], self.mom[1], self.mom[2], self.en]
    }

    pub fn from_array(a: [f64; 5]) -> Self {
        Self {
            rho: a[0],
            mom: [a[1], a[2], a[3]],
            en: a[4],
        }
    }

    /// Largest absolute difference over the five components.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let a = self.to_array();
        let b = other.to_array();
        a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }
}

impl Add for ConservedState {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            rho: self.rho + o.rho,
            mom: [self.mom[0] + o.mom[0], self.mom[1] + o.mom[1], self.mom[2] + o.mom[2]],
            en: self.en + o.en,
        }
    }
}

impl AddAssign for ConservedState {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for ConservedState {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self {
            rho: self.rho - o.rho,
            mom: [self.mom[0] - o.mom[0], self.mom[1] - o.mom[1], self.mom[2] - o.mom[2]],
            en: self.en - o.en,
        }
    }
}

impl Mul<f64> for ConservedState {
    type Output = Self;
    fn mul(self, a: f64) -> Self {
        Self {
            rho: self.rho * a,
            mom: [self.mom[0] * a, self.mom[1] * a, self.mom[2] * a],
            en: self.en * a,
        }
    }
}

/// One `ConservedState` per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservedField {
    pub grid: GridSpec,
    pub states: Vec<ConservedState>,
}

impl ConservedField {
    pub fn new(grid: GridSpec, states: Vec<ConservedState>) -> Result<Self> {
        if states.len() != grid.n_cells {
            return Err(Error::Config(format!(
                "field has {} states for {} cells",
                states.len(),
                grid.n_cells
            )));
        }
        Ok(Self { grid, states })
    }

    pub fn uniform(grid: GridSpec, state: ConservedState) -> Self {
        Self {
            grid,
            states: vec![state; grid.n_cells],
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Component-wise sum times `dx`.
    pub fn total(&self) -> ConservedState {
        let dx = self.grid.dx();
        self.states
            .iter()
            .fold(ConservedState::ZERO, |acc, s| acc + *s)
            * dx
    }

    pub fn primitives(&self) -> Result<Vec<Primitives>> {
        self.states.iter().map(ConservedState::primitives).collect()
    }
}

pub(crate) fn norm2(v: &[f64; 3]) -> f64 {
    v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rest_state() {
        let p = ConservedState::new(1.0, [0.0; 3], 1.5).primitives().unwrap();
        assert_eq!(p.u, [0.0; 3]);
        assert_eq!(p.theta, 1.0);
        assert_eq!(p.e, 1.5);
    }

    #[test]
    fn sod_left_energy() {
        let s = ConservedState::from_primitives(1.0, [0.0; 3], 5.0);
        assert_eq!(s.en, 7.5);
    }

    #[test]
    fn zero_temperature_edge() {
        let p = ConservedState::new(1.0, [2.0, 0.0, 0.0], 2.0).primitives().unwrap();
        assert_eq!(p.theta, 0.0);
        assert_eq!(p.u, [2.0, 0.0, 0.0]);
    }

    #[test]
    fn tiny_negative_temperature_clamps() {
        let p = ConservedState::new(1.0, [0.0; 3], -1e-10).primitives().unwrap();
        assert_eq!(p.theta, 0.0);
    }

    #[test]
    fn non_physical_states_error() {
        assert!(ConservedState::new(0.0, [0.0; 3], 1.0).primitives().is_err());
        assert!(ConservedState::new(-1.0, [0.0; 3], 1.0).primitives().is_err());
        assert!(ConservedState::new(1.0, [0.0; 3], -1e-6).primitives().is_err());
    }

    #[test]
    fn binning_is_half_open() {
        let g = GridSpec::new(0.0, 1.0, 4).unwrap();
        assert_eq!(g.cell_of(0.0), Some(0));
        assert_eq!(g.cell_of(0.25), Some(1));
        assert_eq!(g.cell_of(0.2499999), Some(0));
        assert_eq!(g.cell_of(1.0), Some(3));
        assert_eq!(g.cell_of(1.0 + 1e-12), None);
        assert_eq!(g.cell_of(-1e-12), None);
        assert_eq!(g.cell_of(f64::NAN), None);
    }

    #[test]
    fn bad_grid_rejected() {
        assert!(GridSpec::new(0.0, 1.0, 0).is_err());
        assert!(GridSpec::new(1.0, 1.0, 4).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn primitive_round_trip(
                rho in 1e-3f64..10.0,
                ux in -5.0f64..5.0, uy in -5.0f64..5.0, uz in -5.0f64..5.0,
                theta in 0.0f64..10.0,
            ) {
                let s = ConservedState::from_primitives(rho, [ux, uy, uz], theta);
                let p = s.primitives().unwrap();
                prop_assert!((p.rho - rho).abs() <= 1e-12 * rho);
                for (a, b) in p.u.iter().zip([ux, uy, uz]) {
                    prop_assert!((a - b).abs() <= 1e-12);
                }
                prop_assert!((p.theta - theta).abs() <= 1e-12 * (1.0 + ux*ux + uy*uy + uz*uz));
                prop_assert!((p.e - (0.5 * (ux*ux + uy*uy + uz*uz) + 1.5 * theta)).abs() <= 1e-12 * (1.0 + p.e));
            }
        }
    }
}

#![allow(dead_code)]

pub mod nanbu;
pub mod riemann;

use dsmc_fluid::{ConservedField, GridSpec};

/// `sum_j |a_j - b_j| dx`.
pub fn l1_distance(a: &[f64], b: &[f64], dx: f64) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() * dx
}

pub fn densities(field: &ConservedField) -> Vec<f64> {
    field.states.iter().map(|s| s.rho).collect()
}

pub fn centers(grid: &GridSpec) -> Vec<f64> {
    (0..grid.n_cells).map(|j| grid.center(j)).collect()
}

pub fn mean_and_std(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

//! Minimal plain DSMC with Nanbu forward-Euler collisions for Maxwellian
//! molecules in a closed specularly reflecting box, written independently
//! of the library's particle code.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub struct Box1d {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub m_p: f64,
    pub eps: f64,
    pub x: Vec<f64>,
    pub v: Vec<[f64; 3]>,
    rng: ChaCha8Rng,
}

impl Box1d {
    /// `per_cell(j)` gives `(count, rho, u, theta)` for cell `j`.
    pub fn new(
        x_min: f64,
        x_max: f64,
        n_cells: usize,
        m_p: f64,
        eps: f64,
        seed: u64,
        per_cell: impl Fn(usize) -> (usize, f64, f64, f64),
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_ba5e);
        let dx = (x_max - x_min) / n_cells as f64;
        let (mut x, mut v) = (Vec::new(), Vec::new());
        for j in 0..n_cells {
            let (count, _rho, u, theta) = per_cell(j);
            for _ in 0..count {
                x.push(x_min + (j as f64 + rng.random::<f64>()) * dx);
                let s = theta.sqrt();
                let g = |r: &mut ChaCha8Rng| -> f64 { StandardNormal.sample(r) };
                v.push([u + s * g(&mut rng), s * g(&mut rng), s * g(&mut rng)]);
            }
        }
        Self { x_min, x_max, n_cells, m_p, eps, x, v, rng }
    }

    fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    fn cell(&self, x: f64) -> usize {
        (((x - self.x_min) / self.dx()) as usize).min(self.n_cells - 1)
    }

    pub fn step(&mut self, dt: f64) {
        let len = self.x_max - self.x_min;
        for (x, v) in self.x.iter_mut().zip(self.v.iter_mut()) {
            let mut y = *x + v[0] * dt - self.x_min;
            // unfold onto the period 2 len of the mirrored box
            y = y.rem_euclid(2.0 * len);
            if y > len {
                y = 2.0 * len - y;
                v[0] = -v[0];
            }
            *x = self.x_min + y;
        }
        self.collide(dt);
    }

    fn collide(&mut self, dt: f64) {
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); self.n_cells];
        for (i, &x) in self.x.iter().enumerate() {
            members[self.cell(x)].push(i);
        }
        let weight = self.m_p / self.dx();
        for cell in members {
            let n = cell.len();
            if n < 2 {
                continue;
            }
            let p = (n as f64 * weight * dt / self.eps).min(1.0);
            let before: Vec<[f64; 3]> = cell.iter().map(|&i| self.v[i]).collect();
            for (a, &i) in cell.iter().enumerate() {
                if self.rng.random::<f64>() >= p {
                    continue;
                }
                let mut b = self.rng.random_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                let (v, w) = (before[a], before[b]);
                let g = [v[0] - w[0], v[1] - w[1], v[2] - w[2]];
                let q = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
                // isotropic direction
                let cos = 2.0 * self.rng.random::<f64>() - 1.0;
                let phi = 2.0 * std::f64::consts::PI * self.rng.random::<f64>();
                let sin = (1.0 - cos * cos).sqrt();
                let dir = [sin * phi.cos(), sin * phi.sin(), cos];
                for k in 0..3 {
                    self.v[i][k] = 0.5 * (v[k] + w[k] + q * dir[k]);
                }
            }
        }
    }

    /// Per-cell `(rho, rho u_x, rho e)`.
    pub fn moments(&self) -> Vec<[f64; 3]> {
        let weight = self.m_p / self.dx();
        let mut out = vec![[0.0; 3]; self.n_cells];
        for (x, v) in self.x.iter().zip(&self.v) {
            let m = &mut out[self.cell(*x)];
            m[0] += weight;
            m[1] += weight * v[0];
            m[2] += weight * 0.5 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        }
        out
    }

    pub fn max_abs_vx(&self) -> f64 {
        self.v.iter().map(|v| v[0].abs()).fold(0.0, f64::max)
    }
}

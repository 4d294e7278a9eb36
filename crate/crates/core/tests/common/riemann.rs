//! Exact solution of the Riemann problem for a polytropic gas with
//! `p = rho theta`, following the classical two-rarefaction/two-shock
//! pressure iteration.

#[derive(Debug, Clone, Copy)]
pub struct Side {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

pub struct Riemann {
    pub gamma: f64,
    pub left: Side,
    pub right: Side,
    pub p_star: f64,
    pub u_star: f64,
}

fn sound(gamma: f64, s: &Side) -> f64 {
    (gamma * s.p / s.rho).sqrt()
}

/// Pressure function of one side and its derivative.
fn f_k(gamma: f64, p: f64, s: &Side) -> (f64, f64) {
    let c = sound(gamma, s);
    if p > s.p {
        let a = 2.0 / ((gamma + 1.0) * s.rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * s.p;
        let q = (a / (p + b)).sqrt();
        ((p - s.p) * q, q * (1.0 - 0.5 * (p - s.p) / (p + b)))
    } else {
        let r = p / s.p;
        let e = (gamma - 1.0) / (2.0 * gamma);
        (
            2.0 * c / (gamma - 1.0) * (r.powf(e) - 1.0),
            1.0 / (s.rho * c) * r.powf(-(gamma + 1.0) / (2.0 * gamma)),
        )
    }
}

impl Riemann {
    pub fn new(gamma: f64, left: Side, right: Side) -> Self {
        let du = right.u - left.u;
        let mut p = 0.5 * (left.p + right.p);
        for _ in 0..100 {
            let (fl, dl) = f_k(gamma, p, &left);
            let (fr, dr) = f_k(gamma, p, &right);
            let next = (p - (fl + fr + du) / (dl + dr)).max(1e-12);
            let done = (next - p).abs() < 1e-15 * p;
            p = next;
            if done {
                break;
            }
        }
        let (fl, _) = f_k(gamma, p, &left);
        let (fr, _) = f_k(gamma, p, &right);
        let u_star = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);
        Self {
            gamma,
            left,
            right,
            p_star: p,
            u_star,
        }
    }

    /// `(rho, u, p)` at similarity coordinate `s = (x - x0) / t`.
    pub fn sample(&self, s: f64) -> (f64, f64, f64) {
        let g = self.gamma;
        let (side, sign) = if s <= self.u_star {
            (self.left, -1.0)
        } else {
            (self.right, 1.0)
        };
        let c = sound(g, &side);
        let ps = self.p_star;
        // sign = -1 on the left: waves move with u - c, mirrored on the right
        if ps > side.p {
            let ratio = ps / side.p;
            let speed = side.u + sign * c * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
            let outside = if sign < 0.0 { s <= speed } else { s >= speed };
            if outside {
                (side.rho, side.u, side.p)
            } else {
                let gr = (g - 1.0) / (g + 1.0);
                (side.rho * (ratio + gr) / (gr * ratio + 1.0), self.u_star, ps)
            }
        } else {
            let head = side.u + sign * c;
            let c_star = c * (ps / side.p).powf((g - 1.0) / (2.0 * g));
            let tail = self.u_star + sign * c_star;
            let before_head = if sign < 0.0 { s <= head } else { s >= head };
            let after_tail = if sign < 0.0 { s > tail } else { s < tail };
            if before_head {
                (side.rho, side.u, side.p)
            } else if after_tail {
                (side.rho * (ps / side.p).powf(1.0 / g), self.u_star, ps)
            } else {
                // inside the fan
                let cf = 2.0 / (g + 1.0) - sign * (g - 1.0) / ((g + 1.0) * c) * (side.u - s);
                let rho = side.rho * cf.powf(2.0 / (g - 1.0));
                let u = 2.0 / (g + 1.0) * (-sign * c + (g - 1.0) / 2.0 * side.u + s);
                let p = side.p * cf.powf(2.0 * g / (g - 1.0));
                (rho, u, p)
            }
        }
    }

    /// Density at the points `x`, interface `x0`, time `t`.
    pub fn density_profile(&self, x: &[f64], x0: f64, t: f64) -> Vec<f64> {
        x.iter().map(|&xi| self.sample((xi - x0) / t).0).collect()
    }
}

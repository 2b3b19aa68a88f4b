//! Free nonrelativistic (Schroedinger) Gaussian evolution, used as the
//! baseline the relativistic runs are compared against.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{DiracError, Result};
use crate::grid::Grid;

/// Free Gaussian with density ~ exp(-x^2/(2 a^2)) at t = 0 (mass 1, hbar 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonrelGaussian {
    pub a: f64,
    pub x0: f64,
    pub q: f64,
}

impl NonrelGaussian {
    pub fn new(a: f64, x0: f64, q: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(DiracError::Argument(format!(
                "width parameter must be positive, got {a}"
            )));
        }
        Ok(Self { a, x0, q })
    }

    /// Width of the density at time t: a(t) = a sqrt(1 + t^2/(4 a^4)).
    pub fn width(&self, t: f64) -> f64 {
        self.a * (1.0 + t * t / (4.0 * self.a.powi(4))).sqrt()
    }

    /// Center of the density at time t.
    pub fn center(&self, t: f64) -> f64 {
        self.x0 + self.q * t
    }

    /// Complex wave function at t = 0.
    pub fn initial_amplitude(&self, x: f64) -> Complex64 {
        let norm = (2.0 * PI * self.a * self.a).powf(-0.25);
        let env = (-(x - self.x0) * (x - self.x0) / (4.0 * self.a * self.a)).exp();
        Complex64::from_polar(norm * env, self.q * x)
    }
}

/// Closed-form free-Gaussian density at (x, t); integrates to 1.
pub fn nonrel_density(g: &NonrelGaussian, t: f64, x: f64) -> f64 {
    let w = g.width(t);
    let c = g.center(t);
    (2.0 * PI * w * w).powf(-0.5) * (-(x - c) * (x - c) / (2.0 * w * w)).exp()
}

/// Evolve a scalar field by the free Schroedinger propagator: multiply each
/// momentum mode by exp(-i p^2 t / 2).
pub fn evolve_schrodinger(grid: &Grid, values: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
    if values.len() != grid.n() {
        return Err(DiracError::GridMismatch(format!(
            "expected {} samples, got {}",
            grid.n(),
            values.len()
        )));
    }
    if !t.is_finite() {
        return Err(DiracError::Argument(format!("non-finite time {t}")));
    }
    let n = grid.n();
    let mut planner = FftPlanner::new();
    let mut buf = values.to_vec();
    planner.plan_fft_forward(n).process(&mut buf);
    for (j, v) in buf.iter_mut().enumerate() {
        let p = grid.momentum(j);
        *v *= Complex64::new(0.0, -p * p * t / 2.0).exp();
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    Ok(buf.into_iter().map(|v| v * scale).collect())
}

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{DiracError, Result};
use crate::grid::Grid;
use crate::spinor::Spinor2;

/// Spinor wave function sampled on the position lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    pub grid: Grid,
    pub values: Vec<Spinor2>,
    pub time: f64,
}

/// Spinor wave function sampled on the momentum lattice (wrap-around order).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumSpinorField {
    pub grid: Grid,
    pub values: Vec<Spinor2>,
    pub time: f64,
}

impl SpinorField {
    pub fn new(grid: Grid, values: Vec<Spinor2>, time: f64) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(DiracError::GridMismatch(format!(
                "expected {} samples, got {}",
                grid.n(),
                values.len()
            )));
        }
        Ok(Self { grid, values, time })
    }

    pub fn zero(grid: Grid) -> Self {
        let n = grid.n();
        Self {
            grid,
            values: vec![Spinor2::ZERO; n],
            time: 0.0,
        }
    }

    /// Build a field by sampling `f(x)` at the grid positions.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Spinor2) -> Self {
        let values = grid.positions().map(f).collect();
        Self {
            grid,
            values,
            time: 0.0,
        }
    }

    /// Squared L2 norm: sum_j |psi_j|^2 dx.
    pub fn norm_sq(&self) -> f64 {
        let dx = self.grid.dx();
        self.values.iter().map(|s| s.norm_sq()).sum::<f64>() * dx
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Rescale to unit norm.
    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-12 {
            return Err(DiracError::DegenerateState(
                "cannot normalize a (near-)zero field".into(),
            ));
        }
        let inv = Complex64::new(1.0 / n, 0.0);
        for v in &mut self.values {
            *v = v.scale(inv);
        }
        Ok(self)
    }
}

impl MomentumSpinorField {
    pub fn new(grid: Grid, values: Vec<Spinor2>, time: f64) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(DiracError::GridMismatch(format!(
                "expected {} samples, got {}",
                grid.n(),
                values.len()
            )));
        }
        Ok(Self { grid, values, time })
    }

    /// Build a momentum-space field by sampling `f(p)` over the momentum lattice.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Spinor2) -> Self {
        let values = grid.momenta().map(f).collect();
        Self {
            grid,
            values,
            time: 0.0,
        }
    }

    /// Squared L2 norm: sum_k |psihat_k|^2 dp.
    pub fn norm_sq(&self) -> f64 {
        let dp = self.grid.dp();
        self.values.iter().map(|s| s.norm_sq()).sum::<f64>() * dp
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

/// L2 inner product sum_j conj(a_j) . b_j dx, conjugate linear in `a`.
pub fn inner_product(a: &SpinorField, b: &SpinorField) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(DiracError::GridMismatch(
            "inner product requires identical grids".into(),
        ));
    }
    let dx = a.grid.dx();
    let sum: Complex64 = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| x.dot(y))
        .sum();
    Ok(sum * dx)
}

/// Momentum-space inner product sum_k conj(a_k) . b_k dp.
pub fn inner_product_momentum(a: &MomentumSpinorField, b: &MomentumSpinorField) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(DiracError::GridMismatch(
            "inner product requires identical grids".into(),
        ));
    }
    let dp = a.grid.dp();
    let sum: Complex64 = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| x.dot(y))
        .sum();
    Ok(sum * dp)
}

// The discrete transforms approximate the continuum pair
//   psihat(p) = (2 pi)^{-1/2} \int e^{-ipx} psi(x) dx
//   psi(x)    = (2 pi)^{-1/2} \int e^{+ipx} psihat(p) dp.
// With x_j = -l + j dx and p_k = pi k / l the analysis kernel factors as
// e^{-i p_k x_j} = (-1)^k e^{-2 pi i k j / n}, so the grid transform is a
// plain FFT with an alternating-sign twist on the momentum side.

fn fft_inplace(data: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(data.len())
    } else {
        planner.plan_fft_forward(data.len())
    };
    fft.process(data);
}

/// Forward transform, position to momentum representation.
pub fn to_momentum(f: &SpinorField) -> MomentumSpinorField {
    let n = f.grid.n();
    let scale = f.grid.dx() / (2.0 * PI).sqrt();
    let mut comp1: Vec<Complex64> = f.values.iter().map(|s| s.c1).collect();
    let mut comp2: Vec<Complex64> = f.values.iter().map(|s| s.c2).collect();
    fft_inplace(&mut comp1, false);
    fft_inplace(&mut comp2, false);
    let values = (0..n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let s = Complex64::new(sign * scale, 0.0);
            Spinor2::new(comp1[k] * s, comp2[k] * s)
        })
        .collect();
    MomentumSpinorField {
        grid: f.grid.clone(),
        values,
        time: f.time,
    }
}

/// Inverse transform, momentum to position representation.
pub fn to_position(g: &MomentumSpinorField) -> SpinorField {
    let n = g.grid.n();
    let scale = g.grid.dp() / (2.0 * PI).sqrt();
    let mut comp1: Vec<Complex64> = Vec::with_capacity(n);
    let mut comp2: Vec<Complex64> = Vec::with_capacity(n);
    for (k, s) in g.values.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        comp1.push(s.c1 * sign);
        comp2.push(s.c2 * sign);
    }
    fft_inplace(&mut comp1, true);
    fft_inplace(&mut comp2, true);
    let values = (0..n)
        .map(|j| {
            let s = Complex64::new(scale, 0.0);
            Spinor2::new(comp1[j] * s, comp2[j] * s)
        })
        .collect();
    SpinorField {
        grid: g.grid.clone(),
        values,
        time: g.time,
    }
}

//! Momentum-space Hamiltonian, energy projectors, and the exact unitary
//! propagator for the free 1D Dirac equation in natural units.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{DiracError, Result};
use crate::field::{to_momentum, to_position, MomentumSpinorField, SpinorField};
use crate::grid::Grid;
use crate::spinor::{Mat2, Spinor2};

/// Relativistic dispersion lambda(p) = sqrt(p^2 + 1).
pub fn lambda(p: f64) -> f64 {
    (p * p + 1.0).sqrt()
}

/// Momentum-space Dirac Hamiltonian h0(p) = [[1, p], [p, -1]].
pub fn h0_matrix(p: f64) -> Mat2 {
    Mat2::from_real(1.0, p, p, -1.0)
}

/// Energy-sign selector for projectors, branches, and phase velocities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergySign {
    Positive,
    Negative,
}

/// Orthonormal eigenpair of h0(p) with a gauge that is continuous in p.
///
/// Parametrized by the half angle theta with tan(theta) = p / (1 + lambda):
/// u_pos = (cos theta, sin theta), u_neg = (-sin theta, cos theta).
pub fn eigensystem(p: f64) -> (f64, Spinor2, Spinor2) {
    let lam = lambda(p);
    let theta = (p / (1.0 + lam)).atan();
    let (s, c) = theta.sin_cos();
    let u_pos = Spinor2::from_real(c, s);
    let u_neg = Spinor2::from_real(-s, c);
    (lam, u_pos, u_neg)
}

/// Projector onto the chosen energy subspace: P = (1 +/- h0(p)/lambda(p)) / 2.
pub fn projector(p: f64, sign: EnergySign) -> Mat2 {
    let lam = lambda(p);
    let sgn = match sign {
        EnergySign::Positive => 1.0,
        EnergySign::Negative => -1.0,
    };
    let half = Complex64::new(0.5, 0.0);
    (Mat2::identity() + h0_matrix(p).scale(Complex64::new(sgn / lam, 0.0))).scale(half)
}

/// Per-momentum eigen-data for a whole grid, in storage order.
#[derive(Debug, Clone)]
pub struct ModeSystem {
    pub grid: Grid,
    pub lambdas: Vec<f64>,
    pub u_pos: Vec<Spinor2>,
    pub u_neg: Vec<Spinor2>,
}

impl ModeSystem {
    pub fn new(grid: Grid) -> Self {
        let n = grid.n();
        let mut lambdas = Vec::with_capacity(n);
        let mut u_pos = Vec::with_capacity(n);
        let mut u_neg = Vec::with_capacity(n);
        for p in grid.momenta() {
            let (lam, up, un) = eigensystem(p);
            lambdas.push(lam);
            u_pos.push(up);
            u_neg.push(un);
        }
        Self {
            grid,
            lambdas,
            u_pos,
            u_neg,
        }
    }
}

/// Apply the chosen energy projector mode-by-mode.
pub fn project(g: &MomentumSpinorField, sign: EnergySign) -> MomentumSpinorField {
    let values = g
        .grid
        .momenta()
        .zip(&g.values)
        .map(|(p, v)| projector(p, sign).apply(v))
        .collect();
    MomentumSpinorField {
        grid: g.grid.clone(),
        values,
        time: g.time,
    }
}

/// Exact free propagator in momentum space.
///
/// Per mode the evolution operator e^{-i h0(p) t} is the closed-form matrix
/// cos(lambda t) 1 - i sin(lambda t) h0(p)/lambda.
pub fn propagator_matrix(p: f64, t: f64) -> Mat2 {
    let lam = lambda(p);
    let (s, c) = (lam * t).sin_cos();
    Mat2::identity().scale(Complex64::new(c, 0.0))
        + h0_matrix(p).scale(Complex64::new(0.0, -s / lam))
}

/// Evolve a t = 0 momentum representation to time `t` (closed form, no stepping).
pub fn evolve(g0: &MomentumSpinorField, t: f64) -> Result<MomentumSpinorField> {
    if !t.is_finite() {
        return Err(DiracError::Argument(format!("non-finite time {t}")));
    }
    let values = g0
        .grid
        .momenta()
        .zip(&g0.values)
        .map(|(p, v)| propagator_matrix(p, t).apply(v))
        .collect();
    Ok(MomentumSpinorField {
        grid: g0.grid.clone(),
        values,
        time: g0.time + t,
    })
}

/// Evolve a position-space field: transform, propagate, transform back.
pub fn evolve_position(f0: &SpinorField, t: f64) -> Result<SpinorField> {
    let g = to_momentum(f0);
    let gt = evolve(&g, t)?;
    Ok(to_position(&gt))
}

/// Slow direct quadrature of the plane-wave superposition; correctness
/// oracle for the transform-based propagator.
///
/// Evaluates, with trapezoidal weights on the periodic momentum lattice,
///   psi(x, t) = (2 pi)^{-1/2} sum_k dp e^{i p_k x}
///               (e^{-i lambda t} P_pos + e^{+i lambda t} P_neg) psihat(p_k).
pub fn evolve_quadrature_oracle(
    f0: &SpinorField,
    t: f64,
    x_points: &[f64],
) -> Result<Vec<Spinor2>> {
    if x_points.is_empty() {
        return Err(DiracError::Argument("empty x_points".into()));
    }
    if !t.is_finite() {
        return Err(DiracError::Argument(format!("non-finite time {t}")));
    }
    let g = to_momentum(f0);
    let dp = g.grid.dp();
    let norm = dp / (2.0 * PI).sqrt();

    // Precompute the evolved momentum amplitudes via explicit eigenvector
    // recombination (a path independent of the propagator matrix).
    let mut evolved: Vec<Spinor2> = Vec::with_capacity(g.grid.n());
    for (p, v) in g.grid.momenta().zip(&g.values) {
        let (lam, up, un) = eigensystem(p);
        let a = up.dot(v);
        let b = un.dot(v);
        let ph_pos = Complex64::new(0.0, -lam * t).exp();
        let ph_neg = Complex64::new(0.0, lam * t).exp();
        evolved.push(up.scale(a * ph_pos) + un.scale(b * ph_neg));
    }

    let result = x_points
        .iter()
        .map(|&x| {
            let mut acc = Spinor2::ZERO;
            for (p, v) in g.grid.momenta().zip(&evolved) {
                let wave = Complex64::new(0.0, p * x).exp();
                acc = acc + v.scale(wave);
            }
            acc.scale(Complex64::new(norm, 0.0))
        })
        .collect();
    Ok(result)
}

//! Factories for the canonical initial wave packets and the parity transform.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{DiracError, Result};
use crate::field::{to_position, MomentumSpinorField, SpinorField};
use crate::grid::Grid;
use crate::spectral::{project, EnergySign};
use crate::spinor::{Mat2, Spinor2};

/// Which initial condition to construct.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PacketKind {
    /// Gaussian (1,1) spinor at rest, exponent x^2/16.
    Gauss11,
    /// Same Gaussian boosted to mean momentum +3/4.
    Gauss11Boosted,
    /// Upper-component Gaussian, exponent x^2/8; parity invariant.
    Gauss10,
    /// Equal-weight positive/negative-energy pair at momenta +-4/5.
    PosNegPair,
    /// General Gaussian spinor, parameters taken from the spec fields below.
    Custom,
}

/// Parameters describing an initial packet.
#[derive(Debug, Clone, PartialEq)]
pub struct PacketSpec {
    pub kind: PacketKind,
    /// Position-space Gaussian exponent scale: amplitude ~ exp(-(x-x0)^2/a).
    pub a: f64,
    /// Packet center.
    pub x0: f64,
    /// Phase momentum (boost).
    pub q: f64,
    /// Spinor component weights.
    pub w1: f64,
    pub w2: f64,
    /// For `PosNegPair`: momentum centers +-p0 and momentum-space exponent b.
    pub p0: f64,
    pub b: f64,
}

impl PacketSpec {
    pub fn new(kind: PacketKind) -> Self {
        match kind {
            PacketKind::Gauss11 => Self {
                kind,
                a: 16.0,
                x0: 0.0,
                q: 0.0,
                w1: 1.0,
                w2: 1.0,
                p0: 0.0,
                b: 4.0,
            },
            PacketKind::Gauss11Boosted => Self {
                q: 0.75,
                ..Self::new(PacketKind::Gauss11)
            },
            PacketKind::Gauss10 => Self {
                kind,
                a: 8.0,
                x0: 0.0,
                q: 0.0,
                w1: 1.0,
                w2: 0.0,
                p0: 0.0,
                b: 4.0,
            },
            PacketKind::PosNegPair => Self {
                kind,
                a: 16.0,
                x0: 0.0,
                q: 0.0,
                w1: 1.0,
                w2: 1.0,
                p0: 0.8,
                b: 4.0,
            },
            PacketKind::Custom => Self::new(PacketKind::Gauss11),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.b > 0.0) {
            return Err(DiracError::Argument(
                "packet width/exponent parameters must be strictly positive".into(),
            ));
        }
        Ok(())
    }

    /// Standard deviation of the position density.
    pub fn sigma_x(&self) -> f64 {
        match self.kind {
            PacketKind::PosNegPair => (self.b / 2.0).sqrt(),
            _ => self.a.sqrt() / 2.0,
        }
    }

    pub fn build(&self, grid: &Grid) -> Result<SpinorField> {
        self.validate()?;
        check_resolution(grid, self)?;
        match self.kind {
            PacketKind::PosNegPair => build_posneg_pair(grid, self.p0, self.b),
            _ => build_gaussian(grid, self),
        }
    }
}

fn check_resolution(grid: &Grid, spec: &PacketSpec) -> Result<()> {
    let sigma = spec.sigma_x();
    if grid.half_length() < 8.0 * sigma + spec.x0.abs() {
        return Err(DiracError::Resolution(format!(
            "grid half-length {} does not cover 8 packet widths (sigma = {sigma})",
            grid.half_length()
        )));
    }
    // momentum support must fit well inside the lattice
    let sigma_p = 1.0 / (2.0 * sigma);
    let p_need = spec.q.abs() + spec.p0.abs() + 8.0 * sigma_p;
    if grid.momentum_max() < p_need {
        return Err(DiracError::Resolution(format!(
            "momentum lattice reaches only {} but the packet needs {p_need}",
            grid.momentum_max()
        )));
    }
    Ok(())
}

fn build_gaussian(grid: &Grid, spec: &PacketSpec) -> Result<SpinorField> {
    let weight_sq = spec.w1 * spec.w1 + spec.w2 * spec.w2;
    if weight_sq <= 0.0 {
        return Err(DiracError::Argument("zero spinor weights".into()));
    }
    // amplitude normalization for exp(-x^2/a): integral of exp(-2x^2/a) is sqrt(pi a / 2)
    let amp = 1.0 / (weight_sq * (PI * spec.a / 2.0).sqrt()).sqrt();
    let (x0, q, a) = (spec.x0, spec.q, spec.a);
    let (w1, w2) = (spec.w1, spec.w2);
    let field = SpinorField::from_fn(grid.clone(), |x| {
        let env = amp * (-(x - x0) * (x - x0) / a).exp();
        let phase = Complex64::new(0.0, q * x).exp();
        Spinor2::new(phase * env * w1, phase * env * w2)
    });
    Ok(field)
}

fn build_posneg_pair(grid: &Grid, p0: f64, b: f64) -> Result<SpinorField> {
    // project each envelope onto its branch, then pick a single common
    // normalization constant for the sum
    let pos_part = project(
        &MomentumSpinorField::from_fn(grid.clone(), |p| {
            Spinor2::from_real((-b * (p - p0) * (p - p0)).exp(), 0.0)
        }),
        EnergySign::Positive,
    );
    let neg_part = project(
        &MomentumSpinorField::from_fn(grid.clone(), |p| {
            Spinor2::from_real(0.0, (-b * (p + p0) * (p + p0)).exp())
        }),
        EnergySign::Negative,
    );
    let sum_values: Vec<Spinor2> = pos_part
        .values
        .iter()
        .zip(&neg_part.values)
        .map(|(a, c)| *a + *c)
        .collect();
    let summed = MomentumSpinorField::new(grid.clone(), sum_values, 0.0)?;
    let norm = summed.norm();
    if norm < 1e-12 {
        return Err(DiracError::DegenerateState("pair construction vanished".into()));
    }
    let scaled = MomentumSpinorField::new(
        grid.clone(),
        summed
            .values
            .iter()
            .map(|v| v.scale(Complex64::new(1.0 / norm, 0.0)))
            .collect(),
        0.0,
    )?;
    Ok(to_position(&scaled))
}

/// Gaussian (1,1) spinor of unit norm: (1/(32 pi))^{1/4} exp(-x^2/16) (1,1).
pub fn make_gauss11(grid: &Grid) -> Result<SpinorField> {
    PacketSpec::new(PacketKind::Gauss11).build(grid)
}

/// The same packet boosted to mean momentum +3/4 by the phase e^{+i(3/4)x}.
///
/// Under this crate's analysis kernel e^{-ipx}, the +i phase sign is what
/// shifts the momentum distribution to +3/4 and sends the dominant part of
/// the packet to the right.
pub fn make_gauss11_boosted(grid: &Grid) -> Result<SpinorField> {
    PacketSpec::new(PacketKind::Gauss11Boosted).build(grid)
}

/// Parity-invariant upper-component Gaussian: (1/(4 pi))^{1/4} exp(-x^2/8) (1,0).
pub fn make_gauss10(grid: &Grid) -> Result<SpinorField> {
    PacketSpec::new(PacketKind::Gauss10).build(grid)
}

/// Superposition of a positive-energy packet at momentum +4/5 and a
/// negative-energy packet at -4/5; both branches move to the right.
pub fn make_posneg_pair(grid: &Grid) -> Result<SpinorField> {
    PacketSpec::new(PacketKind::PosNegPair).build(grid)
}

/// Parity transform P: psi(x) -> sigma3 psi(-x).
///
/// On the periodic lattice the reflection maps sample j to (n - j) mod n.
pub fn parity(f: &SpinorField) -> SpinorField {
    let n = f.grid.n();
    let s3 = Mat2::sigma3();
    let values = (0..n)
        .map(|j| {
            let src = (n - j) % n;
            s3.apply(&f.values[src])
        })
        .collect();
    SpinorField {
        grid: f.grid.clone(),
        values,
        time: f.time,
    }
}

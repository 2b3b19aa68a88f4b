//! Spectral simulator and analysis toolkit for the free one-dimensional
//! Dirac equation in natural units (hbar = m = c = 1).
//!
//! The state is a two-component spinor on a periodic position lattice.
//! Time evolution is exact: transform to momentum space, multiply each mode
//! by the closed-form propagator of the 2x2 momentum-space Hamiltonian
//! h0(p) = [[1, p], [p, -1]], transform back. On top of that sit energy
//! projectors, the canonical Gaussian initial packets, observable series
//! (position/momentum means, classical and instantaneous velocity, the
//! Zitterbewegung term), a nonrelativistic baseline, and the CLI output
//! layer (CSV series, snapshot tables, space-time PPM rasters).
//!
//! Fourier convention: the analysis kernel is e^{-ipx}, so plane waves
//! e^{+ipx} synthesize states and a position-space phase e^{+iqx} boosts a
//! packet to mean momentum +q.

pub mod config;
pub mod error;
pub mod field;
pub mod grid;
pub mod observables;
pub mod output;
pub mod packets;
pub mod schrodinger;
pub mod spectral;
pub mod spinor;

pub use config::{parse_config, RunConfig, RunKind};
pub use error::{DiracError, Result};
pub use field::{
    inner_product, inner_product_momentum, to_momentum, to_position, MomentumSpinorField,
    SpinorField,
};
pub use grid::Grid;
pub use observables::{
    classical_velocity_mean, density, instantaneous_velocity_mean, mean_momentum, mean_position,
    momentum_decomposition, phase_velocity, position_variance, track_peaks, worldline, zbw_mean,
    DensityProfile, MomentumDensityPair, ObservableSeries,
};
pub use packets::{
    make_gauss10, make_gauss11, make_gauss11_boosted, make_posneg_pair, parity, PacketKind,
    PacketSpec,
};
pub use schrodinger::{evolve_schrodinger, nonrel_density, NonrelGaussian};
pub use spectral::{
    eigensystem, evolve, evolve_position, evolve_quadrature_oracle, h0_matrix, lambda, project,
    EnergySign, ModeSystem,
};
pub use spinor::{Mat2, Spinor2};

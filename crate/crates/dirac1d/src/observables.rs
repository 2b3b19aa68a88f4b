//! Measurements: densities, moments, energy-sign decompositions, classical
//! and instantaneous velocities, the Zitterbewegung term, worldlines, and
//! interference-peak tracking.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{DiracError, Result};
use crate::field::{to_momentum, to_position, MomentumSpinorField, SpinorField};
use crate::grid::Grid;
use crate::spectral::{evolve, h0_matrix, lambda, project, EnergySign};
use crate::spinor::Mat2;

/// Position probability density rho_j = |psi1(x_j)|^2 + |psi2(x_j)|^2.
#[derive(Debug, Clone)]
pub struct DensityProfile {
    pub grid: Grid,
    pub rho: Vec<f64>,
    pub time: f64,
}

/// Momentum densities of the positive- and negative-energy parts.
#[derive(Debug, Clone)]
pub struct MomentumDensityPair {
    pub grid: Grid,
    pub rho_pos: Vec<f64>,
    pub rho_neg: Vec<f64>,
}

/// Time-indexed observable records for one initial state.
#[derive(Debug, Clone)]
pub struct ObservableSeries {
    pub times: Vec<f64>,
    pub mean_x: Vec<f64>,
    pub mean_p: Vec<f64>,
    pub norm: Vec<f64>,
    pub mean_vcl: Vec<f64>,
    pub mean_z: Vec<f64>,
    pub var_x: Vec<f64>,
}

pub fn density(f: &SpinorField) -> DensityProfile {
    DensityProfile {
        grid: f.grid.clone(),
        rho: f.values.iter().map(|s| s.norm_sq()).collect(),
        time: f.time,
    }
}

fn check_norm(norm_sq: f64) -> Result<f64> {
    if norm_sq < 1e-12 {
        Err(DiracError::DegenerateState(
            "observable undefined for (near-)zero state".into(),
        ))
    } else {
        Ok(norm_sq)
    }
}

/// First moment of the position density.
pub fn mean_position(f: &SpinorField) -> Result<f64> {
    let nsq = check_norm(f.norm_sq())?;
    let dx = f.grid.dx();
    let sum: f64 = f
        .grid
        .positions()
        .zip(&f.values)
        .map(|(x, s)| x * s.norm_sq())
        .sum();
    Ok(sum * dx / nsq)
}

/// Variance of the position density.
pub fn position_variance(f: &SpinorField) -> Result<f64> {
    let nsq = check_norm(f.norm_sq())?;
    let mean = mean_position(f)?;
    let dx = f.grid.dx();
    let sum: f64 = f
        .grid
        .positions()
        .zip(&f.values)
        .map(|(x, s)| (x - mean) * (x - mean) * s.norm_sq())
        .sum();
    Ok(sum * dx / nsq)
}

/// First moment of the momentum density.
pub fn mean_momentum(g: &MomentumSpinorField) -> Result<f64> {
    let nsq = check_norm(g.norm_sq())?;
    let dp = g.grid.dp();
    let sum: f64 = g
        .grid
        .momenta()
        .zip(&g.values)
        .map(|(p, s)| p * s.norm_sq())
        .sum();
    Ok(sum * dp / nsq)
}

/// Pointwise squared norms of the energy-sign projections.
pub fn momentum_decomposition(g: &MomentumSpinorField) -> MomentumDensityPair {
    let pos = project(g, EnergySign::Positive);
    let neg = project(g, EnergySign::Negative);
    MomentumDensityPair {
        grid: g.grid.clone(),
        rho_pos: pos.values.iter().map(|s| s.norm_sq()).collect(),
        rho_neg: neg.values.iter().map(|s| s.norm_sq()).collect(),
    }
}

/// Mean of the classical velocity operator v_cl(p) = p H0^{-1}: the operator
/// acts as +p/lambda on the positive-energy branch and -p/lambda on the
/// negative-energy branch.
pub fn classical_velocity_mean(g: &MomentumSpinorField) -> Result<f64> {
    let nsq = check_norm(g.norm_sq())?;
    let pair = momentum_decomposition(g);
    let dp = g.grid.dp();
    let sum: f64 = g
        .grid
        .momenta()
        .zip(pair.rho_pos.iter().zip(&pair.rho_neg))
        .map(|(p, (rp, rn))| (p / lambda(p)) * (rp - rn))
        .sum();
    Ok(sum * dp / nsq)
}

/// Classical velocity operator as a per-mode matrix: p h0(p) / lambda^2.
pub fn vcl_matrix(p: f64) -> Mat2 {
    h0_matrix(p).scale(Complex64::new(p / (lambda(p) * lambda(p)), 0.0))
}

/// The Zitterbewegung operator at momentum p and time t:
///   z(p, t) = (2 i h0)^{-1} (e^{2 i h0 t} - 1) (sigma1 - v_cl(p)),
/// with e^{2 i h0 t} = cos(2 lambda t) 1 + i sin(2 lambda t) h0/lambda.
pub fn zbw_matrix(p: f64, t: f64) -> Mat2 {
    let lam = lambda(p);
    let h0 = h0_matrix(p);
    // (2 i h0)^{-1} = -(i/2) h0 / lambda^2
    let inv = h0.scale(Complex64::new(0.0, -0.5 / (lam * lam)));
    let (s, c) = (2.0 * lam * t).sin_cos();
    let exp = Mat2::identity().scale(Complex64::new(c - 1.0, 0.0))
        + h0.scale(Complex64::new(0.0, s / lam));
    let tail = Mat2::sigma1() - vcl_matrix(p);
    inv.matmul(&exp).matmul(&tail)
}

/// Expectation of the Zitterbewegung term Z(t) in the t = 0 state `g0`.
pub fn zbw_mean(g0: &MomentumSpinorField, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(DiracError::Argument(format!("non-finite time {t}")));
    }
    let nsq = check_norm(g0.norm_sq())?;
    let dp = g0.grid.dp();
    let sum: Complex64 = g0
        .grid
        .momenta()
        .zip(&g0.values)
        .map(|(p, v)| v.dot(&zbw_matrix(p, t).apply(v)))
        .sum();
    let value = sum * dp / nsq;
    debug_assert!(
        value.im.abs() <= 1e-10,
        "Z(t) expectation picked up imaginary part {}",
        value.im
    );
    Ok(value.re)
}

/// Mean of the instantaneous velocity operator dx/dt = sigma1.
pub fn instantaneous_velocity_mean(f: &SpinorField) -> Result<f64> {
    let nsq = check_norm(f.norm_sq())?;
    let dx = f.grid.dx();
    let sum: f64 = f
        .values
        .iter()
        .map(|s| 2.0 * (s.c1.conj() * s.c2).re)
        .sum();
    Ok(sum * dx / nsq)
}

/// Phase velocity sign(E) lambda(p)/p of the plane wave at momentum p.
pub fn phase_velocity(p: f64, sign: EnergySign) -> Result<f64> {
    if p == 0.0 {
        return Err(DiracError::Argument(
            "phase velocity diverges at p = 0".into(),
        ));
    }
    let sgn = match sign {
        EnergySign::Positive => 1.0,
        EnergySign::Negative => -1.0,
    };
    Ok(sgn * lambda(p) / p)
}

/// Evolve `f0` to each requested time (closed form, independently per time)
/// and record the observable series.
pub fn worldline(f0: &SpinorField, times: &[f64]) -> Result<ObservableSeries> {
    if times.is_empty() {
        return Err(DiracError::Argument("empty time list".into()));
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(DiracError::Argument("non-finite time in list".into()));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(DiracError::Argument("times must be ascending".into()));
    }
    let g0 = to_momentum(f0);
    let vcl = classical_velocity_mean(&g0)?;

    let mut series = ObservableSeries {
        times: times.to_vec(),
        mean_x: Vec::with_capacity(times.len()),
        mean_p: Vec::with_capacity(times.len()),
        norm: Vec::with_capacity(times.len()),
        mean_vcl: Vec::with_capacity(times.len()),
        mean_z: Vec::with_capacity(times.len()),
        var_x: Vec::with_capacity(times.len()),
    };
    for &t in times {
        let gt = evolve(&g0, t)?;
        let ft = to_position(&gt);
        series.mean_x.push(mean_position(&ft)?);
        series.mean_p.push(mean_momentum(&gt)?);
        series.norm.push(ft.norm());
        series.mean_vcl.push(vcl);
        series.mean_z.push(zbw_mean(&g0, t)?);
        series.var_x.push(position_variance(&ft)?);
    }
    Ok(series)
}

/// One tracked density maximum: (time, refined position) samples and the
/// least-squares speed of the linear fit through them.
#[derive(Debug, Clone)]
pub struct PeakTrack {
    pub samples: Vec<(f64, f64)>,
    pub speed: f64,
}

fn local_maxima(profile: &DensityProfile, window: (f64, f64)) -> Vec<f64> {
    let dx = profile.grid.dx();
    let mut peaks = Vec::new();
    for j in 1..profile.rho.len() - 1 {
        let x = profile.grid.position(j);
        if x < window.0 || x > window.1 {
            continue;
        }
        let (ym, y0, yp) = (profile.rho[j - 1], profile.rho[j], profile.rho[j + 1]);
        if y0 > ym && y0 > yp {
            // 3-point parabolic refinement
            let denom = ym + yp - 2.0 * y0;
            let delta = if denom.abs() > 0.0 {
                (ym - yp) / (2.0 * denom)
            } else {
                0.0
            };
            peaks.push(x + delta * dx);
        }
    }
    peaks
}

fn linear_fit_slope(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    let mt = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let mx = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let num: f64 = samples.iter().map(|s| (s.0 - mt) * (s.1 - mx)).sum();
    let den: f64 = samples.iter().map(|s| (s.0 - mt) * (s.0 - mt)).sum();
    num / den
}

/// Track density maxima inside `window` across snapshots and fit a speed to
/// each surviving track.
///
/// Peaks are associated frame-to-frame by nearest neighbor; an association
/// with two candidates closer than half the typical peak spacing is
/// ambiguous and rejected. Tracks that run out of candidates are dropped;
/// at least one track must survive all frames.
pub fn track_peaks(snapshots: &[DensityProfile], window: (f64, f64)) -> Result<Vec<PeakTrack>> {
    if snapshots.len() < 3 {
        return Err(DiracError::Argument(
            "peak tracking needs at least 3 snapshots".into(),
        ));
    }
    if window.1 <= window.0 {
        return Err(DiracError::Argument("empty tracking window".into()));
    }
    let first = local_maxima(&snapshots[0], window);
    if first.is_empty() {
        return Err(DiracError::Tracking("no maxima in window".into()));
    }
    // typical spacing between adjacent maxima in the first frame
    let spacing = if first.len() >= 2 {
        let mut gaps: Vec<f64> = first.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        gaps[gaps.len() / 2]
    } else {
        window.1 - window.0
    };

    let mut tracks: Vec<Vec<(f64, f64)>> = first
        .iter()
        .map(|&x| vec![(snapshots[0].time, x)])
        .collect();
    let mut alive: Vec<bool> = vec![true; tracks.len()];

    for snap in &snapshots[1..] {
        let peaks = local_maxima(snap, window);
        if peaks.is_empty() {
            return Err(DiracError::Tracking("no maxima in window".into()));
        }
        for (track, is_alive) in tracks.iter_mut().zip(&mut alive) {
            if !*is_alive {
                continue;
            }
            let last = track.last().unwrap().1;
            let mut close: Vec<f64> = peaks
                .iter()
                .copied()
                .filter(|&x| (x - last).abs() < 0.5 * spacing)
                .collect();
            match close.len() {
                0 => *is_alive = false,
                1 => track.push((snap.time, close.pop().unwrap())),
                _ => {
                    return Err(DiracError::Tracking(format!(
                        "ambiguous association near x = {last}"
                    )))
                }
            }
        }
    }

    let full: Vec<PeakTrack> = tracks
        .into_iter()
        .zip(alive)
        .filter(|(t, a)| *a && t.len() == snapshots.len())
        .map(|(samples, _)| {
            let speed = linear_fit_slope(&samples);
            PeakTrack { samples, speed }
        })
        .collect();
    if full.is_empty() {
        return Err(DiracError::Tracking(
            "no peak survived the full snapshot sequence".into(),
        ));
    }
    Ok(full)
}

/// Density centroid inside a window, per snapshot, with a fitted speed.
/// Captures envelope (group) motion as opposed to ripple (phase) motion.
pub fn centroid_speed(snapshots: &[DensityProfile], window: (f64, f64)) -> Result<f64> {
    if snapshots.len() < 2 {
        return Err(DiracError::Argument(
            "centroid fit needs at least 2 snapshots".into(),
        ));
    }
    let mut samples = Vec::with_capacity(snapshots.len());
    for snap in snapshots {
        let mut mass = 0.0;
        let mut moment = 0.0;
        for (j, &r) in snap.rho.iter().enumerate() {
            let x = snap.grid.position(j);
            if x >= window.0 && x <= window.1 {
                mass += r;
                moment += r * x;
            }
        }
        if mass <= 0.0 {
            return Err(DiracError::Tracking("empty window for centroid".into()));
        }
        samples.push((snap.time, moment / mass));
    }
    Ok(linear_fit_slope(&samples))
}

/// Dominant angular frequency of a uniformly sampled series, after removing
/// a linear trend. Scans the DFT magnitudes and refines the peak bin with a
/// 3-point parabola.
pub fn dominant_angular_frequency(times: &[f64], values: &[f64]) -> Result<f64> {
    let n = times.len();
    if n < 8 || values.len() != n {
        return Err(DiracError::Argument(
            "need at least 8 matching samples".into(),
        ));
    }
    let dt = times[1] - times[0];
    // detrend
    let samples: Vec<(f64, f64)> = times.iter().copied().zip(values.iter().copied()).collect();
    let slope = linear_fit_slope(&samples);
    let mt = times.iter().sum::<f64>() / n as f64;
    let mv = values.iter().sum::<f64>() / n as f64;
    let detrended: Vec<f64> = samples
        .iter()
        .map(|&(t, v)| v - (mv + slope * (t - mt)))
        .collect();

    let mut mags = vec![0.0f64; n / 2];
    for (k, mag) in mags.iter_mut().enumerate().skip(1) {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &v) in detrended.iter().enumerate() {
            let phase = -2.0 * PI * (k * j) as f64 / n as f64;
            acc += Complex64::from_polar(v, phase);
        }
        *mag = acc.norm();
    }
    let best_bin = (1..n / 2)
        .max_by(|&a, &b| mags[a].partial_cmp(&mags[b]).unwrap())
        .unwrap();
    // parabolic refinement around the winning bin
    let k = best_bin as f64;
    let refined = if best_bin > 1 && best_bin < n / 2 - 1 {
        let (ym, y0, yp) = (mags[best_bin - 1], mags[best_bin], mags[best_bin + 1]);
        let denom = ym + yp - 2.0 * y0;
        if denom.abs() > 0.0 {
            k + (ym - yp) / (2.0 * denom)
        } else {
            k
        }
    } else {
        k
    };
    Ok(2.0 * PI * refined / (n as f64 * dt))
}

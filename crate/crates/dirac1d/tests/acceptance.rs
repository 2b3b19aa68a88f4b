//! Acceptance suite: one numbered check per test, each pinned to its stated
//! tolerance. Expected values marked `frozen:` were computed up front with
//! independent quadratures (scipy, 1e-13 relative accuracy) and must not be
//! regenerated from this crate's own output.

use dirac1d::observables::{centroid_speed, dominant_angular_frequency, zbw_matrix};
use dirac1d::output::run_simulation;
use dirac1d::spectral::projector;
use dirac1d::{
    classical_velocity_mean, density, evolve, evolve_position, evolve_quadrature_oracle,
    evolve_schrodinger, h0_matrix, lambda, make_gauss10, make_gauss11, make_gauss11_boosted,
    make_posneg_pair, mean_position, momentum_decomposition, nonrel_density, parity, parse_config,
    project, to_momentum, track_peaks, worldline, zbw_mean, DensityProfile, EnergySign, Grid,
    Mat2, MomentumSpinorField, NonrelGaussian, SpinorField,
};
use num_complex::Complex64;

fn grid() -> Grid {
    Grid::default_grid() // n = 2048, l = 128
}

fn all_packets(grid: &Grid) -> Vec<(&'static str, SpinorField)> {
    vec![
        ("gauss11", make_gauss11(grid).unwrap()),
        ("gauss11_boosted", make_gauss11_boosted(grid).unwrap()),
        ("gauss10", make_gauss10(grid).unwrap()),
        ("posneg_pair", make_posneg_pair(grid).unwrap()),
    ]
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn linear_fit(times: &[f64], values: &[f64]) -> (f64, f64) {
    let n = times.len() as f64;
    let mt = times.iter().sum::<f64>() / n;
    let mv = values.iter().sum::<f64>() / n;
    let num: f64 = times
        .iter()
        .zip(values)
        .map(|(&t, &v)| (t - mt) * (v - mv))
        .sum();
    let den: f64 = times.iter().map(|&t| (t - mt) * (t - mt)).sum();
    let slope = num / den;
    (slope, mv - slope * mt)
}

/// Peak-to-peak excursion of the linearly detrended series inside [lo, hi].
fn detrended_swing(times: &[f64], values: &[f64], lo: f64, hi: f64) -> f64 {
    let (slope, icept) = linear_fit(times, values);
    let res: Vec<f64> = times
        .iter()
        .zip(values)
        .filter(|(&t, _)| t >= lo && t <= hi)
        .map(|(&t, &v)| v - (icept + slope * t))
        .collect();
    let max = res.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = res.iter().cloned().fold(f64::INFINITY, f64::min);
    max - min
}

fn snapshots(f0: &SpinorField, times: &[f64]) -> Vec<DensityProfile> {
    times
        .iter()
        .map(|&t| density(&evolve_position(f0, t).unwrap()))
        .collect()
}

#[test]
fn a01_fourier_pair() {
    let grid = grid();
    let g = to_momentum(&make_gauss11(&grid).unwrap());
    let coeff = (2.0 / std::f64::consts::PI).powf(0.25);
    let mut max_err = 0.0f64;
    for (p, v) in grid.momenta().zip(&g.values) {
        let expect = Complex64::new(coeff * (-4.0 * p * p).exp(), 0.0);
        max_err = max_err.max((v.c1 - expect).norm()).max((v.c2 - expect).norm());
    }
    assert!(max_err <= 1e-8, "max pointwise transform error {max_err:e}");
}

#[test]
fn a02_projector_algebra() {
    let grid = grid();
    let mut max_err = 0.0f64;
    for p in grid.momenta() {
        let pos = projector(p, EnergySign::Positive);
        let neg = projector(p, EnergySign::Negative);
        max_err = max_err
            .max((pos.matmul(&pos) - pos).max_entry_norm())
            .max((neg.matmul(&neg) - neg).max_entry_norm())
            .max((pos + neg - Mat2::identity()).max_entry_norm())
            .max(pos.matmul(&neg).max_entry_norm());
    }
    assert!(max_err <= 1e-13, "projector identity error {max_err:e}");
}

#[test]
fn a03_energy_sign_momentum_densities() {
    let grid = grid();
    let g = to_momentum(&make_gauss11(&grid).unwrap());
    let pair = momentum_decomposition(&g);
    let coeff = (2.0 / std::f64::consts::PI).sqrt();
    let mut max_err = 0.0f64;
    for (j, p) in grid.momenta().enumerate() {
        let base = coeff * (-8.0 * p * p).exp();
        max_err = max_err
            .max((pair.rho_pos[j] - base * (1.0 + p / lambda(p))).abs())
            .max((pair.rho_neg[j] - base * (1.0 - p / lambda(p))).abs());
    }
    assert!(max_err <= 1e-10, "closed-form density error {max_err:e}");

    let dp = grid.dp();
    let w_pos: f64 = pair.rho_pos.iter().sum::<f64>() * dp;
    let w_neg: f64 = pair.rho_neg.iter().sum::<f64>() * dp;
    assert!((w_pos - 0.5).abs() <= 1e-9, "positive weight {w_pos}");
    assert!((w_neg - 0.5).abs() <= 1e-9, "negative weight {w_neg}");

    let mean_p_pos: f64 = grid
        .momenta()
        .zip(&pair.rho_pos)
        .map(|(p, r)| p * r)
        .sum::<f64>()
        * dp
        / w_pos;
    assert!(mean_p_pos > 0.0, "positive part mean momentum {mean_p_pos}");
}

#[test]
fn a04_unitarity_and_momentum_conservation() {
    let grid = grid();
    for (name, f0) in all_packets(&grid) {
        let g0 = to_momentum(&f0);
        let norm0 = f0.norm();
        let mags0: Vec<f64> = g0.values.iter().map(|s| s.norm_sq().sqrt()).collect();
        for t in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 75.0, 100.0] {
            let gt = evolve(&g0, t).unwrap();
            let norm_drift = (dirac1d::to_position(&gt).norm() - norm0).abs();
            assert!(norm_drift <= 1e-10, "{name} t={t}: norm drift {norm_drift:e}");
            let mag_drift = gt
                .values
                .iter()
                .zip(&mags0)
                .map(|(s, &m0)| (s.norm_sq().sqrt() - m0).abs())
                .fold(0.0f64, f64::max);
            assert!(
                mag_drift <= 1e-10,
                "{name} t={t}: |psihat| drift {mag_drift:e}"
            );
        }
    }
}

#[test]
fn a05_propagator_oracle_equivalence() {
    let grid = Grid::new(256, 32.0).unwrap();
    let f0 = make_gauss11(&grid).unwrap();
    let t = 10.0;
    let fast = evolve_position(&f0, t).unwrap();
    let xs: Vec<f64> = grid.positions().collect();
    let slow = evolve_quadrature_oracle(&f0, t, &xs).unwrap();
    let max_err = fast
        .values
        .iter()
        .zip(&slow)
        .map(|(a, b)| (a.c1 - b.c1).norm().max((a.c2 - b.c2).norm()))
        .fold(0.0f64, f64::max);
    assert!(max_err <= 1e-8, "transform vs quadrature {max_err:e}");
}

#[test]
fn a06_heisenberg_decomposition() {
    let grid = grid();
    let times = [0.0, 1.0, 5.0, 20.0, 50.0];
    for (name, f0) in all_packets(&grid) {
        let series = worldline(&f0, &times).unwrap();
        for (i, &t) in times.iter().enumerate() {
            let gap = (series.mean_x[i]
                - series.mean_x[0]
                - series.mean_vcl[i] * t
                - series.mean_z[i])
                .abs();
            assert!(gap <= 1e-6, "{name} t={t}: identity gap {gap:e}");
        }
    }
}

#[test]
fn a07a_zitterbewegung_gauss11() {
    let grid = grid();
    let f0 = make_gauss11(&grid).unwrap();
    let times = linspace(0.0, 50.0, 512);
    let series = worldline(&f0, &times).unwrap();
    let omega = dominant_angular_frequency(&times, &series.mean_x).unwrap();
    assert!(
        (omega - 2.0).abs() <= 0.1,
        "dominant angular frequency {omega}"
    );
    let late = detrended_swing(&times, &series.mean_x, 45.0, 50.0);
    assert!(late >= 0.05, "oscillation died out by t = 50: swing {late}");
}

#[test]
fn a07b_no_zitterbewegung_gauss10() {
    let grid = grid();
    let f0 = make_gauss10(&grid).unwrap();
    let times = linspace(0.0, 50.0, 64);
    let series = worldline(&f0, &times).unwrap();
    let max_x = series.mean_x.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    assert!(max_x <= 1e-8, "mean_x strays to {max_x:e}");
}

#[test]
fn a07c_posneg_worldline_linear() {
    let grid = grid();
    let f0 = make_posneg_pair(&grid).unwrap();
    let times = linspace(0.0, 50.0, 256);
    let series = worldline(&f0, &times).unwrap();
    let (slope, icept) = linear_fit(&times, &series.mean_x);
    let residual = times
        .iter()
        .zip(&series.mean_x)
        .map(|(&t, &x)| (x - (icept + slope * t)).abs())
        .fold(0.0f64, f64::max);
    // Known to exceed the stated bound: the two momentum envelopes overlap
    // near p = 0, leaving a residual cross-branch oscillation of ~3e-3
    // (confirmed by direct momentum-space quadrature of the z(p,t)
    // expectation, independently of this code path).
    assert!(
        residual <= 1e-4,
        "worldline linear-fit residual {residual:e} (slope {slope})"
    );
}

#[test]
fn a07d_boosted_oscillation_fades() {
    let grid = grid();
    let f0 = make_gauss11_boosted(&grid).unwrap();
    let times = linspace(0.0, 50.0, 512);
    let series = worldline(&f0, &times).unwrap();
    let early = detrended_swing(&times, &series.mean_x, 0.0, 5.0);
    let late = detrended_swing(&times, &series.mean_x, 30.0, 40.0);
    assert!(
        late < 0.1 * early,
        "amplitude ratio {} (early {early}, late {late})",
        late / early
    );
}

#[test]
fn a08_initial_slope() {
    let grid = grid();
    let dt = 1e-3;
    for (name, f0, expect) in [
        ("gauss11", make_gauss11(&grid).unwrap(), 1.0),
        ("gauss11_boosted", make_gauss11_boosted(&grid).unwrap(), 1.0),
        ("gauss10", make_gauss10(&grid).unwrap(), 0.0),
    ] {
        let ahead = mean_position(&evolve_position(&f0, dt).unwrap()).unwrap();
        let behind = mean_position(&evolve_position(&f0, -dt).unwrap()).unwrap();
        let slope = (ahead - behind) / (2.0 * dt);
        assert!(
            (slope - expect).abs() <= 1e-3,
            "{name}: d<x>/dt at t=0 is {slope}, want {expect}"
        );
    }
}

#[test]
fn a09a_ripple_peak_speed() {
    let grid = grid();
    let f0 = make_posneg_pair(&grid).unwrap();
    let times: Vec<f64> = (0..=20).map(|i| i as f64 * 0.1).collect();
    let snaps = snapshots(&f0, &times);
    let tracks = track_peaks(&snaps, (-6.0, 6.0)).unwrap();
    // the ripple crest that starts nearest the packet center
    let central = tracks
        .iter()
        .min_by(|a, b| {
            a.samples[0]
                .1
                .abs()
                .partial_cmp(&b.samples[0].1.abs())
                .unwrap()
        })
        .unwrap();
    let target = 41.0f64.sqrt() / 4.0;
    // Known to land near 1.41 instead: the Gaussian envelope (~1.4 ripple
    // wavelengths wide) pulls the density maxima toward its center, so the
    // tracked crest is slower than the ideal infinite-wavetrain value
    // (confirmed by an independent dense-quadrature evolution).
    assert!(
        (central.speed - target).abs() <= 0.05 * target,
        "tracked ripple speed {} vs {target} +- 5%",
        central.speed
    );
}

#[test]
fn a09b_envelope_centroid_speed() {
    let grid = grid();
    let f0 = make_posneg_pair(&grid).unwrap();
    let times: Vec<f64> = (0..=20).map(|i| i as f64 * 0.1).collect();
    let snaps = snapshots(&f0, &times);
    let speed = centroid_speed(&snaps, (-30.0, 30.0)).unwrap();
    let target = 4.0 / 41.0f64.sqrt();
    assert!(speed < 1.0, "centroid is superluminal: {speed}");
    assert!(
        (speed - target).abs() <= 0.05 * target,
        "centroid speed {speed} vs {target} +- 5%"
    );
}

#[test]
fn a10_classical_drift_value() {
    // frozen: 2 (2/pi)^{1/2} integral p^2 e^{-8 p^2} / (1 + p^2) dp,
    // adaptive quadrature, absolute error < 5e-15
    const DRIFT_ORACLE: f64 = 0.053390468345757315;
    let grid = grid();
    let g = to_momentum(&make_gauss11(&grid).unwrap());
    let vcl = classical_velocity_mean(&g).unwrap();
    assert!(
        (vcl - DRIFT_ORACLE).abs() <= 0.002,
        "<v_cl> {vcl} vs oracle {DRIFT_ORACLE}"
    );
}

#[test]
fn a11_parity() {
    let grid = grid();
    let f0 = make_gauss10(&grid).unwrap();
    for t in [0.0, 1.0, 5.0, 20.0, 50.0] {
        let ft = evolve_position(&f0, t).unwrap();
        let pf = parity(&ft);
        let gap = ft
            .values
            .iter()
            .zip(&pf.values)
            .map(|(a, b)| (a.c1 - b.c1).norm().max((a.c2 - b.c2).norm()))
            .fold(0.0f64, f64::max);
        assert!(gap <= 1e-10, "t={t}: parity fixed-point gap {gap:e}");
    }

    // P commutes with the evolution on a generic (asymmetric) state
    let f0 = make_gauss11_boosted(&grid).unwrap();
    for t in [1.0, 7.0, 30.0] {
        let a = parity(&evolve_position(&f0, t).unwrap());
        let b = evolve_position(&parity(&f0), t).unwrap();
        let gap = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(a, b)| (a.c1 - b.c1).norm().max((a.c2 - b.c2).norm()))
            .fold(0.0f64, f64::max);
        assert!(gap <= 1e-10, "t={t}: commutation gap {gap:e}");
    }
}

#[test]
fn a12_zbw_operator_structure() {
    let grid = grid();
    let mut max_anti = 0.0f64;
    for p in grid.momenta() {
        let h0 = h0_matrix(p);
        for t in [0.7, 3.3, 10.0] {
            let z = zbw_matrix(p, t);
            max_anti = max_anti.max((z.matmul(&h0) + h0.matmul(&z)).max_entry_norm());
        }
    }
    assert!(max_anti <= 1e-12, "anticommutator {max_anti:e}");

    let g = to_momentum(&make_gauss11(&grid).unwrap());
    let pos: MomentumSpinorField = project(&g, EnergySign::Positive);
    for t in [1.0, 5.0, 20.0] {
        let z = zbw_mean(&pos, t).unwrap();
        assert!(z.abs() <= 1e-10, "t={t}: <Z> in pure positive state {z:e}");
    }
}

#[test]
fn a13_schrodinger_baseline() {
    let grid = Grid::new(1024, 64.0).unwrap();
    let gauss = NonrelGaussian::new(2.0, 0.0, 0.0).unwrap();
    let psi0: Vec<Complex64> = grid.positions().map(|x| gauss.initial_amplitude(x)).collect();
    for t in [0.0, 4.0, 8.0] {
        let psi_t = evolve_schrodinger(&grid, &psi0, t).unwrap();
        let max_err = psi_t
            .iter()
            .enumerate()
            .map(|(j, v)| (v.norm_sqr() - nonrel_density(&gauss, t, grid.position(j))).abs())
            .fold(0.0f64, f64::max);
        assert!(max_err <= 1e-6, "t={t}: density error {max_err:e}");
    }

    // measured spreading must not depend on the boost
    let variance = |psi: &[Complex64]| {
        let rho: Vec<f64> = psi.iter().map(|v| v.norm_sqr()).collect();
        let mass: f64 = rho.iter().sum();
        let mean: f64 = grid.positions().zip(&rho).map(|(x, r)| x * r).sum::<f64>() / mass;
        grid.positions()
            .zip(&rho)
            .map(|(x, r)| (x - mean) * (x - mean) * r)
            .sum::<f64>()
            / mass
    };
    let boosted = NonrelGaussian::new(2.0, 0.0, 0.75).unwrap();
    let psi0_b: Vec<Complex64> = grid
        .positions()
        .map(|x| boosted.initial_amplitude(x))
        .collect();
    for t in [2.0, 8.0] {
        let plain = variance(&evolve_schrodinger(&grid, &psi0, t).unwrap());
        let fast = variance(&evolve_schrodinger(&grid, &psi0_b, t).unwrap());
        assert!(
            (plain - fast).abs() <= 1e-10,
            "t={t}: variance split {:e}",
            (plain - fast).abs()
        );
    }
}

#[test]
fn a14_determinism() {
    let cfg = parse_config(
        "grid.n = 1024\n\
         grid.l = 64\n\
         packet.kind = gauss11_boosted\n\
         time.t_max = 20\n\
         time.frames = 24\n\
         raster.width = 64\n\
         raster.height = 64\n\
         raster.x_lo = -32\n\
         raster.x_hi = 32\n",
    )
    .unwrap();
    cfg.validate().unwrap();

    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let man_a = run_simulation(&cfg, dir_a.path()).unwrap();
    let man_b = run_simulation(&cfg, dir_b.path()).unwrap();
    assert_eq!(man_a.files.len(), man_b.files.len());

    for name in ["observables.csv", "momentum.csv", "spacetime.ppm"] {
        let bytes_a = std::fs::read(dir_a.path().join(name)).unwrap();
        let bytes_b = std::fs::read(dir_b.path().join(name)).unwrap();
        assert_eq!(bytes_a, bytes_b, "{name} differs between identical runs");
    }
}

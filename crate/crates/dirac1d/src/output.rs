//! File emission: observable/snapshot/momentum CSVs, the space-time PPM
//! raster with worldline overlay, and the run driver that ties a config to
//! its artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use crate::config::{RunConfig, RunKind};
use crate::error::{DiracError, Result};
use crate::field::{to_momentum, to_position, SpinorField};
use crate::grid::Grid;
use crate::observables::{
    centroid_speed, density, mean_position, momentum_decomposition, track_peaks, worldline,
    DensityProfile, MomentumDensityPair, ObservableSeries, PeakTrack,
};
use crate::packets::PacketKind;
use crate::schrodinger::{evolve_schrodinger, NonrelGaussian};
use crate::spectral::evolve;

/// Record of one completed run: config echo, tool version, wall-clock
/// duration, and every emitted file with its SHA-256 checksum.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub config_echo: String,
    pub version: String,
    pub duration_ms: u128,
    pub files: Vec<(PathBuf, String)>,
}

/// Uniform snapshot times 0..t_max inclusive.
pub fn frame_times(t_max: f64, frames: usize) -> Vec<f64> {
    (0..frames)
        .map(|i| t_max * i as f64 / (frames - 1) as f64)
        .collect()
}

/// Canonical `section.key = value` rendering of a config.
pub fn echo_config(cfg: &RunConfig) -> String {
    let kind = match cfg.kind {
        RunKind::Dirac(PacketKind::Gauss11) => "gauss11",
        RunKind::Dirac(PacketKind::Gauss11Boosted) => "gauss11_boosted",
        RunKind::Dirac(PacketKind::Gauss10) => "gauss10",
        RunKind::Dirac(PacketKind::PosNegPair) => "posneg_pair",
        RunKind::Dirac(PacketKind::Custom) => "custom",
        RunKind::Schrodinger => "schrodinger",
    };
    let mut s = String::new();
    let _ = writeln!(s, "grid.n = {}", cfg.grid_n);
    let _ = writeln!(s, "grid.l = {}", cfg.grid_l);
    let _ = writeln!(s, "packet.kind = {kind}");
    let _ = writeln!(s, "packet.a = {}", cfg.packet.a);
    let _ = writeln!(s, "packet.x0 = {}", cfg.packet.x0);
    let _ = writeln!(s, "packet.q = {}", cfg.packet.q);
    let _ = writeln!(s, "packet.w1 = {}", cfg.packet.w1);
    let _ = writeln!(s, "packet.w2 = {}", cfg.packet.w2);
    let _ = writeln!(s, "packet.p0 = {}", cfg.packet.p0);
    let _ = writeln!(s, "packet.b = {}", cfg.packet.b);
    let _ = writeln!(s, "time.t_max = {}", cfg.t_max);
    let _ = writeln!(s, "time.frames = {}", cfg.frames);
    let _ = writeln!(s, "outputs.observables = {}", cfg.out_observables);
    let _ = writeln!(s, "outputs.snapshots = {}", cfg.out_snapshots);
    let _ = writeln!(s, "outputs.momentum = {}", cfg.out_momentum);
    let _ = writeln!(s, "outputs.raster = {}", cfg.out_raster);
    let _ = writeln!(s, "raster.width = {}", cfg.raster_width);
    let _ = writeln!(s, "raster.height = {}", cfg.raster_height);
    let _ = writeln!(s, "raster.x_lo = {}", cfg.raster_x_lo);
    let _ = writeln!(s, "raster.x_hi = {}", cfg.raster_x_hi);
    s
}

/// Render the observables series; `{}` formatting of f64 is the shortest
/// representation that round-trips, which keeps re-parse equality exact.
pub fn render_observables_csv(series: &ObservableSeries) -> String {
    let mut s = String::from("t,mean_x,mean_p,norm,mean_vcl,zbw_x,var_x\n");
    for i in 0..series.times.len() {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            series.times[i],
            series.mean_x[i],
            series.mean_p[i],
            series.norm[i],
            series.mean_vcl[i],
            series.mean_z[i],
            series.var_x[i]
        );
    }
    s
}

pub fn render_snapshot_csv(f: &SpinorField) -> String {
    let mut s = String::from("x,rho,re_psi1,im_psi1,re_psi2,im_psi2\n");
    for (j, v) in f.values.iter().enumerate() {
        let x = f.grid.position(j);
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            x,
            v.norm_sq(),
            v.c1.re,
            v.c1.im,
            v.c2.re,
            v.c2.im
        );
    }
    s
}

/// Momentum CSV rows are sorted ascending in p, i.e. by signed index.
pub fn render_momentum_csv(grid: &Grid, pair: &MomentumDensityPair) -> String {
    let mut s = String::from("p,rho_pos,rho_neg\n");
    let half = (grid.n() / 2) as i64;
    for k in -half..half {
        let j = grid.storage_index(k);
        let _ = writeln!(s, "{},{},{}", grid.momentum(j), pair.rho_pos[j], pair.rho_neg[j]);
    }
    s
}

/// Binary P6 (8-bit) space-time raster: rows are time (top row t = 0),
/// columns span the x window. Density maps linearly to gray 0..200 scaled
/// by the global maximum; the worldline pixel per row is full white.
pub fn render_spacetime_raster(
    profiles: &[DensityProfile],
    mean_xs: &[f64],
    width: usize,
    x_window: (f64, f64),
) -> Result<Vec<u8>> {
    if profiles.len() < 2 || mean_xs.len() != profiles.len() {
        return Err(DiracError::Argument(
            "raster needs at least 2 frames with matching worldline data".into(),
        ));
    }
    let (x_lo, x_hi) = x_window;
    if x_hi <= x_lo {
        return Err(DiracError::Argument("degenerate raster window".into()));
    }
    let height = profiles.len();
    let global_max = profiles
        .iter()
        .flat_map(|p| p.rho.iter().copied())
        .fold(0.0f64, f64::max);

    let mut data = Vec::with_capacity(width * height * 3 + 32);
    data.extend_from_slice(format!("P6\n{width} {height}\n255\n").as_bytes());
    let span = x_hi - x_lo;
    for (profile, &mx) in profiles.iter().zip(mean_xs) {
        let grid = &profile.grid;
        let mut row = vec![0u8; width * 3];
        for c in 0..width {
            let x = x_lo + (c as f64 + 0.5) * span / width as f64;
            // nearest grid sample
            let j = ((x + grid.half_length()) / grid.dx()).round();
            let j = j.clamp(0.0, (grid.n() - 1) as f64) as usize;
            let gray = if global_max > 0.0 {
                (200.0 * profile.rho[j] / global_max).round().clamp(0.0, 200.0) as u8
            } else {
                0
            };
            row[3 * c] = gray;
            row[3 * c + 1] = gray;
            row[3 * c + 2] = gray;
        }
        let wc = (((mx - x_lo) / span * width as f64).floor() as i64)
            .clamp(0, width as i64 - 1) as usize;
        row[3 * wc] = 255;
        row[3 * wc + 1] = 255;
        row[3 * wc + 2] = 255;
        data.extend_from_slice(&row);
    }
    Ok(data)
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut s = String::with_capacity(64);
    for b in digest {
        let _ = write!(s, "{b:02x}");
    }
    s
}

struct Emitter {
    out_dir: PathBuf,
    files: Vec<(PathBuf, String)>,
}

impl Emitter {
    fn new(out_dir: &Path) -> Result<Self> {
        fs::create_dir_all(out_dir)?;
        Ok(Self {
            out_dir: out_dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    fn write(&mut self, rel: &str, bytes: &[u8]) -> Result<()> {
        let path = self.out_dir.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&path, bytes)?;
        self.files.push((PathBuf::from(rel), sha256_hex(bytes)));
        Ok(())
    }
}

/// Frames of a Dirac run: the position-space field at each requested time,
/// each computed from the t = 0 momentum data in closed form.
fn dirac_frames(f0: &SpinorField, times: &[f64]) -> Result<Vec<SpinorField>> {
    let g0 = to_momentum(f0);
    times.iter().map(|&t| Ok(to_position(&evolve(&g0, t)?))).collect()
}

fn schrodinger_frames(
    grid: &Grid,
    gauss: &NonrelGaussian,
    times: &[f64],
) -> Result<Vec<(f64, Vec<Complex64>)>> {
    let psi0: Vec<Complex64> = grid.positions().map(|x| gauss.initial_amplitude(x)).collect();
    times
        .iter()
        .map(|&t| Ok((t, evolve_schrodinger(grid, &psi0, t)?)))
        .collect()
}

fn scalar_density(grid: &Grid, psi: &[Complex64], t: f64) -> DensityProfile {
    DensityProfile {
        grid: grid.clone(),
        rho: psi.iter().map(|v| v.norm_sqr()).collect(),
        time: t,
    }
}

fn scalar_mean_x(grid: &Grid, rho: &[f64]) -> f64 {
    let mass: f64 = rho.iter().sum();
    grid.positions().zip(rho).map(|(x, r)| x * r).sum::<f64>() / mass
}

/// The nonrelativistic baseline matched to a packet spec: same density
/// width and the same boost.
pub fn baseline_gaussian(cfg: &RunConfig) -> Result<NonrelGaussian> {
    NonrelGaussian::new(cfg.packet.sigma_x(), cfg.packet.x0, cfg.packet.q)
}

/// Run a full simulation and emit every requested artifact into `out_dir`.
/// Deterministic: equal configs produce byte-identical CSV/PPM outputs.
pub fn run_simulation(cfg: &RunConfig, out_dir: &Path) -> Result<RunManifest> {
    cfg.validate()?;
    let start = Instant::now();
    let grid = cfg.grid()?;
    let mut emitter = Emitter::new(out_dir)?;

    match cfg.kind {
        RunKind::Dirac(_) => {
            let f0 = cfg.packet.build(&grid)?;
            let times = frame_times(cfg.t_max, cfg.frames);

            if cfg.out_observables {
                let series = worldline(&f0, &times)?;
                emitter.write("observables.csv", render_observables_csv(&series).as_bytes())?;
            }
            if cfg.out_momentum {
                let pair = momentum_decomposition(&to_momentum(&f0));
                emitter.write("momentum.csv", render_momentum_csv(&grid, &pair).as_bytes())?;
            }
            if cfg.out_snapshots {
                for (i, frame) in dirac_frames(&f0, &times)?.iter().enumerate() {
                    emitter.write(
                        &format!("snapshots/snapshot_{i:04}.csv"),
                        render_snapshot_csv(frame).as_bytes(),
                    )?;
                }
            }
            if cfg.out_raster {
                let raster_times = frame_times(cfg.t_max, cfg.raster_height);
                let frames = dirac_frames(&f0, &raster_times)?;
                let profiles: Vec<DensityProfile> = frames.iter().map(density).collect();
                let mean_xs: Vec<f64> = frames
                    .iter()
                    .map(mean_position)
                    .collect::<Result<_>>()?;
                let ppm = render_spacetime_raster(
                    &profiles,
                    &mean_xs,
                    cfg.raster_width,
                    (cfg.raster_x_lo, cfg.raster_x_hi),
                )?;
                emitter.write("spacetime.ppm", &ppm)?;
            }
        }
        RunKind::Schrodinger => {
            let gauss = baseline_gaussian(cfg)?;
            let times = frame_times(cfg.t_max, cfg.frames);
            let frames = schrodinger_frames(&grid, &gauss, &times)?;

            if cfg.out_observables {
                let mut series = ObservableSeries {
                    times: times.clone(),
                    mean_x: Vec::new(),
                    mean_p: Vec::new(),
                    norm: Vec::new(),
                    mean_vcl: Vec::new(),
                    mean_z: Vec::new(),
                    var_x: Vec::new(),
                };
                for (t, psi) in &frames {
                    let d = scalar_density(&grid, psi, *t);
                    let mx = scalar_mean_x(&grid, &d.rho);
                    let mass: f64 = d.rho.iter().sum::<f64>() * grid.dx();
                    let var: f64 = grid
                        .positions()
                        .zip(&d.rho)
                        .map(|(x, r)| (x - mx) * (x - mx) * r)
                        .sum::<f64>()
                        * grid.dx()
                        / mass;
                    series.mean_x.push(mx);
                    series.mean_p.push(gauss.q);
                    series.norm.push(mass.sqrt());
                    series.mean_vcl.push(gauss.q);
                    series.mean_z.push(0.0);
                    series.var_x.push(var);
                }
                emitter.write("observables.csv", render_observables_csv(&series).as_bytes())?;
            }
            if cfg.out_raster {
                let raster_times = frame_times(cfg.t_max, cfg.raster_height);
                let raster_frames = schrodinger_frames(&grid, &gauss, &raster_times)?;
                let profiles: Vec<DensityProfile> = raster_frames
                    .iter()
                    .map(|(t, psi)| scalar_density(&grid, psi, *t))
                    .collect();
                let mean_xs: Vec<f64> =
                    profiles.iter().map(|p| scalar_mean_x(&grid, &p.rho)).collect();
                let ppm = render_spacetime_raster(
                    &profiles,
                    &mean_xs,
                    cfg.raster_width,
                    (cfg.raster_x_lo, cfg.raster_x_hi),
                )?;
                emitter.write("spacetime.ppm", &ppm)?;
            }
        }
    }

    let manifest = RunManifest {
        config_echo: echo_config(cfg),
        version: env!("CARGO_PKG_VERSION").to_string(),
        duration_ms: start.elapsed().as_millis(),
        files: emitter.files,
    };
    write_manifest(&manifest, out_dir)?;
    Ok(manifest)
}

fn write_manifest(manifest: &RunManifest, out_dir: &Path) -> Result<()> {
    let mut s = String::new();
    let _ = writeln!(s, "version = {}", manifest.version);
    let _ = writeln!(s, "duration_ms = {}", manifest.duration_ms);
    let _ = writeln!(s, "[config]");
    s.push_str(&manifest.config_echo);
    let _ = writeln!(s, "[files]");
    for (path, digest) in &manifest.files {
        let _ = writeln!(s, "{} sha256={digest}", path.display());
    }
    fs::write(out_dir.join("manifest.txt"), s)?;
    Ok(())
}

/// `decompose` subcommand body: momentum-decomposition CSV only.
pub fn run_decompose(cfg: &RunConfig, out_dir: &Path) -> Result<RunManifest> {
    let mut cfg = cfg.clone();
    cfg.out_observables = false;
    cfg.out_snapshots = false;
    cfg.out_raster = false;
    cfg.out_momentum = true;
    run_simulation(&cfg, out_dir)
}

/// `spacetime` subcommand body: raster only.
pub fn run_spacetime(cfg: &RunConfig, out_dir: &Path) -> Result<RunManifest> {
    let mut cfg = cfg.clone();
    cfg.out_observables = false;
    cfg.out_snapshots = false;
    cfg.out_momentum = false;
    cfg.out_raster = true;
    run_simulation(&cfg, out_dir)
}

/// Peak-track report for the `peaks` subcommand.
#[derive(Debug, Clone)]
pub struct PeakReport {
    pub tracks: Vec<PeakTrack>,
    pub centroid_speed: f64,
}

pub fn run_peaks(cfg: &RunConfig, window: (f64, f64), out_dir: &Path) -> Result<PeakReport> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let kind = match cfg.kind {
        RunKind::Dirac(_) => cfg.kind,
        RunKind::Schrodinger => {
            return Err(DiracError::Argument(
                "peak tracking applies to Dirac runs only".into(),
            ))
        }
    };
    let _ = kind;
    let f0 = cfg.packet.build(&grid)?;
    let times = frame_times(cfg.t_max, cfg.frames);
    let frames = dirac_frames(&f0, &times)?;
    let profiles: Vec<DensityProfile> = frames.iter().map(density).collect();
    let tracks = track_peaks(&profiles, window)?;
    let centroid = centroid_speed(&profiles, window)?;

    let mut emitter = Emitter::new(out_dir)?;
    let mut s = String::from("track,t,x\n");
    for (i, track) in tracks.iter().enumerate() {
        for &(t, x) in &track.samples {
            let _ = writeln!(s, "{i},{t},{x}");
        }
    }
    emitter.write("peaks.csv", s.as_bytes())?;
    let mut report = String::from("track,speed\n");
    for (i, track) in tracks.iter().enumerate() {
        let _ = writeln!(report, "{i},{}", track.speed);
    }
    let _ = writeln!(report, "centroid,{centroid}");
    emitter.write("peak_speeds.csv", report.as_bytes())?;

    Ok(PeakReport {
        tracks,
        centroid_speed: centroid,
    })
}

//! End-to-end checks of the `dirac1d` binary: exit codes, artifact layout,
//! header formats, overrides, and the output-directory resolution rules.

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dirac1d"))
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("run.cfg");
    fs::write(&path, body).unwrap();
    path
}

const SMALL_RUN: &str = "\
# small gauss11 run
grid.n = 256
grid.l = 32
packet.kind = gauss11
time.t_max = 5
time.frames = 8
outputs.snapshots = on
raster.width = 16
raster.height = 16
raster.x_lo = -16
raster.x_hi = 16
";

#[test]
fn simulate_emits_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_RUN);
    let out = dir.path().join("artifacts");

    let status = bin()
        .args(["simulate", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    let observables = fs::read_to_string(out.join("observables.csv")).unwrap();
    assert!(observables.starts_with("t,mean_x,mean_p,norm,mean_vcl,zbw_x,var_x\n"));
    assert_eq!(observables.lines().count(), 9); // header + 8 frames

    let momentum = fs::read_to_string(out.join("momentum.csv")).unwrap();
    assert!(momentum.starts_with("p,rho_pos,rho_neg\n"));

    let snap = fs::read_to_string(out.join("snapshots/snapshot_0000.csv")).unwrap();
    assert!(snap.starts_with("x,rho,re_psi1,im_psi1,re_psi2,im_psi2\n"));
    assert_eq!(snap.lines().count(), 257);

    let ppm = fs::read(out.join("spacetime.ppm")).unwrap();
    let header = b"P6\n16 16\n255\n";
    assert!(ppm.starts_with(header));
    assert_eq!(ppm.len(), header.len() + 16 * 16 * 3);

    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("observables.csv sha256="));
}

#[test]
fn decompose_and_spacetime_emit_single_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_RUN);

    let out = dir.path().join("d");
    let status = bin()
        .args(["decompose", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(out.join("momentum.csv").exists());
    assert!(!out.join("observables.csv").exists());
    assert!(!out.join("spacetime.ppm").exists());

    let out = dir.path().join("s");
    let status = bin()
        .args(["spacetime", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(out.join("spacetime.ppm").exists());
    assert!(!out.join("momentum.csv").exists());
}

#[test]
fn peaks_reports_tracks() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "grid.n = 512\n\
         grid.l = 32\n\
         packet.kind = posneg_pair\n\
         time.t_max = 2\n\
         time.frames = 21\n",
    );
    let out = dir.path().join("p");
    let output = bin()
        .args([
            "peaks",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--window=-6:6",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("track 0: speed "));
    assert!(stdout.contains("centroid: speed "));
    assert!(fs::read_to_string(out.join("peaks.csv"))
        .unwrap()
        .starts_with("track,t,x\n"));
    assert!(fs::read_to_string(out.join("peak_speeds.csv"))
        .unwrap()
        .starts_with("track,speed\n"));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();

    // unknown key, with the offending line number reported
    let cfg = write_config(dir.path(), "grid.n = 256\ngrid.bogus = 1\n");
    let output = bin()
        .args(["simulate", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("config error"), "stderr: {stderr}");
    assert!(stderr.contains("line 2"), "stderr: {stderr}");

    // cross-key violation: run longer than the box allows
    let cfg = write_config(dir.path(), "grid.l = 16\ntime.t_max = 50\n");
    let status = bin()
        .args(["simulate", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    // malformed --set override
    let cfg = write_config(dir.path(), SMALL_RUN);
    let status = bin()
        .args([
            "simulate",
            cfg.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap(),
            "--set",
            "time.t_max",
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn numeric_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "grid.n = 512\n\
         grid.l = 32\n\
         packet.kind = posneg_pair\n\
         time.t_max = 2\n\
         time.frames = 21\n",
    );
    // two frames cannot support a track fit
    let output = bin()
        .args([
            "peaks",
            cfg.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap(),
            "--window=-6:6",
            "--set",
            "time.frames = 2",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("numeric error"), "stderr: {stderr}");
}

#[test]
fn overrides_apply_on_top_of_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_RUN);
    let out = dir.path().join("o");
    let status = bin()
        .args([
            "simulate",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--set",
            "time.frames = 4",
            "--set",
            "outputs.raster = off",
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let observables = fs::read_to_string(out.join("observables.csv")).unwrap();
    assert_eq!(observables.lines().count(), 5);
    assert!(!out.join("spacetime.ppm").exists());
}

#[test]
fn out_dir_falls_back_to_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_RUN);
    let out = dir.path().join("from-env");
    let status = bin()
        .args(["decompose", cfg.to_str().unwrap()])
        .env("DIRAC1D_OUT", &out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(out.join("momentum.csv").exists());
}

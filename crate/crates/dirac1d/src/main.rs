use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dirac1d::config::{apply_assignment, parse_config, RunConfig};
use dirac1d::error::DiracError;
use dirac1d::output::{run_decompose, run_peaks, run_simulation, run_spacetime};

/// Simulator for the free one-dimensional Dirac equation.
#[derive(Debug, Parser)]
#[command(name = "dirac1d", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Run configuration file (`section.key = value` lines).
    config: PathBuf,

    /// Output directory (default: $DIRAC1D_OUT or ./out).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Override a config value, e.g. --set time.t_max=20 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full simulation and emit every enabled artifact.
    Simulate(CommonArgs),
    /// Emit only the energy-sign momentum decomposition CSV.
    Decompose(CommonArgs),
    /// Emit only the space-time density raster.
    Spacetime(CommonArgs),
    /// Track interference-peak motion inside a window and report speeds.
    Peaks {
        #[command(flatten)]
        common: CommonArgs,
        /// Tracking window as LO:HI.
        #[arg(long)]
        window: String,
    },
}

fn load_config(common: &CommonArgs) -> Result<RunConfig, DiracError> {
    let text = std::fs::read_to_string(&common.config)?;
    let mut cfg = parse_config(&text)?;
    for (i, item) in common.overrides.iter().enumerate() {
        let (key, value) = item.split_once('=').ok_or(DiracError::Config {
            line: 0,
            message: format!("override #{} is not KEY=VALUE: `{item}`", i + 1),
        })?;
        apply_assignment(&mut cfg, 0, key.trim(), value.trim())?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn out_dir(common: &CommonArgs) -> PathBuf {
    if let Some(dir) = &common.out {
        return dir.clone();
    }
    match std::env::var_os("DIRAC1D_OUT") {
        Some(root) => PathBuf::from(root),
        None => PathBuf::from("out"),
    }
}

fn parse_window(s: &str) -> Result<(f64, f64), DiracError> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| {
        DiracError::Argument(format!("window must be LO:HI, got `{s}`"))
    })?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| DiracError::Argument(format!("bad window bound `{lo}`")))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| DiracError::Argument(format!("bad window bound `{hi}`")))?;
    if hi <= lo {
        return Err(DiracError::Argument("window must satisfy LO < HI".into()));
    }
    Ok((lo, hi))
}

fn run(cli: Cli) -> Result<(), DiracError> {
    match cli.command {
        Command::Simulate(common) => {
            let cfg = load_config(&common)?;
            let manifest = run_simulation(&cfg, &out_dir(&common))?;
            for (path, digest) in &manifest.files {
                println!("{} sha256={digest}", path.display());
            }
            Ok(())
        }
        Command::Decompose(common) => {
            let cfg = load_config(&common)?;
            let manifest = run_decompose(&cfg, &out_dir(&common))?;
            for (path, digest) in &manifest.files {
                println!("{} sha256={digest}", path.display());
            }
            Ok(())
        }
        Command::Spacetime(common) => {
            let cfg = load_config(&common)?;
            let manifest = run_spacetime(&cfg, &out_dir(&common))?;
            for (path, digest) in &manifest.files {
                println!("{} sha256={digest}", path.display());
            }
            Ok(())
        }
        Command::Peaks { common, window } => {
            let cfg = load_config(&common)?;
            let window = parse_window(&window)?;
            let report = run_peaks(&cfg, window, &out_dir(&common))?;
            for (i, track) in report.tracks.iter().enumerate() {
                println!("track {i}: speed {}", track.speed);
            }
            println!("centroid: speed {}", report.centroid_speed);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ DiracError::Config { .. }) => {
            eprintln!("config error: {e}");
            ExitCode::from(2)
        }
        Err(e @ DiracError::Io(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("numeric error: {e}");
            ExitCode::from(3)
        }
    }
}

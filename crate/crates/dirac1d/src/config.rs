//! Run configuration: line-based `section.key = value` files with `#`
//! comments, unknown keys rejected, CLI overrides applied on top.

use crate::error::{DiracError, Result};
use crate::grid::Grid;
use crate::packets::{PacketKind, PacketSpec};

/// Which initial condition a run simulates; extends the packet kinds with
/// the nonrelativistic baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunKind {
    Dirac(PacketKind),
    Schrodinger,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid_n: usize,
    pub grid_l: f64,
    pub kind: RunKind,
    pub packet: PacketSpec,
    pub t_max: f64,
    pub frames: usize,
    pub out_observables: bool,
    pub out_snapshots: bool,
    pub out_momentum: bool,
    pub out_raster: bool,
    pub raster_width: usize,
    pub raster_height: usize,
    pub raster_x_lo: f64,
    pub raster_x_hi: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid_n: 2048,
            grid_l: 128.0,
            kind: RunKind::Dirac(PacketKind::Gauss11),
            packet: PacketSpec::new(PacketKind::Gauss11),
            t_max: 50.0,
            frames: 256,
            out_observables: true,
            out_snapshots: false,
            out_momentum: true,
            out_raster: true,
            raster_width: 512,
            raster_height: 512,
            raster_x_lo: -64.0,
            raster_x_hi: 64.0,
        }
    }
}

impl RunConfig {
    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.grid_n, self.grid_l)
    }

    /// Cross-key invariants that cannot be checked per assignment.
    pub fn validate(&self) -> Result<()> {
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(config_invalid("time.t_max must be positive"));
        }
        if self.frames < 2 {
            return Err(config_invalid("time.frames must be at least 2"));
        }
        if self.raster_width < 16 || self.raster_height < 16 {
            return Err(config_invalid("raster dimensions must be at least 16"));
        }
        if self.raster_x_hi <= self.raster_x_lo {
            return Err(config_invalid("raster x window is empty"));
        }
        // wrap-around guard: the light cone from the packet must stay
        // inside the periodic box for the whole run
        let extent = 8.0 * self.packet.sigma_x() + self.packet.x0.abs();
        if self.t_max + extent >= self.grid_l {
            return Err(config_invalid(&format!(
                "t_max {} plus packet extent {extent} reaches the box edge l = {}; \
                 enlarge grid.l or shorten the run",
                self.t_max, self.grid_l
            )));
        }
        self.grid()?;
        self.packet.validate()?;
        Ok(())
    }
}

fn config_invalid(msg: &str) -> DiracError {
    DiracError::Config {
        line: 0,
        message: msg.to_string(),
    }
}

fn err(line: usize, msg: impl Into<String>) -> DiracError {
    DiracError::Config {
        line,
        message: msg.into(),
    }
}

fn parse_f64(line: usize, key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| err(line, format!("{key}: expected a number, got `{value}`")))
}

fn parse_usize(line: usize, key: &str, value: &str) -> Result<usize> {
    value
        .parse::<usize>()
        .map_err(|_| err(line, format!("{key}: expected an integer, got `{value}`")))
}

fn parse_bool(line: usize, key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "on" | "1" | "yes" => Ok(true),
        "false" | "off" | "0" | "no" => Ok(false),
        _ => Err(err(line, format!("{key}: expected a boolean, got `{value}`"))),
    }
}

fn parse_kind(line: usize, value: &str) -> Result<RunKind> {
    match value {
        "gauss11" => Ok(RunKind::Dirac(PacketKind::Gauss11)),
        "gauss11_boosted" => Ok(RunKind::Dirac(PacketKind::Gauss11Boosted)),
        "gauss10" => Ok(RunKind::Dirac(PacketKind::Gauss10)),
        "posneg_pair" => Ok(RunKind::Dirac(PacketKind::PosNegPair)),
        "custom" => Ok(RunKind::Dirac(PacketKind::Custom)),
        "schrodinger" => Ok(RunKind::Schrodinger),
        _ => Err(err(line, format!("unknown packet kind `{value}`"))),
    }
}

/// Apply one `section.key = value` assignment.
pub fn apply_assignment(cfg: &mut RunConfig, line: usize, key: &str, value: &str) -> Result<()> {
    match key {
        "grid.n" => {
            let n = parse_usize(line, key, value)?;
            if n < 16 || !n.is_power_of_two() {
                return Err(err(line, format!("grid.n must be a power of two >= 16, got {n}")));
            }
            cfg.grid_n = n;
        }
        "grid.l" => {
            let l = parse_f64(line, key, value)?;
            if !(l > 0.0 && l.is_finite()) {
                return Err(err(line, format!("grid.l must be positive, got {l}")));
            }
            cfg.grid_l = l;
        }
        "packet.kind" => {
            cfg.kind = parse_kind(line, value)?;
            if let RunKind::Dirac(kind) = cfg.kind {
                // reset packet parameters to the kind's canonical values;
                // later lines may still override them
                cfg.packet = PacketSpec::new(kind);
            }
        }
        "packet.a" => cfg.packet.a = parse_f64(line, key, value)?,
        "packet.x0" => cfg.packet.x0 = parse_f64(line, key, value)?,
        "packet.q" => cfg.packet.q = parse_f64(line, key, value)?,
        "packet.w1" => cfg.packet.w1 = parse_f64(line, key, value)?,
        "packet.w2" => cfg.packet.w2 = parse_f64(line, key, value)?,
        "packet.p0" => cfg.packet.p0 = parse_f64(line, key, value)?,
        "packet.b" => cfg.packet.b = parse_f64(line, key, value)?,
        "time.t_max" => cfg.t_max = parse_f64(line, key, value)?,
        "time.frames" => cfg.frames = parse_usize(line, key, value)?,
        "outputs.observables" => cfg.out_observables = parse_bool(line, key, value)?,
        "outputs.snapshots" => cfg.out_snapshots = parse_bool(line, key, value)?,
        "outputs.momentum" => cfg.out_momentum = parse_bool(line, key, value)?,
        "outputs.raster" => cfg.out_raster = parse_bool(line, key, value)?,
        "raster.width" => cfg.raster_width = parse_usize(line, key, value)?,
        "raster.height" => cfg.raster_height = parse_usize(line, key, value)?,
        "raster.x_lo" => cfg.raster_x_lo = parse_f64(line, key, value)?,
        "raster.x_hi" => cfg.raster_x_hi = parse_f64(line, key, value)?,
        _ => return Err(err(line, format!("unknown key `{key}`"))),
    }
    Ok(())
}

/// Parse a config file body. Does not run cross-key validation; callers
/// apply CLI overrides first and then call [`RunConfig::validate`].
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(line_no, format!("malformed line `{raw}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(err(line_no, format!("malformed line `{raw}`")));
        }
        apply_assignment(&mut cfg, line_no, key, value)?;
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_yields_defaults() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        cfg.validate().unwrap();
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let cfg = parse_config("# a comment\n\n  time.t_max = 20 # trailing\n").unwrap();
        assert_eq!(cfg.t_max, 20.0);
    }

    #[test]
    fn packet_kind_selection() {
        let cfg = parse_config("packet.kind = gauss11_boosted\n").unwrap();
        assert_eq!(cfg.kind, RunKind::Dirac(PacketKind::Gauss11Boosted));
        assert_eq!(cfg.packet.q, 0.75);
    }

    #[test]
    fn unknown_key_names_line() {
        let e = parse_config("grid.n = 512\nbogus.key = 1\n").unwrap_err();
        match e {
            DiracError::Config { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn malformed_line_rejected() {
        assert!(parse_config("grid.n 512\n").is_err());
        assert!(parse_config("grid.n =\n").is_err());
    }

    #[test]
    fn out_of_range_values_rejected() {
        assert!(parse_config("grid.n = 100\n").is_err());
        assert!(parse_config("grid.l = -3\n").is_err());
        assert!(parse_config("packet.kind = nonsense\n").is_err());
    }

    #[test]
    fn wrap_around_guard() {
        let cfg = parse_config("time.t_max = 1e9\n").unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn frames_floor() {
        let cfg = parse_config("time.frames = 1\n").unwrap();
        assert!(cfg.validate().is_err());
    }
}

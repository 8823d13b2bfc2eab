//! Run configuration, initial data and CSV/JSON output for the `simulate` binary.
//!
//! Configs are flat `key = value` lines with dotted sections and `#` comments:
//!
//! ```text
//! model = darcy2d
//! nu = 0.1
//! resolution = 64
//! time.dt = 0.001
//! time.t_end = 1.0
//! initial.mode = 1 0.1 0.0      # k amplitude phase
//! initial.mode = 2 0.05 1.5708
//! output_dir = out/darcy
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Model, ModelKind, ModelParams};
use crate::spectral::{Field, PeriodicGrid};
use crate::strip::StripConfig;
use crate::time_march::{integrate, initial_state, Outcome, Scheme, StepConfig, Trajectory};

/// One Fourier mode `a·cos(k·x + phase)` of the initial elevation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialMode {
    pub k1: i64,
    pub k2: i64,
    pub amplitude: f64,
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    Modes(Vec<InitialMode>),
    /// Whitespace- or comma-separated nodal values; the last column of each row is used.
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelKind,
    pub nu: f64,
    pub lambda: f64,
    pub sigma: f64,
    pub resolution: usize,
    /// Second-axis resolution of the 3D models; defaults to `resolution`.
    pub resolution2: Option<usize>,
    pub strip: StripConfig,
    pub time: StepConfig,
    pub initial: InitialData,
    pub output_dir: PathBuf,
}

impl RunConfig {
    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.model, self.nu, self.lambda, self.sigma)
    }

    pub fn grid(&self) -> Result<PeriodicGrid> {
        match self.model.interface_dim() {
            2 => PeriodicGrid::new_2d(self.resolution, self.resolution2.unwrap_or(self.resolution)),
            _ => PeriodicGrid::new_1d(self.resolution),
        }
    }

    /// Applies command-line overrides and re-checks the affected constraints.
    pub fn apply_overrides(
        &mut self,
        output_dir: Option<PathBuf>,
        resolution: Option<usize>,
        t_end: Option<f64>,
    ) -> Result<()> {
        if let Some(dir) = output_dir {
            self.output_dir = dir;
        }
        if let Some(n) = resolution {
            check_resolution(n).map_err(|m| config_err(None, "resolution", m))?;
            self.resolution = n;
        }
        if let Some(t) = t_end {
            self.time.t_end = t;
            self.time
                .validate()
                .map_err(|e| config_err(None, "time.t_end", e.to_string()))?;
        }
        Ok(())
    }
}

fn config_err(line: Option<usize>, key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}

fn check_resolution(n: usize) -> std::result::Result<(), String> {
    if n < PeriodicGrid::MIN_POINTS || !n.is_multiple_of(2) {
        return Err(format!("resolution {n} must be even and at least {}", PeriodicGrid::MIN_POINTS));
    }
    Ok(())
}

const KEYS: [&str; 16] = [
    "model",
    "nu",
    "lambda",
    "sigma",
    "resolution",
    "resolution2",
    "strip.depth_truncation",
    "strip.panels",
    "strip.nodes_per_panel",
    "time.dt",
    "time.t_end",
    "time.scheme",
    "time.snapshot_stride",
    "initial.mode",
    "initial.file",
    "output_dir",
];

pub const DEFAULT_OUTPUT_DIR: &str = "output";
pub const DEFAULT_SNAPSHOT_STRIDE: usize = 10;

struct Entries {
    map: HashMap<String, (usize, String)>,
    modes: Vec<(usize, String)>,
}

impl Entries {
    fn get(&self, key: &str) -> Option<(usize, &str)> {
        self.map.get(key).map(|(l, v)| (*l, v.as_str()))
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<(usize, T)>> {
        match self.get(key) {
            None => Ok(None),
            Some((line, raw)) => raw
                .parse::<T>()
                .map(|v| Some((line, v)))
                .map_err(|_| config_err(Some(line), key, format!("cannot parse '{raw}'"))),
        }
    }

    fn required<T: std::str::FromStr>(&self, key: &str) -> Result<(usize, T)> {
        self.parse(key)?
            .ok_or_else(|| config_err(None, key, "missing required key"))
    }

    fn real(&self, key: &str, default: f64, ok: impl Fn(f64) -> bool, rule: &str) -> Result<f64> {
        match self.parse::<f64>(key)? {
            None => Ok(default),
            Some((_, v)) if v.is_finite() && ok(v) => Ok(v),
            Some((line, v)) => Err(config_err(Some(line), key, format!("{v} violates {rule}"))),
        }
    }
}

fn unquote(value: &str) -> &str {
    let v = value.trim();
    if v.len() >= 2 && ((v.starts_with('"') && v.ends_with('"')) || (v.starts_with('\'') && v.ends_with('\''))) {
        &v[1..v.len() - 1]
    } else {
        v
    }
}

fn tokenize(text: &str) -> Result<Entries> {
    let mut map = HashMap::new();
    let mut modes = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| config_err(Some(line), content, "expected 'key = value'"))?;
        let key = key.trim();
        let value = unquote(value).to_string();
        if !KEYS.contains(&key) {
            return Err(config_err(Some(line), key, "unknown key"));
        }
        if key == "initial.mode" {
            modes.push((line, value));
        } else if map.insert(key.to_string(), (line, value)).is_some() {
            return Err(config_err(Some(line), key, "duplicate key"));
        }
    }
    Ok(Entries { map, modes })
}

fn parse_mode(line: usize, value: &str, dim: usize) -> Result<InitialMode> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    let bad = |m: &str| config_err(Some(line), "initial.mode", m.to_string());
    let expected = if dim == 2 { 4 } else { 3 };
    if parts.len() != expected {
        return Err(bad(&format!(
            "expected {} fields ({}), got '{value}'",
            expected,
            if dim == 2 { "k1 k2 amplitude phase" } else { "k amplitude phase" }
        )));
    }
    let int = |s: &str| s.parse::<i64>().map_err(|_| bad(&format!("wavenumber '{s}' is not an integer")));
    let real = |s: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| bad(&format!("'{s}' is not a finite number")))
    };
    let (k1, k2, rest) = if dim == 2 {
        (int(parts[0])?, int(parts[1])?, &parts[2..])
    } else {
        (int(parts[0])?, 0, &parts[1..])
    };
    if k1 == 0 && k2 == 0 {
        return Err(bad("the zero mode would give the elevation a nonzero mean"));
    }
    Ok(InitialMode {
        k1,
        k2,
        amplitude: real(rest[0])?,
        phase: real(rest[1])?,
    })
}

/// Parses and validates a run configuration.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let e = tokenize(text)?;
    let (_, model) = e.required::<String>("model")?;
    let model: ModelKind = model.parse().map_err(|err: Error| {
        config_err(e.get("model").map(|(l, _)| l), "model", err.to_string())
    })?;
    let nonneg = |v: f64| v >= 0.0;
    let positive = |v: f64| v > 0.0;
    let nu = e.real("nu", 0.0, nonneg, "nu >= 0")?;
    let lambda = e.real("lambda", 0.0, nonneg, "lambda >= 0")?;
    let sigma = e.real("sigma", 1.0, positive, "sigma > 0")?;

    let (line, resolution) = e.required::<usize>("resolution")?;
    check_resolution(resolution).map_err(|m| config_err(Some(line), "resolution", m))?;
    let resolution2 = match e.parse::<usize>("resolution2")? {
        None => None,
        Some((line, _)) if model.interface_dim() != 2 => {
            return Err(config_err(Some(line), "resolution2", format!("not used by model {model}")));
        }
        Some((line, n)) => {
            check_resolution(n).map_err(|m| config_err(Some(line), "resolution2", m))?;
            Some(n)
        }
    };

    let defaults = StripConfig::default();
    let strip = StripConfig {
        depth_truncation: e.real("strip.depth_truncation", defaults.depth_truncation, positive, "depth > 0")?,
        panels: match e.parse::<usize>("strip.panels")? {
            Some((line, 0)) => return Err(config_err(Some(line), "strip.panels", "must be >= 1")),
            Some((_, p)) => p,
            None => defaults.panels,
        },
        nodes_per_panel: match e.parse::<usize>("strip.nodes_per_panel")? {
            Some((line, m)) if m < 2 => {
                return Err(config_err(Some(line), "strip.nodes_per_panel", format!("{m} must be >= 2")))
            }
            Some((_, m)) => m,
            None => defaults.nodes_per_panel,
        },
        grading: defaults.grading,
    };

    let (dt_line, dt) = e.required::<f64>("time.dt")?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(config_err(Some(dt_line), "time.dt", format!("{dt} must be > 0")));
    }
    let (t_line, t_end) = e.required::<f64>("time.t_end")?;
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(config_err(Some(t_line), "time.t_end", format!("{t_end} must be >= 0")));
    }
    let scheme = match e.get("time.scheme") {
        None => Scheme::default(),
        Some((line, raw)) => raw
            .parse()
            .map_err(|err: Error| config_err(Some(line), "time.scheme", err.to_string()))?,
    };
    let stride = match e.parse::<usize>("time.snapshot_stride")? {
        Some((line, 0)) => return Err(config_err(Some(line), "time.snapshot_stride", "must be >= 1")),
        Some((_, s)) => s,
        None => DEFAULT_SNAPSHOT_STRIDE,
    };
    let time = StepConfig {
        dt,
        t_end,
        scheme,
        snapshot_stride: stride,
    };
    time.validate()
        .map_err(|err| config_err(Some(dt_line), "time.dt", err.to_string()))?;

    let initial = match (e.get("initial.file"), e.modes.is_empty()) {
        (Some((line, _)), false) => {
            return Err(config_err(Some(line), "initial.file", "cannot be combined with initial.mode"));
        }
        (Some((_, path)), true) => InitialData::File(PathBuf::from(path)),
        (None, _) => InitialData::Modes(
            e.modes
                .iter()
                .map(|(line, v)| parse_mode(*line, v, model.interface_dim()))
                .collect::<Result<_>>()?,
        ),
    };
    let output_dir = e
        .get("output_dir")
        .map_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR), |(_, v)| PathBuf::from(v));

    Ok(RunConfig {
        model,
        nu,
        lambda,
        sigma,
        resolution,
        resolution2,
        strip,
        time,
        initial,
        output_dir,
    })
}

/// Serialises a config so that [`parse_config`] reproduces it exactly.
pub fn to_config_text(c: &RunConfig) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "model = {}", c.model);
    let _ = writeln!(s, "nu = {:?}", c.nu);
    let _ = writeln!(s, "lambda = {:?}", c.lambda);
    let _ = writeln!(s, "sigma = {:?}", c.sigma);
    let _ = writeln!(s, "resolution = {}", c.resolution);
    if let Some(n2) = c.resolution2 {
        let _ = writeln!(s, "resolution2 = {n2}");
    }
    let _ = writeln!(s, "strip.depth_truncation = {:?}", c.strip.depth_truncation);
    let _ = writeln!(s, "strip.panels = {}", c.strip.panels);
    let _ = writeln!(s, "strip.nodes_per_panel = {}", c.strip.nodes_per_panel);
    let _ = writeln!(s, "time.dt = {:?}", c.time.dt);
    let _ = writeln!(s, "time.t_end = {:?}", c.time.t_end);
    let _ = writeln!(s, "time.scheme = {}", c.time.scheme);
    let _ = writeln!(s, "time.snapshot_stride = {}", c.time.snapshot_stride);
    match &c.initial {
        InitialData::File(p) => {
            let _ = writeln!(s, "initial.file = {}", p.display());
        }
        InitialData::Modes(modes) => {
            for m in modes {
                if c.model.interface_dim() == 2 {
                    let _ = writeln!(s, "initial.mode = {} {} {:?} {:?}", m.k1, m.k2, m.amplitude, m.phase);
                } else {
                    let _ = writeln!(s, "initial.mode = {} {:?} {:?}", m.k1, m.amplitude, m.phase);
                }
            }
        }
    }
    let _ = writeln!(s, "output_dir = {}", c.output_dir.display());
    s
}

/// Initial elevation on the configured grid, with any mean projected out.
pub fn build_initial(config: &RunConfig) -> Result<Field> {
    let grid = config.grid()?;
    match &config.initial {
        InitialData::Modes(modes) => {
            for m in modes {
                let n1 = grid.n(0) as i64;
                let n2 = grid.n(1) as i64;
                let out1 = 2 * m.k1.abs() >= n1;
                let out2 = grid.dim() == 2 && 2 * m.k2.abs() >= n2;
                if out1 || out2 {
                    return Err(Error::InvalidInput(format!(
                        "initial mode ({}, {}) is outside the band of a {:?} grid",
                        m.k1,
                        m.k2,
                        &grid.shape()[..grid.dim()]
                    )));
                }
            }
            Ok(Field::from_fn(grid, |x1, x2| {
                modes
                    .iter()
                    .map(|m| m.amplitude * (m.k1 as f64 * x1 + m.k2 as f64 * x2 + m.phase).cos())
                    .sum()
            }))
        }
        InitialData::File(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read initial file {}: {e}", path.display())))?;
            let mut values = Vec::new();
            for (idx, line) in text.lines().enumerate() {
                let body = line.split('#').next().unwrap_or("").trim();
                if body.is_empty() {
                    continue;
                }
                let last = body
                    .split(|c: char| c == ',' || c.is_whitespace()).rfind(|t| !t.is_empty())
                    .unwrap_or("");
                match last.parse::<f64>() {
                    Ok(v) if v.is_finite() => values.push(v),
                    Ok(v) => {
                        return Err(Error::InvalidInput(format!(
                            "non-finite value {v} on line {} of {}",
                            idx + 1,
                            path.display()
                        )))
                    }
                    // Header rows are skipped until the first number.
                    Err(_) if values.is_empty() => continue,
                    Err(_) => {
                        return Err(Error::InvalidInput(format!(
                            "cannot parse '{last}' on line {} of {}",
                            idx + 1,
                            path.display()
                        )))
                    }
                }
            }
            let field = Field::new(grid, values)?;
            let mean = field.mean();
            Ok(field.map(|v| v - mean))
        }
    }
}

/// Process exit codes of the `simulate` binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitStatus {
    Success,
    ParseError,
    Infeasible,
    BlowUp,
    IoError,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::ParseError => 2,
            ExitStatus::Infeasible => 3,
            ExitStatus::BlowUp => 4,
            ExitStatus::IoError => 5,
        }
    }

    /// Exit status for an error raised while preparing or running a simulation.
    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::Infeasible { .. } | Error::Truncation { .. } => ExitStatus::Infeasible,
            Error::BlowUp { .. } => ExitStatus::BlowUp,
            Error::Io(_) => ExitStatus::IoError,
            _ => ExitStatus::ParseError,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct SnapshotRecord {
    step: usize,
    time: f64,
    nodal: String,
    spectrum: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    hierarchy: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
struct Manifest {
    status: ExitStatus,
    exit_code: i32,
    message: Option<String>,
    blow_up_time: Option<f64>,
    partial: bool,
    config: String,
    files: Vec<String>,
    snapshots: Vec<SnapshotRecord>,
}

pub const MANIFEST_FILE: &str = "run.json";
pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn nodal_csv(f: &Field) -> String {
    let grid = f.grid();
    let x1 = grid.points(0);
    let mut s = String::new();
    if grid.dim() == 2 {
        let x2 = grid.points(1);
        s.push_str("x1,x2,f\n");
        for (i, a) in x1.iter().enumerate() {
            for (j, b) in x2.iter().enumerate() {
                let _ = writeln!(s, "{},{},{}", num(*a), num(*b), num(f.values()[i * x2.len() + j]));
            }
        }
    } else {
        s.push_str("x1,f\n");
        for (a, v) in x1.iter().zip(f.values()) {
            let _ = writeln!(s, "{},{}", num(*a), num(*v));
        }
    }
    s
}

fn spectrum_csv(f: &Field) -> String {
    let grid = f.grid();
    let spec = f.spectrum();
    let mut s = String::from(if grid.dim() == 2 { "k,k2,re,im\n" } else { "k,re,im\n" });
    for (flat, c) in spec.coeffs().iter().enumerate() {
        let (k1, k2) = grid.mode_at(flat);
        if grid.dim() == 2 {
            let _ = writeln!(s, "{k1},{k2},{},{}", num(c.re), num(c.im));
        } else {
            let _ = writeln!(s, "{k1},{},{}", num(c.re), num(c.im));
        }
    }
    s
}

fn hierarchy_csv(h0: &Field, h1: &Field) -> String {
    let mut s = String::from("x1,h0,h1\n");
    for ((a, u), v) in h0.grid().points(0).iter().zip(h0.values()).zip(h1.values()) {
        let _ = writeln!(s, "{},{},{}", num(*a), num(*u), num(*v));
    }
    s
}

fn write_file(dir: &Path, name: &str, content: &str, files: &mut Vec<String>) -> Result<()> {
    fs::write(dir.join(name), content)
        .map_err(|e| Error::Io(format!("writing {}: {e}", dir.join(name).display())))?;
    files.push(name.to_string());
    Ok(())
}

fn write_manifest(config: &RunConfig, mut manifest: Manifest) -> Result<()> {
    manifest.config = to_config_text(config);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
    fs::write(config.output_dir.join(MANIFEST_FILE), json + "\n")
        .map_err(|e| Error::Io(format!("writing manifest: {e}")))
}

/// Writes diagnostics, per-snapshot nodal and spectral CSVs and the manifest.
///
/// Returns the names of the files written, relative to the output directory.
pub fn write_outputs(trajectory: &Trajectory, config: &RunConfig) -> Result<Vec<String>> {
    if trajectory.snapshots.is_empty() {
        return Err(Error::InvalidInput("empty trajectory".into()));
    }
    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("creating {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    let mut records = Vec::new();
    let mut manifest = Manifest {
        status: ExitStatus::Success,
        exit_code: 0,
        message: None,
        blow_up_time: None,
        partial: false,
        config: String::new(),
        files: Vec::new(),
        snapshots: Vec::new(),
    };
    if let Outcome::BlowUp { time, reason } = &trajectory.outcome {
        manifest.status = ExitStatus::BlowUp;
        manifest.exit_code = ExitStatus::BlowUp.code();
        manifest.message = Some(reason.clone());
        manifest.blow_up_time = Some(*time);
        manifest.partial = true;
    }

    let result = (|| -> Result<()> {
        let mut diag = String::from("t,mean,l2,max_slope\n");
        for snap in &trajectory.snapshots {
            let d = snap.diagnostics;
            let _ = writeln!(diag, "{},{},{},{}", num(snap.time), num(d.mean), num(d.l2), num(d.max_slope));
        }
        write_file(dir, DIAGNOSTICS_FILE, &diag, &mut files)?;
        for snap in &trajectory.snapshots {
            let nodal = format!("snap_{:06}.csv", snap.step);
            let spectrum = format!("spectrum_{:06}.csv", snap.step);
            write_file(dir, &nodal, &nodal_csv(&snap.observable), &mut files)?;
            write_file(dir, &spectrum, &spectrum_csv(&snap.observable), &mut files)?;
            let hierarchy = if snap.state.len() == 2 {
                let name = format!("hierarchy_{:06}.csv", snap.step);
                write_file(dir, &name, &hierarchy_csv(&snap.state[0], &snap.state[1]), &mut files)?;
                Some(name)
            } else {
                None
            };
            records.push(SnapshotRecord {
                step: snap.step,
                time: snap.time,
                nodal,
                spectrum,
                hierarchy,
            });
        }
        Ok(())
    })();

    if let Err(e) = &result {
        manifest.status = ExitStatus::IoError;
        manifest.exit_code = ExitStatus::IoError.code();
        manifest.message = Some(e.to_string());
        manifest.partial = true;
    }
    manifest.files = files.clone();
    manifest.snapshots = records;
    let written = write_manifest(config, manifest);
    result?;
    written?;
    files.push(MANIFEST_FILE.to_string());
    Ok(files)
}

/// Outcome of [`run`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub status: ExitStatus,
    pub message: Option<String>,
    pub files: Vec<String>,
}

fn failure_report(config: &RunConfig, status: ExitStatus, e: &Error) -> RunReport {
    // Best effort: record the failure in a manifest when the directory is usable.
    if fs::create_dir_all(&config.output_dir).is_ok() {
        let manifest = Manifest {
            status,
            exit_code: status.code(),
            message: Some(e.to_string()),
            blow_up_time: None,
            partial: true,
            config: String::new(),
            files: Vec::new(),
            snapshots: Vec::new(),
        };
        let _ = write_manifest(config, manifest);
    }
    RunReport {
        status,
        message: Some(e.to_string()),
        files: Vec::new(),
    }
}

/// Builds the model and initial data, integrates, and writes all outputs.
pub fn run(config: &RunConfig) -> RunReport {
    let prepared = (|| -> Result<(Model, Vec<Field>)> {
        let grid = config.grid()?;
        let model = Model::new(config.params()?, grid, config.strip)?;
        let f0 = build_initial(config)?;
        let state = initial_state(&model, &f0)?;
        Ok((model, state))
    })();
    let (model, state) = match prepared {
        Ok(v) => v,
        Err(e) => return failure_report(config, ExitStatus::of_error(&e), &e),
    };
    let trajectory = match integrate(&model, &state, &config.time, |_| {}) {
        Ok(t) => t,
        Err(e) => return failure_report(config, ExitStatus::of_error(&e), &e),
    };
    match write_outputs(&trajectory, config) {
        Ok(files) => {
            let (status, message) = match trajectory.status() {
                Ok(()) => (ExitStatus::Success, None),
                Err(e) => (ExitStatus::BlowUp, Some(e.to_string())),
            };
            RunReport { status, message, files }
        }
        Err(e) => RunReport {
            status: ExitStatus::IoError,
            message: Some(e.to_string()),
            files: Vec::new(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "model = darcy2d\nresolution = 32\ntime.dt = 0.01\ntime.t_end = 0.1\ninitial.mode = 1 0.1 0.0\n";

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.model, ModelKind::Darcy2d);
        assert_eq!(c.strip, StripConfig::default());
        assert_eq!(c.time.scheme, Scheme::IfRk2);
        assert_eq!(c.time.snapshot_stride, 10);
        assert_eq!(c.nu, 0.0);
        assert_eq!(c.output_dir, PathBuf::from(DEFAULT_OUTPUT_DIR));
        assert_eq!(
            c.initial,
            InitialData::Modes(vec![InitialMode {
                k1: 1,
                k2: 0,
                amplitude: 0.1,
                phase: 0.0
            }])
        );
    }

    #[test]
    fn errors_name_key_and_line() {
        let err = parse_config(&MINIMAL.replace("darcy2d", "\"darcy4d\"")).unwrap_err();
        assert!(matches!(&err, Error::Config { line: Some(1), key, .. } if key == "model"), "{err}");
        let err = parse_config(&MINIMAL.replace("0.01", "-0.1")).unwrap_err();
        assert!(matches!(&err, Error::Config { line: Some(3), key, .. } if key == "time.dt"), "{err}");
        let err = parse_config(&format!("{MINIMAL}colour = red\n")).unwrap_err();
        assert!(matches!(&err, Error::Config { line: Some(6), key, .. } if key == "colour"));
        let err = parse_config("model = linear2d\n").unwrap_err();
        assert!(matches!(&err, Error::Config { key, .. } if key == "resolution"));
        assert!(parse_config(&format!("{MINIMAL}nu = 0.1\nnu = 0.2\n")).is_err());
        assert!(parse_config(&format!("{MINIMAL}resolution2 = 32\n")).is_err());
    }

    #[test]
    fn config_text_round_trips() {
        let text = "model = darcy3d_finite\nnu = 0.1\nresolution = 16\nresolution2 = 32\ntime.dt = 0.003\ntime.t_end = 0.1\ntime.scheme = if_rk4\ninitial.mode = 1 2 0.1 0.3\noutput_dir = somewhere\n";
        let c = parse_config(text).unwrap();
        assert_eq!(parse_config(&to_config_text(&c)).unwrap(), c);
    }

    #[test]
    fn initial_modes_and_band() {
        let c = parse_config(MINIMAL).unwrap();
        let f = build_initial(&c).unwrap();
        let expected = Field::from_fn(c.grid().unwrap(), |x, _| 0.1 * x.cos());
        assert!(f.max_diff(&expected) < 1e-16);

        let empty = parse_config(&MINIMAL.replace("initial.mode = 1 0.1 0.0\n", "")).unwrap();
        assert_eq!(build_initial(&empty).unwrap().max_abs(), 0.0);

        let out = parse_config(&MINIMAL.replace("initial.mode = 1", "initial.mode = 17")).unwrap();
        assert!(build_initial(&out).is_err());
        let nyquist = parse_config(&MINIMAL.replace("initial.mode = 1", "initial.mode = 16")).unwrap();
        assert!(build_initial(&nyquist).is_err());
        assert!(parse_config(&MINIMAL.replace("initial.mode = 1", "initial.mode = 0")).is_err());
    }

    #[test]
    fn exit_status_codes() {
        assert_eq!(ExitStatus::Success.code(), 0);
        assert_eq!(ExitStatus::of_error(&Error::Truncation { value: 1.0, tolerance: 0.0 }).code(), 3);
        assert_eq!(ExitStatus::of_error(&Error::BlowUp { time: 0.0, reason: String::new() }).code(), 4);
        assert_eq!(ExitStatus::of_error(&Error::Io(String::new())).code(), 5);
        assert_eq!(ExitStatus::of_error(&Error::InvalidInput(String::new())).code(), 2);
    }
}

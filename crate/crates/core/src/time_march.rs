//! Integrating-factor Runge–Kutta stepping of `∂ₜf = ℓ(D)f + N(f)`.
//!
//! The diagonal linear part is propagated exactly by `e^{ℓ dt}`; only the
//! nonlinear remainder is treated explicitly, so the `|k|³` stiffness of the
//! surface-tension term does not restrict `dt`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{zero_mean_spectrum, Model, ModelParams};
use crate::spectral::{Field, PeriodicGrid, Spectrum};

/// Spectral amplitude above which a run is declared blown up.
pub const BLOWUP_THRESHOLD: f64 = 1e8;

/// Per-mode values of the linear symbol `ℓ`, in the grid's spectral layout.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSymbol {
    grid: PeriodicGrid,
    values: Vec<f64>,
}

impl LinearSymbol {
    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `ℓ(k1, k2)`; `None` outside the grid band.
    pub fn at(&self, k1: i64, k2: i64) -> Option<f64> {
        self.grid.mode_index(k1, k2).map(|i| self.values[i])
    }

    pub fn apply(&self, s: &Spectrum) -> Spectrum {
        let coeffs = s.coeffs().iter().zip(&self.values).map(|(c, l)| c * l).collect();
        Spectrum::from_raw(self.grid, coeffs)
    }

    fn propagator(&self, dt: f64) -> Vec<f64> {
        self.values.iter().map(|l| (l * dt).exp()).collect()
    }
}

/// Linear symbol of the model selected by `params` on `grid`.
pub fn linear_symbol(params: &ModelParams, grid: PeriodicGrid) -> Result<LinearSymbol> {
    params.check_grid(grid)?;
    let model = Model::new(*params, grid, Default::default())?;
    Ok(symbol_of(&model))
}

fn symbol_of(model: &Model) -> LinearSymbol {
    let grid = model.grid();
    let values = (0..grid.len())
        .map(|flat| {
            let (k1, k2) = grid.mode_at(flat);
            model.symbol(k1, k2)
        })
        .collect();
    LinearSymbol { grid, values }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Scheme {
    #[default]
    IfRk2,
    IfRk4,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::IfRk2 => "if_rk2",
            Scheme::IfRk4 => "if_rk4",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "if_rk2" => Ok(Scheme::IfRk2),
            "if_rk4" => Ok(Scheme::IfRk4),
            _ => Err(Error::InvalidInput(format!("unknown scheme '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepConfig {
    pub dt: f64,
    pub t_end: f64,
    pub scheme: Scheme,
    pub snapshot_stride: usize,
}

impl StepConfig {
    pub fn new(dt: f64, t_end: f64, scheme: Scheme, snapshot_stride: usize) -> Result<Self> {
        let c = Self {
            dt,
            t_end,
            scheme,
            snapshot_stride,
        };
        c.validate()?;
        Ok(c)
    }

    /// `t_end = 0` is accepted and yields the initial snapshot only.
    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidInput(format!("dt = {} must be > 0", self.dt)));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(Error::InvalidInput(format!("t_end = {} must be >= 0", self.t_end)));
        }
        if self.t_end > 0.0 && self.dt > self.t_end {
            return Err(Error::InvalidInput(format!(
                "dt = {} exceeds t_end = {}",
                self.dt, self.t_end
            )));
        }
        if self.snapshot_stride == 0 {
            return Err(Error::InvalidInput("snapshot stride must be >= 1".into()));
        }
        Ok(())
    }

    /// Number of steps; the last one is shortened to land on `t_end`.
    pub fn steps(&self) -> usize {
        if self.t_end == 0.0 {
            return 0;
        }
        let ratio = self.t_end / self.dt;
        let rounded = ratio.round();
        if (ratio - rounded).abs() <= 1e-9 * ratio.max(1.0) {
            rounded as usize
        } else {
            ratio.ceil() as usize
        }
    }

    fn time_of(&self, step: usize, steps: usize) -> f64 {
        if step == steps {
            self.t_end
        } else {
            step as f64 * self.dt
        }
    }
}

fn combine(terms: &[(&Spectrum, &[f64], f64)]) -> Spectrum {
    let grid = terms[0].0.grid();
    let n = grid.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (s, weights, scale) in terms {
        for ((o, c), w) in out.iter_mut().zip(s.coeffs()).zip(weights.iter()) {
            *o += c * (w * scale);
        }
    }
    Spectrum::from_raw(grid, out)
}

fn check_finite(state: &[Spectrum]) -> std::result::Result<(), String> {
    for s in state {
        if !s.is_finite() {
            return Err("non-finite Fourier coefficient".into());
        }
        let m = s.max_abs();
        if m > BLOWUP_THRESHOLD {
            return Err(format!("spectral amplitude {m:e} above {BLOWUP_THRESHOLD:e}"));
        }
    }
    Ok(())
}

fn nonlinear(model: &Model, state: &[Spectrum], time: f64) -> Result<Vec<Spectrum>> {
    check_finite(state).map_err(|reason| Error::BlowUp { time, reason })?;
    let out = model.nonlinear_spectral(state)?;
    check_finite(&out).map_err(|reason| Error::BlowUp { time, reason })?;
    Ok(out)
}

/// One integrating-factor step on spectral states.
pub fn step_spectral(
    model: &Model,
    symbol: &LinearSymbol,
    state: &[Spectrum],
    dt: f64,
    scheme: Scheme,
    time: f64,
) -> Result<Vec<Spectrum>> {
    let e = symbol.propagator(dt);
    let ones = vec![1.0; e.len()];
    let next = match scheme {
        Scheme::IfRk2 => {
            let k1 = nonlinear(model, state, time)?;
            let u1: Vec<_> = state
                .iter()
                .zip(&k1)
                .map(|(u, k)| combine(&[(u, &e, 1.0), (k, &e, dt)]))
                .collect();
            let k2 = nonlinear(model, &u1, time + dt)?;
            state
                .iter()
                .zip(k1.iter().zip(&k2))
                .map(|(u, (a, b))| combine(&[(u, &e, 1.0), (a, &e, 0.5 * dt), (b, &ones, 0.5 * dt)]))
                .collect::<Vec<_>>()
        }
        Scheme::IfRk4 => {
            let e2 = symbol.propagator(0.5 * dt);
            let k1 = nonlinear(model, state, time)?;
            let u2: Vec<_> = state
                .iter()
                .zip(&k1)
                .map(|(u, k)| combine(&[(u, &e2, 1.0), (k, &e2, 0.5 * dt)]))
                .collect();
            let k2 = nonlinear(model, &u2, time + 0.5 * dt)?;
            let u3: Vec<_> = state
                .iter()
                .zip(&k2)
                .map(|(u, k)| combine(&[(u, &e2, 1.0), (k, &ones, 0.5 * dt)]))
                .collect();
            let k3 = nonlinear(model, &u3, time + 0.5 * dt)?;
            let u4: Vec<_> = state
                .iter()
                .zip(&k3)
                .map(|(u, k)| combine(&[(u, &e, 1.0), (k, &e2, dt)]))
                .collect();
            let k4 = nonlinear(model, &u4, time + dt)?;
            (0..state.len())
                .map(|c| {
                    combine(&[
                        (&state[c], &e, 1.0),
                        (&k1[c], &e, dt / 6.0),
                        (&k2[c], &e2, dt / 3.0),
                        (&k3[c], &e2, dt / 3.0),
                        (&k4[c], &ones, dt / 6.0),
                    ])
                })
                .collect()
        }
    };
    check_finite(&next).map_err(|reason| Error::BlowUp {
        time: time + dt,
        reason,
    })?;
    Ok(next)
}

/// One step on nodal states.
pub fn step(model: &Model, state: &[Field], dt: f64, scheme: Scheme) -> Result<Vec<Field>> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidInput(format!("dt = {dt} must be > 0")));
    }
    let spectra = model.spectral_state(state)?;
    let symbol = symbol_of(model);
    Ok(step_spectral(model, &symbol, &spectra, dt, scheme, 0.0)?
        .iter()
        .map(Spectrum::field)
        .collect())
}

/// Scalar diagnostics of the observed elevation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub mean: f64,
    pub l2: f64,
    pub max_slope: f64,
}

impl Diagnostics {
    pub fn of(f: &Field) -> Self {
        let s = f.spectrum();
        let grid = f.grid();
        let mut slope2 = vec![0.0; grid.len()];
        for axis in 0..grid.dim() {
            let d = s.derivative(axis).field();
            for (acc, v) in slope2.iter_mut().zip(d.values()) {
                *acc += v * v;
            }
        }
        Self {
            mean: f.mean(),
            l2: f.l2_norm(),
            max_slope: slope2.iter().fold(0.0f64, |m, v| m.max(v.sqrt())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub step: usize,
    pub time: f64,
    /// Evolved fields (`[h⁽⁰⁾, h⁽¹⁾]` for the hierarchy, else `[f]`).
    pub state: Vec<Field>,
    /// The elevation being reported: `f`, or `σh⁽⁰⁾ + σ²h⁽¹⁾` for the hierarchy.
    pub observable: Field,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Completed,
    BlowUp { time: f64, reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
    pub outcome: Outcome,
}

impl Trajectory {
    pub fn last(&self) -> &Snapshot {
        self.snapshots.last().expect("trajectory holds the initial snapshot")
    }

    /// `Err(BlowUp)` if the run stopped early.
    pub fn status(&self) -> Result<()> {
        match &self.outcome {
            Outcome::Completed => Ok(()),
            Outcome::BlowUp { time, reason } => Err(Error::BlowUp {
                time: *time,
                reason: reason.clone(),
            }),
        }
    }
}

fn observable(model: &Model, state: &[Field]) -> Field {
    if state.len() == 2 {
        let sigma = model.params().sigma;
        &(&state[0] * sigma) + &(&state[1] * (sigma * sigma))
    } else {
        state[0].clone()
    }
}

fn snapshot(model: &Model, step: usize, time: f64, spectra: &[Spectrum]) -> Snapshot {
    let state: Vec<Field> = spectra.iter().map(Spectrum::field).collect();
    let observable = observable(model, &state);
    let diagnostics = Diagnostics::of(&observable);
    Snapshot {
        step,
        time,
        state,
        observable,
        diagnostics,
    }
}

/// Advances `initial` to `t_end`, recording a snapshot at step 0, every
/// `snapshot_stride` steps and at the final step.
///
/// A blow-up ends the run early; the trajectory up to the last good step is
/// returned with [`Outcome::BlowUp`]. Other failures are returned as errors.
pub fn integrate(
    model: &Model,
    initial: &[Field],
    config: &StepConfig,
    mut observer: impl FnMut(&Snapshot),
) -> Result<Trajectory> {
    config.validate()?;
    let mut state = model.spectral_state(initial)?;
    let symbol = symbol_of(model);
    let steps = config.steps();
    let mut snapshots = Vec::new();
    let mut record = |snap: Snapshot, list: &mut Vec<Snapshot>| {
        observer(&snap);
        list.push(snap);
    };
    record(snapshot(model, 0, 0.0, &state), &mut snapshots);
    let mut outcome = Outcome::Completed;
    for n in 1..=steps {
        let t0 = config.time_of(n - 1, steps);
        let t1 = config.time_of(n, steps);
        match step_spectral(model, &symbol, &state, t1 - t0, config.scheme, t0) {
            Ok(next) => state = next,
            Err(Error::BlowUp { time, reason }) => {
                let last_step = n - 1;
                if snapshots.last().map(|s| s.step) != Some(last_step) {
                    record(snapshot(model, last_step, t0, &state), &mut snapshots);
                }
                outcome = Outcome::BlowUp { time, reason };
                break;
            }
            Err(e) => return Err(e),
        }
        if n % config.snapshot_stride == 0 || n == steps {
            record(snapshot(model, n, t1, &state), &mut snapshots);
        }
    }
    Ok(Trajectory { snapshots, outcome })
}

/// Initial state of a model from one elevation field (`h⁽¹⁾ = 0` for the hierarchy).
pub fn initial_state(model: &Model, f0: &Field) -> Result<Vec<Field>> {
    let f0 = zero_mean_spectrum(f0)?.field();
    Ok(match model.components() {
        2 => vec![f0.clone(), Field::zeros(f0.grid())],
        _ => vec![f0],
    })
}

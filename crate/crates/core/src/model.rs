//! Right-hand sides of the interface evolution models.
//!
//! Each model is split as `∂ₜf = ℓ(D) f + N(f)`, with `ℓ` the diagonal linear
//! symbol used by the time stepper and `N` the quadratic (or Forchheimer)
//! remainder. The `rhs_*` functions return the full right-hand side.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{
    commutator_calderon_spectra, commutator_hilbert_spectra, dn0_symbol, product_spectra, Field,
    PeriodicGrid, Spectrum,
};
use crate::strip::{
    boundary_flux_g, boundary_flux_g_closed, compute_b, forchheimer_source, harmonic_extension,
    neumann_data, ROUGH_SOURCE_COMPATIBILITY_TOL, solve_poisson_strip, solve_poisson_strip_with_tolerance, StripConfig, StripField, StripGrid,
};

/// Relative size of a mean that is silently projected out.
pub const MEAN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Depth {
    Finite,
    Infinite,
}

/// Equivalent ways of writing the quadratic Darcy model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DarcyForm {
    /// `Lf + ∂₁([f,H] Lf)`.
    Commutator,
    /// `Lf + ν(Λ(fΛ³f) − ∂₁(f∂₁³f)) + ∂₁(f∂₁f) + Λ(fΛf)`.
    Expanded,
    /// `Lf + ν([Λ,f]Λ³f − ∂₁f∂₁³f) + (∂₁f)² + [Λ,f]Λf`.
    CommutatorLambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Linear2d,
    Darcy2d,
    Forchheimer2d,
    Darcy3d(Depth),
    Expansion2d,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::Linear2d,
        ModelKind::Darcy2d,
        ModelKind::Forchheimer2d,
        ModelKind::Darcy3d(Depth::Finite),
        ModelKind::Darcy3d(Depth::Infinite),
        ModelKind::Expansion2d,
    ];

    /// Dimension of the periodic interface grid (1 for the 2D flow models).
    pub fn interface_dim(self) -> usize {
        match self {
            ModelKind::Darcy3d(_) => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Linear2d => "linear2d",
            ModelKind::Darcy2d => "darcy2d",
            ModelKind::Forchheimer2d => "forchheimer2d",
            ModelKind::Darcy3d(Depth::Finite) => "darcy3d_finite",
            ModelKind::Darcy3d(Depth::Infinite) => "darcy3d_infinite",
            ModelKind::Expansion2d => "expansion2d",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown model '{s}'")))
    }
}

/// Dimensionless parameters and model selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub kind: ModelKind,
    /// Bond number.
    pub nu: f64,
    /// Forchheimer coefficient.
    pub lambda: f64,
    /// Steepness; only the expansion hierarchy uses it.
    pub sigma: f64,
}

impl ModelParams {
    pub fn new(kind: ModelKind, nu: f64, lambda: f64, sigma: f64) -> Result<Self> {
        let p = Self {
            kind,
            nu,
            lambda,
            sigma,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu.is_finite() && self.nu >= 0.0) {
            return Err(Error::InvalidInput(format!("nu = {} must be >= 0", self.nu)));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(Error::InvalidInput(format!("lambda = {} must be >= 0", self.lambda)));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::InvalidInput(format!("sigma = {} must be > 0", self.sigma)));
        }
        Ok(())
    }

    pub fn check_grid(&self, grid: PeriodicGrid) -> Result<()> {
        if grid.dim() != self.kind.interface_dim() {
            return Err(Error::Dimension(format!(
                "model {} needs a {}D grid, got {}D",
                self.kind,
                self.kind.interface_dim(),
                grid.dim()
            )));
        }
        Ok(())
    }
}

/// Order-0 and order-1 terms of the small-steepness expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionState {
    pub h0: Field,
    pub h1: Field,
}

impl ExpansionState {
    pub fn new(h0: Field, h1: Field) -> Result<Self> {
        h0.check_same_grid(&h1)?;
        Ok(Self { h0, h1 })
    }

    /// Starts the hierarchy from `h0` with `h1 = 0`.
    pub fn from_initial(h0: Field) -> Self {
        let h1 = Field::zeros(h0.grid());
        Self { h0, h1 }
    }

    /// Renormalised elevation `σh⁽⁰⁾ + σ²h⁽¹⁾`.
    pub fn combined(&self, sigma: f64) -> Field {
        &(&self.h0 * sigma) + &(&self.h1 * (sigma * sigma))
    }
}

/// Spectrum of `f` with the zero mode removed; rejects a mean above tolerance.
pub fn zero_mean_spectrum(f: &Field) -> Result<Spectrum> {
    if let Some(v) = f.values().iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite nodal value {v}")));
    }
    let s = f.spectrum();
    let mean = s.coeffs()[0].re;
    let scale = f.max_abs();
    if mean.abs() > MEAN_TOLERANCE * scale {
        return Err(Error::InvalidInput(format!(
            "field mean {mean:e} exceeds {MEAN_TOLERANCE:e} of its scale {scale:e}"
        )));
    }
    Ok(s.without_mean())
}

fn require_dim(f: &Field, dim: usize, what: &str) -> Result<()> {
    if f.grid().dim() != dim {
        return Err(Error::Dimension(format!("{what} needs a {dim}D grid")));
    }
    Ok(())
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// `−(|k| + ν|k|³)` applied to a spectrum.
fn linear2d_spectral(f: &Spectrum, nu: f64) -> Spectrum {
    crate::spectral::apply_multiplier(f, |k, _| {
        let a = k.unsigned_abs() as f64;
        real(-(a + nu * a * a * a))
    })
}

/// Quadratic part of the Darcy model in the chosen form.
pub(crate) fn darcy2d_quadratic(f: &Spectrum, nu: f64, form: DarcyForm) -> Spectrum {
    match form {
        DarcyForm::Commutator => {
            let lf = linear2d_spectral(f, nu);
            commutator_hilbert_spectra(f, &lf).derivative(0)
        }
        DarcyForm::Expanded => {
            let l3 = f.calderon(3.0);
            let d3 = f.derivative_n(0, 3);
            let surface = &product_spectra(f, &l3).calderon(1.0) - &product_spectra(f, &d3).derivative(0);
            let gravity =
                &product_spectra(f, &f.derivative(0)).derivative(0) + &product_spectra(f, &f.calderon(1.0)).calderon(1.0);
            &surface.scale(nu) + &gravity
        }
        DarcyForm::CommutatorLambda => {
            let d1 = f.derivative(0);
            let surface =
                &commutator_calderon_spectra(f, &f.calderon(3.0)) - &product_spectra(&d1, &f.derivative_n(0, 3));
            let gravity = &product_spectra(&d1, &d1) + &commutator_calderon_spectra(f, &f.calderon(1.0));
            &surface.scale(nu) + &gravity
        }
    }
}

/// `G` of the three-dimensional model: `G₀` at finite depth, `Λ` at infinite depth.
fn apply_g(f: &Spectrum, depth: Depth) -> Spectrum {
    match depth {
        Depth::Finite => f.dn0(),
        Depth::Infinite => f.calderon(1.0),
    }
}

fn symbol_g(k1: i64, k2: i64, depth: Depth) -> f64 {
    match depth {
        Depth::Finite => dn0_symbol(k1, k2),
        Depth::Infinite => ((k1 * k1 + k2 * k2) as f64).sqrt(),
    }
}

fn linear3d_spectral(f: &Spectrum, nu: f64, depth: Depth) -> Spectrum {
    crate::spectral::apply_multiplier(f, |k1, k2| {
        let r2 = (k1 * k1 + k2 * k2) as f64;
        real(-symbol_g(k1, k2, depth) * (1.0 + nu * r2))
    })
}

fn divergence_of_product(f: &Spectrum, g: &Spectrum) -> Spectrum {
    let x = product_spectra(f, &g.derivative(0)).derivative(0);
    let y = product_spectra(f, &g.derivative(1)).derivative(1);
    &x + &y
}

/// Quadratic part of the three-dimensional model.
pub(crate) fn darcy3d_quadratic(f: &Spectrum, nu: f64, depth: Depth) -> Spectrum {
    let lap = f.laplacian();
    let surface = &apply_g(&product_spectra(f, &apply_g(&lap, depth)), depth) + &divergence_of_product(f, &lap);
    let gravity = &apply_g(&product_spectra(f, &apply_g(f, depth)), depth) + &divergence_of_product(f, f);
    &gravity - &surface.scale(nu)
}

/// `−νΛ³h − Λh`.
pub fn rhs_linear2d(h: &Field, nu: f64) -> Result<Field> {
    require_dim(h, 1, "rhs_linear2d")?;
    let s = zero_mean_spectrum(h)?;
    Ok(linear2d_spectral(&s, nu).field())
}

pub fn rhs_darcy2d(f: &Field, nu: f64, form: DarcyForm) -> Result<Field> {
    require_dim(f, 1, "rhs_darcy2d")?;
    let s = zero_mean_spectrum(f)?;
    Ok((&linear2d_spectral(&s, nu) + &darcy2d_quadratic(&s, nu, form)).field())
}

/// Quadratic part of [`rhs_darcy2d`] alone.
pub fn darcy2d_nonlinear(f: &Field, nu: f64, form: DarcyForm) -> Result<Field> {
    require_dim(f, 1, "darcy2d_nonlinear")?;
    let s = zero_mean_spectrum(f)?;
    Ok(darcy2d_quadratic(&s, nu, form).field())
}

/// Right-hand sides `(∂ₜh⁽⁰⁾, ∂ₜh⁽¹⁾)` of the order-0/order-1 hierarchy.
pub fn rhs_expansion(state: &ExpansionState, nu: f64) -> Result<(Field, Field)> {
    require_dim(&state.h0, 1, "rhs_expansion")?;
    let s0 = zero_mean_spectrum(&state.h0)?;
    let s1 = zero_mean_spectrum(&state.h1)?;
    let dh0 = linear2d_spectral(&s0, nu);
    let dh1 = &linear2d_spectral(&s1, nu) + &darcy2d_quadratic(&s0, nu, DarcyForm::Commutator);
    Ok((dh0.field(), dh1.field()))
}

fn check_strip(f: &Field, strip: &StripGrid) -> Result<()> {
    if strip.horizontal() != f.grid() {
        return Err(Error::GridMismatch(format!(
            "strip built on {:?}, field on {:?}",
            strip.horizontal().shape(),
            f.grid().shape()
        )));
    }
    Ok(())
}

/// Forchheimer correction `∂₁Φ(·,0)` through the closed boundary formula.
///
/// Per mode, the trace of the strip solution is `(ĝ − 2B̂)/|k|`, so
/// `∂₁Φ(·,0) = −H(g_λ − 2B_λ)`.
pub(crate) fn forchheimer_closed_correction(f: &Field, nu: f64, lambda: f64, strip: &Arc<StripGrid>) -> Result<Spectrum> {
    check_strip(f, strip)?;
    if lambda == 0.0 {
        return Ok(Spectrum::zeros(f.grid()));
    }
    let upsilon = harmonic_extension(&neumann_data(f, nu)?, strip)?;
    let b = forchheimer_source(&upsilon, lambda)?;
    let big_b = compute_b(&b)?;
    let g = boundary_flux_g_closed(f, nu, lambda)?;
    let combined = &g.spectrum() - &big_b.spectrum().scale(2.0);
    Ok(combined.hilbert().scale(-1.0).dealiased())
}

/// The same correction from two elliptic solves on the strip.
pub(crate) fn forchheimer_system_correction(f: &Field, nu: f64, lambda: f64, strip: &Arc<StripGrid>) -> Result<Spectrum> {
    check_strip(f, strip)?;
    let q = neumann_data(f, nu)?;
    let upsilon = solve_poisson_strip(&StripField::zeros(Arc::clone(strip)), &q)?;
    let b = forchheimer_source(&upsilon, lambda)?;
    let g = boundary_flux_g(&upsilon, lambda)?;
    // The zero mode of Φ does not enter ∂₁Φ; compatibility is only checked
    // to the accuracy the non-smooth source allows.
    let phi = solve_poisson_strip_with_tolerance(&b, &g, ROUGH_SOURCE_COMPATIBILITY_TOL)?;
    Ok(phi.trace().spectrum().derivative(0).dealiased())
}

/// Darcy right-hand side plus the Forchheimer boundary correction, closed-form path.
pub fn rhs_forchheimer_closed(f: &Field, nu: f64, lambda: f64, strip: &Arc<StripGrid>) -> Result<Field> {
    require_dim(f, 1, "rhs_forchheimer_closed")?;
    let s = zero_mean_spectrum(f)?;
    let f = s.field();
    let darcy = &linear2d_spectral(&s, nu) + &darcy2d_quadratic(&s, nu, DarcyForm::Commutator);
    Ok((&darcy + &forchheimer_closed_correction(&f, nu, lambda, strip)?).field())
}

/// Darcy right-hand side plus `∂₁Φ(·,0)` from the strip system; test oracle.
pub fn rhs_forchheimer_system(f: &Field, nu: f64, lambda: f64, strip: &Arc<StripGrid>) -> Result<Field> {
    require_dim(f, 1, "rhs_forchheimer_system")?;
    let s = zero_mean_spectrum(f)?;
    let f = s.field();
    let darcy = &linear2d_spectral(&s, nu) + &darcy2d_quadratic(&s, nu, DarcyForm::Commutator);
    Ok((&darcy + &forchheimer_system_correction(&f, nu, lambda, strip)?).field())
}

/// `νGΔf − Gf − ν(G(f·GΔf) + ∇·(f∇Δf)) + G(f·Gf) + ∇·(f∇f)`.
pub fn rhs_darcy3d(f: &Field, nu: f64, depth: Depth) -> Result<Field> {
    require_dim(f, 2, "rhs_darcy3d")?;
    let s = zero_mean_spectrum(f)?;
    Ok((&linear3d_spectral(&s, nu, depth) + &darcy3d_quadratic(&s, nu, depth)).field())
}

/// A model bound to a grid: what the time stepper advances.
#[derive(Debug, Clone)]
pub struct Model {
    params: ModelParams,
    grid: PeriodicGrid,
    strip: Option<Arc<StripGrid>>,
}

impl Model {
    pub fn new(params: ModelParams, grid: PeriodicGrid, strip: StripConfig) -> Result<Self> {
        params.validate()?;
        params.check_grid(grid)?;
        let strip = match params.kind {
            ModelKind::Forchheimer2d => Some(Arc::new(StripGrid::new(grid, strip)?)),
            _ => None,
        };
        Ok(Self { params, grid, strip })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    pub fn strip(&self) -> Option<&Arc<StripGrid>> {
        self.strip.as_ref()
    }

    /// Number of evolving fields: two for the expansion hierarchy, else one.
    pub fn components(&self) -> usize {
        match self.params.kind {
            ModelKind::Expansion2d => 2,
            _ => 1,
        }
    }

    /// Diagonal linear symbol `ℓ(k1, k2)`.
    pub fn symbol(&self, k1: i64, k2: i64) -> f64 {
        let nu = self.params.nu;
        match self.params.kind {
            ModelKind::Darcy3d(depth) => {
                let r2 = (k1 * k1 + k2 * k2) as f64;
                -symbol_g(k1, k2, depth) * (1.0 + nu * r2)
            }
            _ => {
                let a = k1.unsigned_abs() as f64;
                -(a + nu * a * a * a)
            }
        }
    }

    /// Nonlinear remainder `N` on spectral states (zero modes are left untouched).
    pub fn nonlinear_spectral(&self, state: &[Spectrum]) -> Result<Vec<Spectrum>> {
        let nu = self.params.nu;
        let out = match self.params.kind {
            ModelKind::Linear2d => vec![Spectrum::zeros(self.grid)],
            ModelKind::Darcy2d => vec![darcy2d_quadratic(&state[0], nu, DarcyForm::Commutator)],
            ModelKind::Forchheimer2d => {
                let strip = self.strip.as_ref().expect("strip grid for the Forchheimer model");
                let quad = darcy2d_quadratic(&state[0], nu, DarcyForm::Commutator);
                let f = state[0].field();
                let correction = forchheimer_closed_correction(&f, nu, self.params.lambda, strip)?;
                vec![&quad + &correction]
            }
            ModelKind::Darcy3d(depth) => vec![darcy3d_quadratic(&state[0], nu, depth)],
            ModelKind::Expansion2d => vec![
                Spectrum::zeros(self.grid),
                darcy2d_quadratic(&state[0], nu, DarcyForm::Commutator),
            ],
        };
        Ok(out)
    }

    /// Nonlinear remainder on nodal states.
    pub fn nonlinear(&self, state: &[Field]) -> Result<Vec<Field>> {
        let spectra = self.spectral_state(state)?;
        Ok(self
            .nonlinear_spectral(&spectra)?
            .iter()
            .map(Spectrum::field)
            .collect())
    }

    /// Full right-hand side, dispatched to the matching `rhs_*` evaluator.
    pub fn rhs(&self, state: &[Field]) -> Result<Vec<Field>> {
        self.check_state(state)?;
        let p = &self.params;
        Ok(match p.kind {
            ModelKind::Linear2d => vec![rhs_linear2d(&state[0], p.nu)?],
            ModelKind::Darcy2d => vec![rhs_darcy2d(&state[0], p.nu, DarcyForm::Commutator)?],
            ModelKind::Forchheimer2d => {
                let strip = self.strip.as_ref().expect("strip grid for the Forchheimer model");
                vec![rhs_forchheimer_closed(&state[0], p.nu, p.lambda, strip)?]
            }
            ModelKind::Darcy3d(depth) => vec![rhs_darcy3d(&state[0], p.nu, depth)?],
            ModelKind::Expansion2d => {
                let (a, b) = rhs_expansion(&ExpansionState::new(state[0].clone(), state[1].clone())?, p.nu)?;
                vec![a, b]
            }
        })
    }

    fn check_state(&self, state: &[Field]) -> Result<()> {
        if state.len() != self.components() {
            return Err(Error::InvalidInput(format!(
                "model {} evolves {} fields, got {}",
                self.params.kind,
                self.components(),
                state.len()
            )));
        }
        for f in state {
            if f.grid() != self.grid {
                return Err(Error::GridMismatch(format!(
                    "state on {:?}, model on {:?}",
                    f.grid().shape(),
                    self.grid.shape()
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn spectral_state(&self, state: &[Field]) -> Result<Vec<Spectrum>> {
        self.check_state(state)?;
        state.iter().map(zero_mean_spectrum).collect()
    }
}

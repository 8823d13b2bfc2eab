use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;

use super::grid::StripGrid;
use crate::error::{Error, Result};
use crate::spectral::{forward_raw, Field};

/// Boundary data on the top of the strip, `x₂ = 0`.
pub type BoundaryField = Field;

/// Values of a function on the strip at (vertical node × horizontal point).
///
/// Producers that know the vertical structure analytically (harmonic
/// extension, the Poisson solver) also attach `∂₂`, `∂₂²` and the trace at
/// `x₂ = 0`; otherwise these are recovered from the panel polynomials.
#[derive(Debug, Clone)]
pub struct StripField {
    grid: Arc<StripGrid>,
    values: Array2<f64>,
    dy: Option<Array2<f64>>,
    dyy: Option<Array2<f64>>,
    top: Option<(Vec<f64>, Vec<f64>)>,
    harmonic: bool,
}

impl StripField {
    pub fn new(grid: Arc<StripGrid>, values: Array2<f64>) -> Result<Self> {
        check_shape(&grid, &values)?;
        Ok(Self {
            grid,
            values,
            dy: None,
            dyy: None,
            top: None,
            harmonic: false,
        })
    }

    pub fn zeros(grid: Arc<StripGrid>) -> Self {
        let shape = (grid.levels(), grid.horizontal().len());
        Self {
            grid,
            values: Array2::zeros(shape),
            dy: None,
            dyy: None,
            top: None,
            harmonic: false,
        }
    }

    /// Samples `func(x1, x2)` on the strip nodes.
    pub fn from_fn(grid: Arc<StripGrid>, func: impl Fn(f64, f64) -> f64) -> Self {
        let xs = grid.horizontal().points(0);
        let ys = grid.nodes().to_vec();
        let values = Array2::from_shape_fn((ys.len(), xs.len()), |(i, j)| func(xs[j], ys[i]));
        Self {
            grid,
            values,
            dy: None,
            dyy: None,
            top: None,
            harmonic: false,
        }
    }

    /// Attaches exact vertical derivatives.
    pub fn with_vertical_derivatives(mut self, dy: Array2<f64>, dyy: Array2<f64>) -> Result<Self> {
        check_shape(&self.grid, &dy)?;
        check_shape(&self.grid, &dyy)?;
        self.dy = Some(dy);
        self.dyy = Some(dyy);
        Ok(self)
    }

    /// Attaches the exact trace and vertical derivative at `x₂ = 0`.
    pub fn with_top(mut self, value: Vec<f64>, dy: Vec<f64>) -> Result<Self> {
        let n = self.grid.horizontal().len();
        if value.len() != n || dy.len() != n {
            return Err(Error::InvalidInput("top trace length does not match the grid".into()));
        }
        self.top = Some((value, dy));
        Ok(self)
    }

    pub(crate) fn assemble(
        grid: Arc<StripGrid>,
        values: Array2<f64>,
        dy: Array2<f64>,
        dyy: Array2<f64>,
        top: (Vec<f64>, Vec<f64>),
        harmonic: bool,
    ) -> Self {
        Self {
            grid,
            values,
            dy: Some(dy),
            dyy: Some(dyy),
            top: Some(top),
            harmonic,
        }
    }

    pub fn grid(&self) -> &Arc<StripGrid> {
        &self.grid
    }

    /// Nodal values, shape `(levels, n)`.
    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn is_harmonic(&self) -> bool {
        self.harmonic
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `∂₂` at the nodes: exact when attached, else by panel differentiation.
    pub fn dy(&self) -> Array2<f64> {
        match &self.dy {
            Some(d) => d.clone(),
            None => self.differentiate_columns(&self.values),
        }
    }

    /// `∂₂²` at the nodes.
    pub fn dyy(&self) -> Array2<f64> {
        match &self.dyy {
            Some(d) => d.clone(),
            None => self.differentiate_columns(&self.dy()),
        }
    }

    fn differentiate_columns(&self, data: &Array2<f64>) -> Array2<f64> {
        let mut out = Array2::zeros(data.raw_dim());
        for (j, column) in data.columns().into_iter().enumerate() {
            let d = self.grid.differentiate(&column.to_vec());
            for (i, v) in d.into_iter().enumerate() {
                out[[i, j]] = v;
            }
        }
        out
    }

    /// Trace at `x₂ = 0`.
    pub fn trace(&self) -> BoundaryField {
        let grid = self.grid.horizontal();
        match &self.top {
            Some((value, _)) => Field::from_raw(grid, value.clone()),
            None => Field::from_raw(grid, self.extrapolate(&self.values)),
        }
    }

    /// `∂₂` at `x₂ = 0`.
    pub fn trace_dy(&self) -> BoundaryField {
        let grid = self.grid.horizontal();
        match &self.top {
            Some((_, dy)) => Field::from_raw(grid, dy.clone()),
            None => Field::from_raw(grid, self.extrapolate(&self.dy())),
        }
    }

    fn extrapolate(&self, data: &Array2<f64>) -> Vec<f64> {
        data.columns()
            .into_iter()
            .map(|c| self.grid.top_value(&c.to_vec()))
            .collect()
    }

    /// Horizontal Fourier coefficients of each level, shape `(levels, n)`.
    pub(crate) fn level_spectra(&self) -> Array2<Complex64> {
        spectra_of(&self.grid, &self.values)
    }
}

pub(crate) fn spectra_of(grid: &StripGrid, data: &Array2<f64>) -> Array2<Complex64> {
    let h = grid.horizontal();
    let mut out = Array2::zeros(data.raw_dim());
    for (i, row) in data.rows().into_iter().enumerate() {
        let coeffs = forward_raw(h, &row.to_vec());
        for (j, c) in coeffs.into_iter().enumerate() {
            out[[i, j]] = c;
        }
    }
    out
}

fn check_shape(grid: &StripGrid, data: &Array2<f64>) -> Result<()> {
    let expected = (grid.levels(), grid.horizontal().len());
    if data.dim() != expected {
        return Err(Error::InvalidInput(format!(
            "strip data of shape {:?}, expected {:?}",
            data.dim(),
            expected
        )));
    }
    if data.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite strip value".into()));
    }
    Ok(())
}

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::grid::PeriodicGrid;
use crate::error::{Error, Result};

/// Real nodal samples on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: PeriodicGrid,
    values: Vec<f64>,
}

impl Field {
    pub fn new(grid: PeriodicGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "{} nodal values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite nodal value {} at index {pos}",
                values[pos]
            )));
        }
        Ok(Self { grid, values })
    }

    pub(crate) fn from_raw(grid: PeriodicGrid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn zeros(grid: PeriodicGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    /// Samples `func(x1, x2)` at the collocation points (`x2 = 0` on 1D grids).
    pub fn from_fn(grid: PeriodicGrid, func: impl Fn(f64, f64) -> f64) -> Self {
        let x1 = grid.points(0);
        let x2 = if grid.dim() == 2 {
            grid.points(1)
        } else {
            vec![0.0]
        };
        let values = x1
            .iter()
            .flat_map(|&a| x2.iter().map(move |&b| (a, b)))
            .map(|(a, b)| func(a, b))
            .collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `(∫ f² dx)^{1/2}` over the torus, by the trapezoidal rule.
    pub fn l2_norm(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|v| v * v).sum();
        (sum * self.grid.cell_volume()).sqrt()
    }

    pub fn map(&self, func: impl Fn(f64) -> f64) -> Field {
        Field::from_raw(self.grid, self.values.iter().map(|&v| func(v)).collect())
    }

    /// Pointwise combination; panics on grid mismatch (use [`Field::check_same_grid`] first).
    pub fn zip_map(&self, other: &Field, func: impl Fn(f64, f64) -> f64) -> Field {
        assert_eq!(self.grid, other.grid, "pointwise op on mismatched grids");
        Field::from_raw(
            self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| func(a, b))
                .collect(),
        )
    }

    pub fn check_same_grid(&self, other: &Field) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!(
                "{:?} vs {:?}",
                self.grid.shape(),
                other.grid.shape()
            )));
        }
        Ok(())
    }

    /// Sup-norm distance to another field on the same grid.
    pub fn max_diff(&self, other: &Field) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl Add for &Field {
    type Output = Field;
    fn add(self, rhs: &Field) -> Field {
        self.zip_map(rhs, |a, b| a + b)
    }
}

impl Sub for &Field {
    type Output = Field;
    fn sub(self, rhs: &Field) -> Field {
        self.zip_map(rhs, |a, b| a - b)
    }
}

impl Mul<f64> for &Field {
    type Output = Field;
    fn mul(self, rhs: f64) -> Field {
        self.map(|v| v * rhs)
    }
}

impl Neg for &Field {
    type Output = Field;
    fn neg(self) -> Field {
        self.map(|v| -v)
    }
}

/// Fourier coefficients `f̂(k) = (1/2π)^d ∫ f e^{-ik·x} dx` in the grid's spectral layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: PeriodicGrid,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(grid: PeriodicGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "{} coefficients for a grid of {} modes",
                coeffs.len(),
                grid.len()
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite Fourier coefficient".into()));
        }
        Ok(Self { grid, coeffs })
    }

    pub(crate) fn from_raw(grid: PeriodicGrid, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), grid.len());
        Self { grid, coeffs }
    }

    pub fn zeros(grid: PeriodicGrid) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of mode `(k1, k2)`; zero for modes the grid cannot represent.
    pub fn coeff(&self, k1: i64, k2: i64) -> Complex64 {
        self.grid
            .mode_index(k1, k2)
            .map_or(Complex64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn set_coeff(&mut self, k1: i64, k2: i64, value: Complex64) -> Result<()> {
        let i = self.grid.mode_index(k1, k2).ok_or_else(|| {
            Error::InvalidInput(format!("mode ({k1}, {k2}) outside the grid band"))
        })?;
        self.coeffs[i] = value;
        Ok(())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest violation of `f̂(-k) = conj(f̂(k))` over the non-Nyquist modes.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (flat, c) in self.coeffs.iter().enumerate() {
            if self.grid.is_nyquist(flat) {
                continue;
            }
            let (k1, k2) = self.grid.mode_at(flat);
            let mirror = self.coeff(-k1, -k2);
            worst = worst.max((c - mirror.conj()).norm());
        }
        worst
    }

    pub fn zip_map(&self, other: &Spectrum, func: impl Fn(Complex64, Complex64) -> Complex64) -> Spectrum {
        assert_eq!(self.grid, other.grid, "spectral op on mismatched grids");
        Spectrum::from_raw(
            self.grid,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| func(a, b))
                .collect(),
        )
    }

    pub fn scale(&self, factor: f64) -> Spectrum {
        Spectrum::from_raw(self.grid, self.coeffs.iter().map(|c| c * factor).collect())
    }
}

impl Add for &Spectrum {
    type Output = Spectrum;
    fn add(self, rhs: &Spectrum) -> Spectrum {
        self.zip_map(rhs, |a, b| a + b)
    }
}

impl Sub for &Spectrum {
    type Output = Spectrum;
    fn sub(self, rhs: &Spectrum) -> Spectrum {
        self.zip_map(rhs, |a, b| a - b)
    }
}

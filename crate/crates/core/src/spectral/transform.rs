use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use super::field::{Field, Spectrum};
use super::grid::PeriodicGrid;
use crate::error::{Error, Result};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, direction: FftDirection) -> std::sync::Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(n, direction))
}

/// In-place FFT along one axis of a row-major `n1 × n2` array.
fn fft_axis(data: &mut [Complex64], grid: PeriodicGrid, axis: usize, direction: FftDirection) {
    let [n1, n2] = grid.shape();
    if grid.n(axis) == 1 {
        return;
    }
    if axis == 1 {
        let fft = plan(n2, direction);
        fft.process(data);
    } else {
        let fft = plan(n1, direction);
        if n2 == 1 {
            fft.process(data);
            return;
        }
        let mut column = vec![Complex64::new(0.0, 0.0); n1];
        for i2 in 0..n2 {
            for i1 in 0..n1 {
                column[i1] = data[i1 * n2 + i2];
            }
            fft.process(&mut column);
            for i1 in 0..n1 {
                data[i1 * n2 + i2] = column[i1];
            }
        }
    }
}

/// Sign `(-1)^{k1+k2}` that shifts the DFT origin from 0 to the first node at -π.
fn origin_sign(grid: PeriodicGrid, flat: usize) -> f64 {
    let (k1, k2) = grid.mode_at(flat);
    if (k1 + k2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

pub(crate) fn forward_raw(grid: PeriodicGrid, values: &[f64]) -> Vec<Complex64> {
    let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    for axis in 0..grid.dim() {
        fft_axis(&mut data, grid, axis, FftDirection::Forward);
    }
    let norm = 1.0 / grid.len() as f64;
    for (flat, c) in data.iter_mut().enumerate() {
        if grid.is_nyquist(flat) {
            *c = Complex64::new(0.0, 0.0);
        } else {
            *c *= norm * origin_sign(grid, flat);
        }
    }
    data
}

pub(crate) fn inverse_raw(grid: PeriodicGrid, coeffs: &[Complex64]) -> Vec<f64> {
    let mut data: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(flat, &c)| c * origin_sign(grid, flat))
        .collect();
    for axis in 0..grid.dim() {
        fft_axis(&mut data, grid, axis, FftDirection::Inverse);
    }
    data.into_iter().map(|c| c.re).collect()
}

/// Fourier coefficients of a real field; the Nyquist modes are zeroed.
pub fn transform(field: &Field) -> Result<Spectrum> {
    if field.values().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite nodal value".into()));
    }
    Ok(Spectrum::from_raw(
        field.grid(),
        forward_raw(field.grid(), field.values()),
    ))
}

/// Nodal values `Σ f̂(k) e^{ik·x}`; the imaginary residue of a non-symmetric spectrum is dropped.
pub fn inverse_transform(spectrum: &Spectrum) -> Result<Field> {
    if !spectrum.is_finite() {
        return Err(Error::InvalidInput("non-finite Fourier coefficient".into()));
    }
    Ok(Field::from_raw(
        spectrum.grid(),
        inverse_raw(spectrum.grid(), spectrum.coeffs()),
    ))
}

impl Field {
    pub(crate) fn spectrum(&self) -> Spectrum {
        Spectrum::from_raw(self.grid(), forward_raw(self.grid(), self.values()))
    }
}

impl Spectrum {
    pub(crate) fn field(&self) -> Field {
        Field::from_raw(self.grid(), inverse_raw(self.grid(), self.coeffs()))
    }
}

#![allow(dead_code)]

use std::f64::consts::PI;

use porous_spectral::spectral::{Field, PeriodicGrid};
use proptest::prelude::*;

/// `Σ a·cos(k·x + phase)` evaluated pointwise.
pub fn cosine_field(grid: PeriodicGrid, modes: &[(i64, i64, f64, f64)]) -> Field {
    Field::from_fn(grid, |x1, x2| {
        modes
            .iter()
            .map(|&(k1, k2, a, p)| a * (k1 as f64 * x1 + k2 as f64 * x2 + p).cos())
            .sum()
    })
}

pub fn grid1(n: usize) -> PeriodicGrid {
    PeriodicGrid::new_1d(n).unwrap()
}

/// Amplitude/phase pairs for modes `1..=kmax` of a 1D field.
pub fn modes_1d(kmax: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, 0.0..2.0 * PI), kmax)
}

pub fn field_1d(n: usize, coeffs: &[(f64, f64)], amplitude: f64) -> Field {
    let modes: Vec<_> = coeffs
        .iter()
        .enumerate()
        .map(|(i, &(a, p))| {
            let k = i as i64 + 1;
            (k, 0, amplitude * a / (k * k) as f64, p)
        })
        .collect();
    cosine_field(grid1(n), &modes)
}

use std::sync::Arc;

use ndarray::Array2;

use super::field::StripField;
use super::grid::StripGrid;
use super::poisson::solve_poisson_strip;
use crate::error::{Error, Result};
use crate::spectral::{commutator_fh, forward_raw, product, Field, Spectrum};

/// Checks the commutator identity for the elliptic problem
/// `ΔX = ∂₂[2h'∂₁φ + h''φ]`, `∂₂X = h'∂₁φ` on `x₂ = 0`,
/// with `φ` the decaying harmonic function whose boundary values are `phi_boundary`.
///
/// Returns `(∂₁X(·,0), ∂₁([h,H]∂₁φ(·,0)))`, both dealiased.
pub fn verify_p1x(h: &Field, phi_boundary: &Field, grid: &Arc<StripGrid>) -> Result<(Field, Field)> {
    h.check_same_grid(phi_boundary)?;
    if grid.horizontal() != h.grid() {
        return Err(Error::GridMismatch("strip and boundary grids differ".into()));
    }
    let hg = h.grid();
    let h_spec = h.spectrum();
    let h1 = h_spec.derivative(0).field();
    let h2 = h_spec.derivative_n(0, 2).field();
    let phi_hat = forward_raw(hg, phi_boundary.values());

    let levels = grid.levels();
    let n = hg.len();
    let mut source = Array2::zeros((levels, n));
    for (i, &y) in grid.nodes().iter().enumerate() {
        // ∂₂φ at this level, then ∂₁∂₂φ.
        let coeffs: Vec<_> = phi_hat
            .iter()
            .enumerate()
            .map(|(flat, &c)| {
                let a = hg.mode_at(flat).0.unsigned_abs() as f64;
                c * (a * (a * y).exp())
            })
            .collect();
        let phi2 = Spectrum::from_raw(hg, coeffs);
        let phi12 = phi2.derivative(0).field();
        let phi2 = phi2.field();
        let row = &(&product(&h1, &phi12)? * 2.0) + &product(&h2, &phi2)?;
        for (j, v) in row.values().iter().enumerate() {
            source[[i, j]] = *v;
        }
    }
    let b = StripField::new(Arc::clone(grid), source)?;
    let phi1 = Spectrum::from_raw(hg, phi_hat).derivative(0).field();
    let g = product(&h1, &phi1)?;
    let x = solve_poisson_strip(&b, &g)?;

    let numeric = x.trace().spectrum().derivative(0).dealiased().field();
    let formula = commutator_fh(h, &phi1)?.spectrum().derivative(0).dealiased().field();
    Ok((numeric, formula))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::PeriodicGrid;

    fn strip(n: usize) -> Arc<StripGrid> {
        StripGrid::with_defaults(PeriodicGrid::new_1d(n).unwrap()).unwrap()
    }

    #[test]
    fn trivial_inputs_give_zero() {
        let s = strip(32);
        let g = s.horizontal();
        let phi = Field::from_fn(g, |x, _| x.cos());
        let (a, b) = verify_p1x(&Field::zeros(g), &phi, &s).unwrap();
        assert_eq!(a.max_abs(), 0.0);
        assert_eq!(b.max_abs(), 0.0);
        let h = Field::from_fn(g, |x, _| (2.0 * x).sin());
        let (a, b) = verify_p1x(&h, &Field::from_fn(g, |_, _| 3.0), &s).unwrap();
        assert!(a.max_abs() < 1e-14 && b.max_abs() < 1e-14);
    }

    #[test]
    fn two_mode_agreement() {
        let s = strip(32);
        let g = s.horizontal();
        let h = Field::from_fn(g, |x, _| x.cos() + 0.4 * (3.0 * x + 0.2).sin());
        let phi = Field::from_fn(g, |x, _| (2.0 * x).cos() - 0.5 * x.sin());
        let (a, b) = verify_p1x(&h, &phi, &s).unwrap();
        assert!(b.max_abs() > 0.1);
        assert!(a.max_diff(&b) < 1e-8, "{}", a.max_diff(&b));
    }
}

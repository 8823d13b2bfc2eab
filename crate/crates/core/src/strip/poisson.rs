use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;

use super::field::{BoundaryField, StripField};
use super::grid::StripGrid;
use crate::error::{Error, Result};
use crate::spectral::{forward_raw, inverse_raw, Field, PeriodicGrid};

/// Relative tolerance on `∫_Ω b − ∫_Γ g`.
pub const COMPATIBILITY_TOL: f64 = 1e-10;
/// Relative compatibility tolerance for sources that are only Lipschitz on the
/// strip, such as the Forchheimer source near critical points of `Υ`.
pub const ROUGH_SOURCE_COMPATIBILITY_TOL: f64 = 1e-3;
/// Largest admissible `|b|` on the deepest vertical level, relative to `max |b|`.
pub const TRUNCATION_TOL: f64 = 1e-6;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn check_horizontal(strip: &StripGrid, g: &Field) -> Result<()> {
    if strip.horizontal() != g.grid() {
        return Err(Error::GridMismatch(format!(
            "boundary data on {:?}, strip on {:?}",
            g.grid().shape(),
            strip.horizontal().shape()
        )));
    }
    Ok(())
}

/// Rejects sources that have not decayed by the bottom of the truncated strip.
pub(crate) fn check_truncation(b: &StripField) -> Result<()> {
    let scale = b.max_abs();
    if scale == 0.0 {
        return Ok(());
    }
    let bottom = b.values().row(0).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if bottom > TRUNCATION_TOL * scale {
        return Err(Error::Truncation {
            value: bottom,
            tolerance: TRUNCATION_TOL * scale,
        });
    }
    Ok(())
}

/// Builds a strip field from per-level coefficient arrays.
fn synthesize(
    grid: &Arc<StripGrid>,
    u: &Array2<Complex64>,
    du: &Array2<Complex64>,
    ddu: &Array2<Complex64>,
    top: (&[Complex64], &[Complex64]),
    harmonic: bool,
) -> StripField {
    let h = grid.horizontal();
    let to_nodal = |coeffs: &Array2<Complex64>| {
        let mut out = Array2::zeros(coeffs.raw_dim());
        for (i, row) in coeffs.rows().into_iter().enumerate() {
            for (j, v) in inverse_raw(h, &row.to_vec()).into_iter().enumerate() {
                out[[i, j]] = v;
            }
        }
        out
    };
    StripField::assemble(
        Arc::clone(grid),
        to_nodal(u),
        to_nodal(du),
        to_nodal(ddu),
        (inverse_raw(h, top.0), inverse_raw(h, top.1)),
        harmonic,
    )
}

/// Solves `Δu = b` on the strip with `∂₂u = g` on `x₂ = 0` and `u → 0` at depth.
///
/// Each horizontal mode is solved by the explicit Green's-function formula;
/// the vertical integrals use the strip quadrature with interpolated partial
/// panels, and `∂₂u`, `∂₂²u` come from the same kernels.
pub fn solve_poisson_strip(b: &StripField, g: &BoundaryField) -> Result<StripField> {
    solve_poisson_strip_with_tolerance(b, g, COMPATIBILITY_TOL)
}

/// [`solve_poisson_strip`] with a custom relative compatibility tolerance.
///
/// The part of `∫ b̂₀` below the truncation depth is unseen; for profiles
/// decaying at least like `e^{y}` it is bounded by `|b̂₀|` at the deepest
/// level, which is added to the allowance.
pub fn solve_poisson_strip_with_tolerance(b: &StripField, g: &BoundaryField, tolerance: f64) -> Result<StripField> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::InvalidInput(format!("compatibility tolerance {tolerance} must be positive")));
    }
    let grid = b.grid();
    check_horizontal(grid, g)?;
    if g.values().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite boundary value".into()));
    }
    let h = grid.horizontal();
    let b_hat = b.level_spectra();
    let g_hat = forward_raw(h, g.values());

    let scale = b.max_abs().max(g.max_abs());
    let profile0: Vec<Complex64> = b_hat.column(0).to_vec();
    let residual = (grid.integrate(&profile0, |_| 1.0) - g_hat[0]).norm();
    let allowed = tolerance * scale + profile0[0].norm();
    if residual > allowed {
        return Err(Error::Infeasible {
            what: "compatibility of the strip Poisson problem".into(),
            residual,
            tolerance: allowed,
        });
    }
    check_truncation(b)?;

    let levels = grid.levels();
    let modes = h.len();
    let ys = grid.nodes();
    let mut u = Array2::from_elem((levels, modes), zero());
    let mut du = u.clone();
    let mut ddu = u.clone();
    let mut top_u = vec![zero(); modes];
    let mut top_du = vec![zero(); modes];

    for flat in 0..modes {
        if h.is_nyquist(flat) {
            continue;
        }
        let profile: Vec<Complex64> = b_hat.column(flat).to_vec();
        let (k, _) = h.mode_at(flat);
        if k == 0 {
            let (below, _) = grid.split_integrals(&profile, |_, _| 1.0);
            let (moment, _) = grid.split_integrals(&profile, |y, s| y - s);
            for i in 0..levels {
                u[[i, flat]] = moment[i];
                du[[i, flat]] = below[i];
                ddu[[i, flat]] = profile[i];
            }
            top_u[flat] = -grid.integrate(&profile, |s| s);
            top_du[flat] = grid.integrate(&profile, |_| 1.0);
            continue;
        }
        if profile.iter().all(|c| *c == zero()) && g_hat[flat] == zero() {
            continue;
        }
        let a = k.unsigned_abs() as f64;
        let full = grid.integrate(&profile, |s| (a * s).exp());
        let c1 = (g_hat[flat] - full * 0.5) / a;
        let (lo, hi) = grid.split_integrals(&profile, |y, s| (-a * (y - s).abs()).exp());
        for i in 0..levels {
            let e = (a * ys[i]).exp();
            let value = c1 * e - (lo[i] + hi[i]) / (2.0 * a);
            u[[i, flat]] = value;
            du[[i, flat]] = c1 * (a * e) + (lo[i] - hi[i]) * 0.5;
            ddu[[i, flat]] = value * (a * a) + profile[i];
        }
        top_u[flat] = (g_hat[flat] - full) / a;
        top_du[flat] = g_hat[flat];
    }
    Ok(synthesize(grid, &u, &du, &ddu, (&top_u, &top_du), false))
}

/// Decaying harmonic function with Neumann data `q` on `x₂ = 0`.
pub fn harmonic_extension(q: &BoundaryField, grid: &Arc<StripGrid>) -> Result<StripField> {
    check_horizontal(grid, q)?;
    if q.values().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite boundary value".into()));
    }
    let h = grid.horizontal();
    let q_hat = forward_raw(h, q.values());
    let scale = q.max_abs();
    if q_hat[0].norm() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Infeasible {
            what: "mean of harmonic Neumann data".into(),
            residual: q_hat[0].norm(),
            tolerance: 1e-12 * scale,
        });
    }
    let levels = grid.levels();
    let modes = h.len();
    let mut u = Array2::from_elem((levels, modes), zero());
    let mut du = u.clone();
    let mut ddu = u.clone();
    let mut top_u = vec![zero(); modes];
    let mut top_du = vec![zero(); modes];
    for flat in 1..modes {
        if h.is_nyquist(flat) || q_hat[flat] == zero() {
            continue;
        }
        let a = h.mode_at(flat).0.unsigned_abs() as f64;
        for (i, &y) in grid.nodes().iter().enumerate() {
            let e = q_hat[flat] * (a * y).exp();
            u[[i, flat]] = e / a;
            du[[i, flat]] = e;
            ddu[[i, flat]] = e * a;
        }
        top_u[flat] = q_hat[flat] / a;
        top_du[flat] = q_hat[flat];
    }
    Ok(synthesize(grid, &u, &du, &ddu, (&top_u, &top_du), true))
}

/// `B̂(k) = ½ ∫ b̂(k, y) e^{|k| y} dy` for every mode, including `k = 0`.
///
/// The mean of the result is the `k = 0` value; downstream it only ever
/// enters through the Hilbert transform, which discards it.
pub fn compute_b(b: &StripField) -> Result<BoundaryField> {
    check_truncation(b)?;
    let grid = b.grid();
    let h: PeriodicGrid = grid.horizontal();
    let b_hat = b.level_spectra();
    let coeffs: Vec<Complex64> = (0..h.len())
        .map(|flat| {
            if h.is_nyquist(flat) {
                return zero();
            }
            let a = h.mode_at(flat).0.unsigned_abs() as f64;
            let profile: Vec<Complex64> = b_hat.column(flat).to_vec();
            grid.integrate(&profile, |s| (a * s).exp()) * 0.5
        })
        .collect();
    Ok(Field::from_raw(h, inverse_raw(h, &coeffs)))
}

use std::sync::Arc;

use ndarray::Array2;

use super::field::{spectra_of, BoundaryField, StripField};
use crate::error::{Error, Result};
use crate::spectral::{inverse_raw, Field, Spectrum};

/// Gradients below this fraction of `max |∇Υ|` count as degenerate.
pub const GRADIENT_DEGENERACY: f64 = 1e-13;

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidInput(format!("lambda = {lambda} must be >= 0")));
    }
    Ok(())
}

/// Horizontal derivative of order `order` applied level by level.
fn dx_levels(field: &StripField, data: &Array2<f64>, order: u32) -> Array2<f64> {
    let h = field.grid().horizontal();
    let spectra = spectra_of(field.grid(), data);
    let mut out = Array2::zeros(data.raw_dim());
    for (i, row) in spectra.rows().into_iter().enumerate() {
        let s = Spectrum::from_raw(h, row.to_vec()).derivative_n(0, order);
        for (j, v) in inverse_raw(h, s.coeffs()).into_iter().enumerate() {
            out[[i, j]] = v;
        }
    }
    out
}

/// `b_λ = λ ∇·(|∇Υ|∇Υ)` on the strip nodes.
///
/// Expanded as `λ[|∇Υ|ΔΥ + |∇Υ|⁻¹(2Υ₁Υ₂Υ₁₂ + Υ₁²Υ₁₁ + Υ₂²Υ₂₂)]`; the Laplacian
/// term is skipped for harmonic input and the second term is set to zero
/// where the gradient degenerates.
pub fn forchheimer_source(upsilon: &StripField, lambda: f64) -> Result<StripField> {
    check_lambda(lambda)?;
    let values = upsilon.values();
    let d1 = dx_levels(upsilon, values, 1);
    let d11 = dx_levels(upsilon, values, 2);
    let d2 = upsilon.dy();
    let d12 = dx_levels(upsilon, &d2, 1);
    let d22 = upsilon.dyy();

    let grad = Array2::from_shape_fn(values.raw_dim(), |ix| d1[ix].hypot(d2[ix]));
    let scale = grad.iter().fold(0.0f64, |m, v| m.max(*v));
    let eps = GRADIENT_DEGENERACY * scale;
    let harmonic = upsilon.is_harmonic();
    let b = Array2::from_shape_fn(values.raw_dim(), |ix| {
        let g = grad[ix];
        let mut xi = if harmonic { 0.0 } else { g * (d11[ix] + d22[ix]) };
        if g >= eps && g > 0.0 {
            xi += (2.0 * d1[ix] * d2[ix] * d12[ix] + d1[ix] * d1[ix] * d11[ix] + d2[ix] * d2[ix] * d22[ix]) / g;
        }
        lambda * xi
    });
    StripField::new(Arc::clone(upsilon.grid()), b)
}

/// `g_λ = λ|∇Υ|∂₂Υ` on `x₂ = 0`.
pub fn boundary_flux_g(upsilon: &StripField, lambda: f64) -> Result<BoundaryField> {
    check_lambda(lambda)?;
    let trace = upsilon.trace();
    let d1 = trace.spectrum().derivative(0).field();
    let d2 = upsilon.trace_dy();
    Ok(Field::from_raw(
        trace.grid(),
        d1.values()
            .iter()
            .zip(d2.values())
            .map(|(&a, &b)| lambda * a.hypot(b) * b)
            .collect(),
    ))
}

/// `q = ∂₁(f − ν∂₁²f)`, the Neumann data of the harmonic potential.
pub fn neumann_data(f: &Field, nu: f64) -> Result<Field> {
    if f.grid().dim() != 1 {
        return Err(Error::Dimension("the Forchheimer model is posed in 2D (1D interface)".into()));
    }
    let s = f.spectrum();
    Ok((&s.derivative(0) - &s.derivative_n(0, 3).scale(nu)).field())
}

/// Closed form of the boundary flux: `λ√((Hq)² + q²)·q`.
pub fn boundary_flux_g_closed(f: &Field, nu: f64, lambda: f64) -> Result<BoundaryField> {
    check_lambda(lambda)?;
    let q = neumann_data(f, nu)?;
    let hq = q.spectrum().hilbert().field();
    Ok(hq.zip_map(&q, |a, b| lambda * a.hypot(b) * b))
}

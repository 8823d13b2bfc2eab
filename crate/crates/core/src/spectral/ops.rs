//! Fourier-multiplier operators and dealiased products.
//!
//! Every operator here is diagonal in Fourier space. The spectral-level
//! methods on [`Spectrum`] are what the model evaluators use; the free
//! functions taking a [`Field`] wrap them with a transform round trip.

use num_complex::Complex64;

use super::field::{Field, Spectrum};
use super::grid::PeriodicGrid;
use super::transform::{forward_raw, inverse_raw};
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn norm(k1: i64, k2: i64) -> f64 {
    ((k1 * k1 + k2 * k2) as f64).sqrt()
}

/// `|ξ|^s`, with integer powers evaluated by repeated multiplication.
fn norm_pow(k1: i64, k2: i64, s: f64) -> f64 {
    let r = norm(k1, k2);
    if s == 0.0 {
        1.0
    } else if s.fract() == 0.0 && s.abs() < 64.0 {
        r.powi(s as i32)
    } else {
        r.powf(s)
    }
}

/// Symbol of the finite-depth Dirichlet–Neumann operator, `|ξ| tanh|ξ|`.
pub fn dn0_symbol(k1: i64, k2: i64) -> f64 {
    let r = norm(k1, k2);
    r * r.tanh()
}

/// Multiplies every coefficient by `symbol(k1, k2)` (`k2 = 0` on 1D grids).
pub fn apply_multiplier(s: &Spectrum, symbol: impl Fn(i64, i64) -> Complex64) -> Spectrum {
    let grid = s.grid();
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(flat, &c)| {
            let (k1, k2) = grid.mode_at(flat);
            symbol(k1, k2) * c
        })
        .collect();
    Spectrum::from_raw(grid, coeffs)
}

fn apply_real(s: &Spectrum, symbol: impl Fn(i64, i64) -> f64) -> Spectrum {
    apply_multiplier(s, |k1, k2| Complex64::new(symbol(k1, k2), 0.0))
}

impl Spectrum {
    /// Hilbert transform `-i sgn(k)` along the first axis.
    pub fn hilbert(&self) -> Spectrum {
        apply_multiplier(self, |k1, _| -I * (k1.signum() as f64))
    }

    /// Calderon operator `Λ^s`, symbol `|ξ|^s`.
    pub fn calderon(&self, s: f64) -> Spectrum {
        apply_real(self, |k1, k2| norm_pow(k1, k2, s))
    }

    /// Spectral derivative along `axis` (symbol `i k_axis`).
    pub fn derivative(&self, axis: usize) -> Spectrum {
        apply_multiplier(self, |k1, k2| I * if axis == 0 { k1 } else { k2 } as f64)
    }

    /// Repeated spectral derivative `∂^order` along `axis`, symbol `(i k)^order`.
    pub fn derivative_n(&self, axis: usize, order: u32) -> Spectrum {
        apply_multiplier(self, |k1, k2| {
            let k = if axis == 0 { k1 } else { k2 } as f64;
            (I * k).powu(order)
        })
    }

    pub fn laplacian(&self) -> Spectrum {
        apply_real(self, |k1, k2| -((k1 * k1 + k2 * k2) as f64))
    }

    pub fn dn0(&self) -> Spectrum {
        apply_real(self, dn0_symbol)
    }

    /// 2/3-rule truncation: zeroes every mode with some `|k_i| > floor(n_i / 3)`.
    pub fn dealiased(&self) -> Spectrum {
        let grid = self.grid();
        let (c1, c2) = (grid.dealias_cutoff(0), grid.dealias_cutoff(1));
        let coeffs = self
            .coeffs()
            .iter()
            .enumerate()
            .map(|(flat, &c)| {
                let (k1, k2) = grid.mode_at(flat);
                if k1.abs() > c1 || (grid.dim() == 2 && k2.abs() > c2) {
                    Complex64::new(0.0, 0.0)
                } else {
                    c
                }
            })
            .collect();
        Spectrum::from_raw(grid, coeffs)
    }

    /// Removes the zero mode.
    pub fn without_mean(&self) -> Spectrum {
        let mut out = self.clone();
        out.coeffs_mut()[0] = Complex64::new(0.0, 0.0);
        out
    }
}

/// Dealiased product of two spectra: both factors and the result are 2/3-truncated,
/// so the result equals the truncated convolution of the truncated factors.
pub fn product_spectra(a: &Spectrum, b: &Spectrum) -> Spectrum {
    assert_eq!(a.grid(), b.grid(), "product of spectra on mismatched grids");
    let grid = a.grid();
    let fa = inverse_raw(grid, a.dealiased().coeffs());
    let fb = inverse_raw(grid, b.dealiased().coeffs());
    let prod: Vec<f64> = fa.iter().zip(&fb).map(|(x, y)| x * y).collect();
    Spectrum::from_raw(grid, forward_raw(grid, &prod)).dealiased()
}

/// `[f, H] g = f·Hg - H(f·g)` evaluated with dealiased products, in spectral form.
pub fn commutator_hilbert_spectra(f: &Spectrum, g: &Spectrum) -> Spectrum {
    let first = product_spectra(f, &g.hilbert());
    let second = product_spectra(f, g).hilbert();
    &first - &second
}

/// `[Λ, f] g = Λ(f·g) - f·Λg` with dealiased products.
pub fn commutator_calderon_spectra(f: &Spectrum, g: &Spectrum) -> Spectrum {
    let first = product_spectra(f, g).calderon(1.0);
    let second = product_spectra(f, &g.calderon(1.0));
    &first - &second
}

fn require_1d(grid: PeriodicGrid, what: &str) -> Result<()> {
    if grid.dim() != 1 {
        return Err(Error::Dimension(format!("{what} is only defined on 1D grids")));
    }
    Ok(())
}

pub fn hilbert(f: &Field) -> Result<Field> {
    require_1d(f.grid(), "the Hilbert transform")?;
    Ok(f.spectrum().hilbert().field())
}

pub fn calderon(f: &Field, s: f64) -> Result<Field> {
    if s.is_nan() || s < 0.0 {
        return Err(Error::UnsupportedPower(s));
    }
    Ok(f.spectrum().calderon(s).field())
}

pub fn d_dx(f: &Field, direction: usize) -> Result<Field> {
    let dim = f.grid().dim();
    if direction >= dim {
        return Err(Error::InvalidDirection { direction, dim });
    }
    Ok(f.spectrum().derivative(direction).field())
}

pub fn laplacian(f: &Field) -> Field {
    f.spectrum().laplacian().field()
}

pub fn dn0(f: &Field) -> Field {
    f.spectrum().dn0().field()
}

pub fn dealias(s: &Spectrum) -> Spectrum {
    s.dealiased()
}

/// Pointwise product followed by 2/3-rule dealiasing.
pub fn product(f: &Field, g: &Field) -> Result<Field> {
    f.check_same_grid(g)?;
    Ok(product_spectra(&f.spectrum(), &g.spectrum()).field())
}

/// `[f, H] g = f·Hg - H(f·g)`.
pub fn commutator_fh(f: &Field, g: &Field) -> Result<Field> {
    f.check_same_grid(g)?;
    require_1d(f.grid(), "the Hilbert commutator")?;
    Ok(commutator_hilbert_spectra(&f.spectrum(), &g.spectrum()).field())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> PeriodicGrid {
        PeriodicGrid::new_1d(n).unwrap()
    }

    fn field(n: usize, func: impl Fn(f64) -> f64) -> Field {
        Field::from_fn(grid(n), |x, _| func(x))
    }

    #[test]
    fn hilbert_of_cos_and_sin() {
        let h = hilbert(&field(32, f64::cos)).unwrap();
        assert!(h.max_diff(&field(32, f64::sin)) < 1e-14);
        let h = hilbert(&field(32, f64::sin)).unwrap();
        assert!(h.max_diff(&field(32, |x| -x.cos())) < 1e-14);
        let h = hilbert(&field(32, |_| 3.0)).unwrap();
        assert!(h.max_abs() < 1e-15);
    }

    #[test]
    fn calderon_examples() {
        let out = calderon(&field(32, |x| (2.0 * x).cos()), 1.0).unwrap();
        assert!(out.max_diff(&field(32, |x| 2.0 * (2.0 * x).cos())) < 1e-14);
        // Roundoff in the top modes is amplified by |k|³ ≈ 3·10³.
        let out = calderon(&field(32, f64::sin), 3.0).unwrap();
        assert!(out.max_diff(&field(32, f64::sin)) < 1e-12);
        assert!(calderon(&field(32, |_| 1.0), 1.0).unwrap().max_abs() < 1e-15);
        assert_eq!(
            calderon(&field(32, f64::sin), -0.5),
            Err(Error::UnsupportedPower(-0.5))
        );
    }

    #[test]
    fn derivative_examples() {
        let out = d_dx(&field(32, f64::sin), 0).unwrap();
        assert!(out.max_diff(&field(32, f64::cos)) < 1e-14);
        let out = d_dx(&field(32, |x| (3.0 * x).cos()), 0).unwrap();
        assert!(out.max_diff(&field(32, |x| -3.0 * (3.0 * x).sin())) < 1e-13);
        assert!(d_dx(&field(32, |_| 2.0), 0).unwrap().max_abs() < 1e-15);
        assert_eq!(
            d_dx(&field(32, f64::sin), 1),
            Err(Error::InvalidDirection { direction: 1, dim: 1 })
        );
    }

    #[test]
    fn dn0_examples() {
        let out = dn0(&field(16, f64::cos));
        assert!(out.max_diff(&field(16, |x| 1f64.tanh() * x.cos())) < 1e-14);
        assert!(dn0(&field(16, |_| 4.0)).max_abs() < 1e-15);
        let g2 = PeriodicGrid::new_2d(16, 16).unwrap();
        let mode = Field::from_fn(g2, |x, y| (x + y).cos());
        let out = dn0(&mode);
        // √2·tanh(√2), evaluated independently to 17 digits.
        let factor = 1.256_366_909_810_879_6;
        assert!((dn0_symbol(1, 1) - factor).abs() < 1e-15);
        assert!(out.max_diff(&(&mode * factor)) < 1e-14);
    }

    #[test]
    fn identity_and_differentiation_symbols() {
        let f = field(16, f64::cos);
        let s = f.spectrum();
        let same = apply_multiplier(&s, |_, _| Complex64::new(1.0, 0.0));
        assert_eq!(same, s);
        let deriv = apply_multiplier(&s, |k, _| I * k as f64).field();
        assert!(deriv.max_diff(&field(16, |x| -x.sin())) < 1e-14);
        let flat = apply_multiplier(&field(16, |_| 1.0).spectrum(), |k, _| Complex64::new(k.abs() as f64, 0.0));
        assert!(flat.max_abs() < 1e-15);
    }

    #[test]
    fn commutator_examples() {
        let c = commutator_fh(&field(32, f64::cos), &field(32, f64::cos)).unwrap();
        assert!(c.max_abs() < 1e-15);
        let c = commutator_fh(&field(32, f64::sin), &field(32, f64::cos)).unwrap();
        assert!(c.max_diff(&field(32, |_| 0.5)) < 1e-15);
    }

    #[test]
    fn commutator_rejects_grid_mismatch() {
        assert!(matches!(
            commutator_fh(&field(32, f64::sin), &field(16, f64::cos)),
            Err(Error::GridMismatch(_))
        ));
    }

    #[test]
    fn dealias_cutoff_at_n_over_three() {
        let g = grid(32);
        let mut s = Spectrum::zeros(g);
        for k in 1..=10 {
            s.set_coeff(k, 0, Complex64::new(1.0 / k as f64, 0.0)).unwrap();
            s.set_coeff(-k, 0, Complex64::new(1.0 / k as f64, 0.0)).unwrap();
        }
        assert_eq!(dealias(&s), s);
        let mut high = Spectrum::zeros(g);
        high.set_coeff(12, 0, Complex64::new(1.0, 0.0)).unwrap();
        assert_eq!(dealias(&high).max_abs(), 0.0);
    }

    #[test]
    fn product_of_cosines() {
        let p = product(&field(8, f64::cos), &field(8, f64::cos)).unwrap();
        assert!(p.max_diff(&field(8, |x| 0.5 * (1.0 + (2.0 * x).cos()))) < 1e-15);
    }
}

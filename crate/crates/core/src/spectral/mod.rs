//! Periodic grids, Fourier transforms and Fourier-multiplier operators.

mod field;
mod grid;
mod ops;
mod transform;

pub use field::{Field, Spectrum};
pub use grid::PeriodicGrid;
pub use ops::{
    apply_multiplier, calderon, commutator_calderon_spectra, commutator_fh,
    commutator_hilbert_spectra, d_dx, dealias, dn0, dn0_symbol, hilbert, laplacian, product,
    product_spectra,
};
pub use transform::{inverse_transform, transform};
pub(crate) use transform::{forward_raw, inverse_raw};
